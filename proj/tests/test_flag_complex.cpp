#include "doctest.h"

#include "gm/flag_complex.hpp"
#include "gm/random_models.hpp"
#include "gm/rng.hpp"
#include "oracles.hpp"

using namespace gm;

namespace {

DirectedGraph complete_bidirectional(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) edges.emplace_back(u, v);
    return DirectedGraph::from_edge_list(n, edges);
}

std::size_t falling_factorial(std::size_t n, std::size_t terms) {
    std::size_t f = 1;
    for (std::size_t i = 0; i < terms; ++i) f *= n - i;
    return f;
}

} // namespace

TEST_CASE("fixed flag complexes") {
    const auto cyc = DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
    const auto kc = build_flag_complex(cyc, 3);
    CHECK(kc.count(0) == 3);
    CHECK(kc.count(1) == 3);
    CHECK(kc.count(2) == 0); // no transitive triangle in the cyclic orientation
    CHECK(kc.complete);

    const auto tt = DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    const auto kt = build_flag_complex(tt, 3);
    CHECK(kt.count(0) == 3);
    CHECK(kt.count(1) == 3);
    CHECK(kt.count(2) == 1);
    CHECK(kt.simplex(2, 0) == std::vector<Vertex>{0, 1, 2});

    // complete bidirectional digraph: every ordered tuple of distinct
    // vertices is a cell, gamma_k = n!/(n-k-1)!
    for (Vertex n = 2; n <= 5; ++n) {
        const auto K = build_flag_complex(complete_bidirectional(n), int(n) - 1);
        for (int k = 0; k < int(n); ++k)
            CHECK(K.count(k) == falling_factorial(n, std::size_t(k) + 1));
    }
    const auto k3 = build_flag_complex(complete_bidirectional(3), 2);
    CHECK(k3.cell_counts() == std::vector<std::size_t>{3, 6, 6});
}

TEST_CASE("empty and edgeless graphs") {
    const auto empty = DirectedGraph::from_edge_list(0, std::vector<Edge>{});
    const auto ke = build_flag_complex(empty, 3);
    CHECK(ke.top_dim() == -1);
    CHECK(ke.complete);

    const auto lone = DirectedGraph::from_edge_list(4, std::vector<Edge>{});
    const auto kl = build_flag_complex(lone, 3);
    CHECK(kl.count(0) == 4);
    CHECK(kl.top_dim() == 0);
    CHECK(kl.complete);
}

TEST_CASE("gamma_0 = n and gamma_1 = |E| always") {
    Rng rng(2024);
    for (int t = 0; t < 10; ++t) {
        const auto g = gen_er(15, 0.25, rng.next_u64());
        const auto K = build_flag_complex(g, 4);
        CHECK(K.count(0) == g.num_vertices());
        CHECK(K.count(1) == g.num_edges());
    }
}

TEST_CASE("enumerator matches brute-force ordered tuples") {
    Rng rng(515);
    for (int t = 0; t < 12; ++t) {
        DirectedGraph g;
        switch (t % 3) {
            case 0: g = gen_er(11, 0.4, rng.next_u64()); break;
            case 1: g = gen_gr(12, 0.5, rng.next_u64()); break;
            default: g = gen_pa(11, 4, rng.next_u64()); break;
        }
        const auto K = build_flag_complex(g, 4);
        for (int d = 0; d <= 4; ++d) {
            const auto brute = oracle::brute_simplices(g, d);
            REQUIRE(K.count(d) == brute.size());
            for (std::size_t i = 0; i < brute.size(); ++i)
                CHECK(K.simplex(d, i) == brute[i]); // same cells, same lex order
        }
        CHECK(count_cells(g, 4) == K.cell_counts());
    }
}

TEST_CASE("wide packing (n > 255) agrees with narrow") {
    // same structure embedded at vertex ids beyond one byte
    const auto base = gen_er(20, 0.3, 99);
    std::vector<Edge> shifted;
    for (const auto& [u, v] : base.edge_list()) shifted.emplace_back(u + 300, v + 300);
    const auto wide = DirectedGraph::from_edge_list(320, shifted);
    const auto kn = build_flag_complex(base, 4);
    const auto kw = build_flag_complex(wide, 4);
    REQUIRE(kw.wide);
    CHECK(kw.count(0) == 320); // isolated padding vertices only add 0-cells
    for (int d = 1; d <= std::max(kn.top_dim(), kw.top_dim()); ++d)
        CHECK(kn.count(d) == kw.count(d));
}

TEST_CASE("completeness flag") {
    const auto tt = DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(!build_flag_complex(tt, 1).complete); // the 2-cell exists above the cut
    CHECK(build_flag_complex(tt, 2).complete);
}
