#include "doctest.h"

#include <cmath>

#include "gm/portrait.hpp"
#include "gm/random_models.hpp"
#include "gm/rng.hpp"

using namespace gm;

namespace {

DirectedGraph three_cycle() {
    return DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
}

DirectedGraph path3() {
    return DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}});
}

DirectedGraph complete_bidirectional(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) edges.emplace_back(u, v);
    return DirectedGraph::from_edge_list(n, edges);
}

} // namespace

TEST_CASE("portrait fixed cases") {
    const auto bk3 = portrait(complete_bidirectional(3));
    REQUIRE(bk3.rows.size() == 2);
    CHECK(bk3.rows[0][1] == 3);
    CHECK(bk3.rows[1][2] == 3);

    const auto bp = portrait(path3());
    REQUIRE(bp.rows.size() == 3);
    CHECK(bp.rows[0][1] == 3);
    CHECK(bp.rows[1][0] == 1);
    CHECK(bp.rows[1][1] == 2);
    CHECK(bp.rows[2][0] == 2);
    CHECK(bp.rows[2][1] == 1);

    const auto bc = portrait(three_cycle());
    REQUIRE(bc.rows.size() == 3);
    CHECK(bc.rows[0][1] == 3);
    CHECK(bc.rows[1][1] == 3);
    CHECK(bc.rows[2][1] == 3);
}

TEST_CASE("portrait invariants: row sums and the degree row") {
    Rng rng(4040);
    for (int t = 0; t < 6; ++t) {
        const auto g = gen_er(25, 0.12, rng.next_u64());
        const auto B = portrait(g);
        for (const auto& row : B.rows) {
            std::int64_t sum = 0;
            for (auto c : row) sum += c;
            CHECK(sum == 25);
        }
        CHECK(B.rows[0][1] == 25); // every vertex is at distance 0 from itself only

        // row l=1 counts vertices by out-degree
        const auto [out, in] = degrees(g);
        std::vector<std::int64_t> hist(25, 0);
        for (auto d : out) ++hist[d];
        if (B.rows.size() > 1)
            for (std::size_t k = 0; k < hist.size(); ++k) CHECK(B.rows[1][k] == hist[k]);
    }
}

TEST_CASE("portrait is isomorphism-invariant") {
    const auto g = gen_er(12, 0.25, 777);
    std::vector<Edge> relabeled;
    std::vector<Vertex> perm = {5, 3, 11, 0, 7, 1, 10, 2, 9, 4, 8, 6};
    for (const auto& [u, v] : g.edge_list()) relabeled.emplace_back(perm[u], perm[v]);
    const auto h = DirectedGraph::from_edge_list(12, relabeled);
    const auto bg = portrait(g), bh = portrait(h);
    REQUIRE(bg.rows.size() == bh.rows.size());
    for (std::size_t l = 0; l < bg.rows.size(); ++l) CHECK(bg.rows[l] == bh.rows[l]);
}

TEST_CASE("portrait distribution") {
    const auto pc = portrait_distribution(portrait(three_cycle()));
    // weights k*B are (3,3,3): thirds everywhere
    CHECK(pc.p[0][1] == doctest::Approx(1.0 / 3));
    CHECK(pc.p[1][1] == doctest::Approx(1.0 / 3));
    CHECK(pc.p[2][1] == doctest::Approx(1.0 / 3));

    const auto pk = portrait_distribution(portrait(complete_bidirectional(3)));
    CHECK(pk.p[0][1] == doctest::Approx(3.0 / 9));
    CHECK(pk.p[1][2] == doctest::Approx(6.0 / 9));

    // strongly connected: the normalizer is exactly n^2, so the masses above
    // are n*1/n^2 and n*2/n^2; also every distribution sums to 1
    double total = 0;
    for (const auto& row : pk.p)
        for (double x : row) total += x;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(portrait_distribution(portrait(DirectedGraph::from_edge_list(0, std::vector<Edge>{}))),
                    EmptyGraphError);
}

TEST_CASE("kl divergence") {
    const auto p = portrait_distribution(portrait(three_cycle()));
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0));

    // cycle vs path share support, so KL is finite both ways
    const auto q = portrait_distribution(portrait(path3()));
    const double expected = (1.0 / 3) * std::log2((1.0 / 3) / (1.0 / 2)) +
                            (1.0 / 3) * std::log2((1.0 / 3) / (1.0 / 3)) +
                            (1.0 / 3) * std::log2((1.0 / 3) / (1.0 / 6));
    CHECK(kl_divergence(p, q) == doctest::Approx(expected).epsilon(1e-12));

    PortraitDistribution a, b;
    a.p = {{0.0, 1.0}};
    b.p = {{0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(kl_divergence(a, b), DomainMismatchError);
}

TEST_CASE("portrait divergence fixed value") {
    const auto cyc = three_cycle();
    const auto path = path3();
    CHECK(portrait_divergence(cyc, cyc) == doctest::Approx(0.0));

    // hand computation: P = (1/3,1/3,1/3) over (k=1, l=0,1,2);
    // P' = (1/2,1/3,1/6); M = (5/12,1/3,1/4)
    const double kl_p = (1.0 / 3) * std::log2((1.0 / 3) / (5.0 / 12)) +
                        (1.0 / 3) * std::log2((1.0 / 3) / (1.0 / 3)) +
                        (1.0 / 3) * std::log2((1.0 / 3) / (1.0 / 4));
    const double kl_q = (1.0 / 2) * std::log2((1.0 / 2) / (5.0 / 12)) +
                        (1.0 / 3) * std::log2((1.0 / 3) / (1.0 / 3)) +
                        (1.0 / 6) * std::log2((1.0 / 6) / (1.0 / 4));
    const double expected = 0.5 * kl_p + 0.5 * kl_q;
    CHECK(portrait_divergence(cyc, path) == doctest::Approx(expected).epsilon(1e-12));

    // disjoint supports maximize the JS divergence in base 2
    PortraitDistribution a, b;
    a.p = {{0.0, 1.0}};
    b.p = {{0.0, 0.0, 1.0}};
    CHECK(js_divergence(a, b) == doctest::Approx(1.0));
}

TEST_CASE("portrait divergence is symmetric and bounded") {
    Rng rng(5150);
    for (int t = 0; t < 6; ++t) {
        const auto g1 = gen_er(20, 0.15, rng.next_u64());
        const auto g2 = gen_pa(20, 3, rng.next_u64());
        const double d12 = portrait_divergence(g1, g2);
        const double d21 = portrait_divergence(g2, g1);
        CHECK(d12 == doctest::Approx(d21).epsilon(1e-12));
        CHECK(d12 >= 0.0);
        CHECK(d12 <= 1.0);
    }
}
