#include "doctest.h"

#include <cmath>
#include <set>

#include "gm/graphlets.hpp"
#include "gm/random_models.hpp"
#include "gm/rng.hpp"
#include "oracles.hpp"

using namespace gm;

namespace {

DirectedGraph three_cycle() {
    return DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
}

// edges 0<->1, 0->2, 1->2, 1->3: the orbit-degree worked example
DirectedGraph worked_example() {
    return DirectedGraph::from_edge_list(
        4, std::vector<Edge>{{0, 1}, {1, 0}, {0, 2}, {1, 2}, {1, 3}});
}

DirectedGraph complete_bidirectional(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) edges.emplace_back(u, v);
    return DirectedGraph::from_edge_list(n, edges);
}

DirectedGraph relabeled(const DirectedGraph& g, const std::vector<Vertex>& perm) {
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edge_list()) edges.emplace_back(perm[u], perm[v]);
    return DirectedGraph::from_edge_list(g.num_vertices(), edges);
}

// the out-star graphlet (center -> two leaves) and its center orbit
int out_star_center_orbit() {
    const auto& cat = TriadCatalog::instance();
    for (const auto& cls : cat.classes()) {
        if (cls.edge_count != 2) continue;
        // decode the canonical representative's out-degrees
        static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
        int outdeg[3] = {0, 0, 0};
        for (int i = 0; i < 6; ++i)
            if (cls.canon_code & (1 << i)) ++outdeg[pairs[i][0]];
        for (int pos = 0; pos < 3; ++pos)
            if (outdeg[pos] == 2) return cls.orbit_of_pos[pos];
    }
    REQUIRE(false);
    return -1;
}

} // namespace

TEST_CASE("catalog: 13 classes, 30 orbits, pairwise non-isomorphic") {
    const auto& cat = TriadCatalog::instance();
    std::set<std::uint8_t> canon;
    int orbit_total = 0;
    std::set<int> orbit_ids;
    for (const auto& cls : cat.classes()) {
        canon.insert(cls.canon_code);
        orbit_total += cls.num_orbits;
        for (int pos = 0; pos < 3; ++pos) orbit_ids.insert(cls.orbit_of_pos[pos]);
        CHECK(TriadCatalog::connected_code(cls.canon_code));
    }
    CHECK(canon.size() == 13); // distinct canonical codes = pairwise non-isomorphic
    CHECK(orbit_total == 30);
    CHECK(orbit_ids.size() == 30);

    // classes ordered by (edge count, code)
    for (std::size_t i = 1; i < cat.classes().size(); ++i) {
        const auto& a = cat.classes()[i - 1];
        const auto& b = cat.classes()[i];
        CHECK((a.edge_count < b.edge_count ||
               (a.edge_count == b.edge_count && a.canon_code < b.canon_code)));
    }

    // every connected labeled code maps into a class; disconnected ones don't
    int connected = 0;
    for (int code = 0; code < 64; ++code) {
        if (TriadCatalog::connected_code(std::uint8_t(code))) {
            ++connected;
            CHECK(cat.class_of_code(std::uint8_t(code)) >= 0);
        } else {
            CHECK(cat.class_of_code(std::uint8_t(code)) == -1);
        }
    }
    CHECK(connected == 54); // 64 codes minus those with < 2 undirected pairs
}

TEST_CASE("triad census fixed cases") {
    const auto c1 = triad_census(three_cycle());
    CHECK(c1.total == 1);
    int nonzero = 0;
    for (auto c : c1.counts) nonzero += c > 0;
    CHECK(nonzero == 1);

    const auto c2 = triad_census(complete_bidirectional(4));
    CHECK(c2.total == 4);
    // all four triples land in the all-bigon class, the last by edge count
    CHECK(c2.counts[12] == 4);
}

TEST_CASE("triad census matches brute force") {
    Rng rng(606);
    for (int t = 0; t < 8; ++t) {
        const auto g = gen_er(8, 0.4, rng.next_u64());
        const auto fast = triad_census(g);
        const auto brute = oracle::brute_census(g);
        CHECK(fast.total == brute.total);
        for (int i = 0; i < TriadCatalog::kClasses; ++i) CHECK(fast.counts[i] == brute.counts[i]);
    }
    // also on the other models
    for (int t = 0; t < 4; ++t) {
        const auto g = gen_gr(9, 0.5, rng.next_u64());
        const auto fast = triad_census(g);
        const auto brute = oracle::brute_census(g);
        for (int i = 0; i < TriadCatalog::kClasses; ++i) CHECK(fast.counts[i] == brute.counts[i]);
    }
}

TEST_CASE("triad profile") {
    TriadCensus census;
    census.counts[4] = 1;
    census.counts[7] = 3;
    census.total = 4;
    const auto phi = triad_profile(census);
    CHECK(phi[4] == doctest::Approx(0.25));
    CHECK(phi[7] == doctest::Approx(0.75));

    const auto empty = triad_profile(triad_census(DirectedGraph::from_edge_list(4, std::vector<Edge>{})));
    for (double x : empty) CHECK(x == 0.0);
}

TEST_CASE("triad_euclid") {
    const auto cyc = three_cycle();
    const auto tt = DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(triad_euclid(cyc, cyc) == 0.0);
    // one triple each, in different classes: two disjoint indicator vectors
    CHECK(triad_euclid(cyc, tt) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const auto g1 = gen_er(12, 0.3, 5), g2 = gen_er(12, 0.4, 6);
    CHECK(triad_euclid(g1, g2) == triad_euclid(g2, g1));
}

TEST_CASE("orbit degrees: worked example") {
    const auto g = worked_example();
    const int orbit = out_star_center_orbit();
    const auto deg = orbit_degrees(g, orbit);
    CHECK(deg == std::vector<std::int64_t>{1, 3, 0, 0});

    const auto dist = orbit_degree_distribution(deg);
    REQUIRE(dist.size() == 4);
    CHECK(dist[0] == doctest::Approx(0.5));
    CHECK(dist[1] == doctest::Approx(0.25));
    CHECK(dist[2] == doctest::Approx(0.0));
    CHECK(dist[3] == doctest::Approx(0.25));

    CHECK_THROWS_AS(orbit_degrees(g, 30), OrbitOutOfRangeError);
}

TEST_CASE("orbit degrees: zero cases and brute force") {
    const auto lone = DirectedGraph::from_edge_list(5, std::vector<Edge>{});
    for (const auto& deg : orbit_degrees_all(lone))
        for (auto d : deg) CHECK(d == 0);

    Rng rng(707);
    for (int t = 0; t < 4; ++t) {
        const auto g = gen_er(7, 0.5, rng.next_u64());
        const auto fast = orbit_degrees_all(g);
        const auto brute = oracle::brute_orbit_degrees(g);
        for (int i = 0; i < TriadCatalog::kOrbits; ++i) CHECK(fast[i] == brute[i]);
    }
}

TEST_CASE("orbit degree distributions") {
    CHECK(orbit_degree_distribution({2, 2, 2}) == std::vector<double>{0, 0, 1});
    CHECK(orbit_degree_distribution({0, 1}) == std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(orbit_degree_distribution({}), EmptyGraphError);
}

TEST_CASE("emd_1d") {
    const std::vector<double> p = {0.5, 0.5};
    CHECK(emd_1d(p, p) == 0.0);
    // point masses at 0 and m transport over distance m
    CHECK(emd_1d({1.0}, {0, 0, 0, 0, 1.0}) == doctest::Approx(4.0));
    CHECK(emd_1d({0.5, 0.5}, {1.0}) == doctest::Approx(0.5));
    CHECK(emd_1d({0.5, 0.5}, {1.0}) == emd_1d({1.0}, {0.5, 0.5}));
    CHECK_THROWS_AS(emd_1d({0.5, 0.4}, {1.0}), NotNormalizedError);
}

TEST_CASE("triad_emd") {
    const auto g1 = gen_er(7, 0.5, 11);
    const auto g2 = gen_er(7, 0.5, 12);
    CHECK(triad_emd(g1, g1) == 0.0);
    CHECK(triad_emd(g1, g2) == triad_emd(g2, g1));

    // end-to-end hand pipeline: brute orbit degrees -> distributions -> mean EMD
    const auto d1 = oracle::brute_orbit_degrees(g1);
    const auto d2 = oracle::brute_orbit_degrees(g2);
    double sum = 0;
    for (int i = 0; i < TriadCatalog::kOrbits; ++i)
        sum += emd_1d(orbit_degree_distribution(d1[i]), orbit_degree_distribution(d2[i]));
    CHECK(triad_emd(g1, g2) == doctest::Approx(sum / 30.0).epsilon(1e-12));

    CHECK_THROWS_AS(triad_emd(DirectedGraph::from_edge_list(0, std::vector<Edge>{}), g1),
                    EmptyGraphError);
}

TEST_CASE("isomorphism invariance") {
    Rng rng(111);
    const auto g = gen_er(9, 0.35, 2222);
    std::vector<Vertex> perm(9);
    for (Vertex v = 0; v < 9; ++v) perm[v] = v;
    for (int t = 0; t < 5; ++t) {
        for (std::size_t i = 9; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        const auto h = relabeled(g, perm);

        const auto cg = triad_census(g), ch = triad_census(h);
        for (int i = 0; i < TriadCatalog::kClasses; ++i) CHECK(cg.counts[i] == ch.counts[i]);

        // orbit-degree multisets transport along the relabeling
        const auto dg = orbit_degrees_all(g), dh = orbit_degrees_all(h);
        for (int i = 0; i < TriadCatalog::kOrbits; ++i)
            for (Vertex v = 0; v < 9; ++v) CHECK(dg[i][v] == dh[i][perm[v]]);

        CHECK(triad_emd(g, h) == doctest::Approx(0.0));
        CHECK(triad_euclid(g, h) == doctest::Approx(0.0));
    }
}

TEST_CASE("census totals equal brute-force connected-triple counts") {
    Rng rng(321);
    for (int t = 0; t < 6; ++t) {
        const auto g = gen_pa(9, 3, rng.next_u64());
        CHECK(triad_census(g).total == oracle::brute_census(g).total);
    }
}
