#include "doctest.h"

#include <cmath>

#include "gm/features.hpp"
#include "gm/homology.hpp"
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

std::vector<std::int64_t> exact_betti(const DirectedGraph& g, int p) {
    return betti_numbers(build_flag_complex(g, p + 1), p).midpoints();
}

} // namespace

TEST_CASE("fixed-point Betti numbers") {
    const auto cyc = DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
    CHECK(exact_betti(cyc, 2) == std::vector<std::int64_t>{1, 1, 0});

    const auto big = DirectedGraph::from_edge_list(2, std::vector<Edge>{{0, 1}, {1, 0}});
    CHECK(exact_betti(big, 1) == std::vector<std::int64_t>{1, 1});

    const auto tt = DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(exact_betti(tt, 2) == std::vector<std::int64_t>{1, 0, 0});

    // empty graph on n vertices: beta_0 = n
    const auto lone = DirectedGraph::from_edge_list(6, std::vector<Edge>{});
    CHECK(exact_betti(lone, 2) == std::vector<std::int64_t>{6, 0, 0});
}

TEST_CASE("homology matches the dense F2 elimination oracle") {
    Rng rng(808);
    for (int t = 0; t < 12; ++t) {
        DirectedGraph g;
        switch (t % 3) {
            case 0: g = gen_er(9, 0.35, rng.next_u64()); break;
            case 1: g = gen_gr(10, 0.45, rng.next_u64()); break;
            default: g = gen_pa(9, 3, rng.next_u64()); break;
        }
        const auto mine = exact_betti(g, 3);
        const auto brute = oracle::brute_betti_graph(g, 3);
        CHECK(mine == brute);
    }
}

TEST_CASE("Euler characteristic identity on exact runs") {
    Rng rng(909);
    for (int t = 0; t < 10; ++t) {
        const auto g = gen_er(10, 0.4, rng.next_u64());
        const auto K = build_flag_complex(g, 7);
        REQUIRE(K.complete); // tiny graphs top out well below dimension 7
        const int top = std::max(K.top_dim(), 0);
        const auto res = betti_numbers(K, top);
        long long lhs = 0, rhs = 0;
        for (int d = 0; d <= top; ++d) {
            const long long sign = (d % 2 == 0) ? 1 : -1;
            lhs += sign * (long long)(K.count(d));
            rhs += sign * res.betti[d].lower;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("budgeted reduction: limits and bracketing") {
    const auto g = gen_er(30, 0.3, 4242);
    const auto K = build_flag_complex(g, 5);
    const auto exact = betti_numbers(K, 4);
    REQUIRE(exact.exact);

    // infinite budget reproduces the exact run
    const auto inf = betti_numbers_approx(K, 4, std::numeric_limits<double>::infinity());
    CHECK(inf.exact);
    for (int d = 0; d <= 4; ++d) {
        CHECK(inf.betti[d].lower == exact.betti[d].lower);
        CHECK(inf.betti[d].upper == exact.betti[d].upper);
    }

    // zero budget: total ignorance still brackets, as [0, gamma_d]
    const auto zero = betti_numbers_approx(K, 4, 0.0);
    CHECK(!zero.exact);
    for (int d = 1; d <= 4; ++d) {
        CHECK(zero.betti[d].lower == 0);
        CHECK(zero.betti[d].upper == std::int64_t(K.count(d)));
    }

    // the exact value lies inside the interval for every budget, and widths
    // shrink as the budget grows
    std::int64_t prev_width = -1;
    for (double eps : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
        const auto approx = betti_numbers_approx(K, 4, eps);
        std::int64_t width = 0;
        for (int d = 0; d <= 4; ++d) {
            CHECK(approx.betti[d].lower <= exact.betti[d].lower);
            CHECK(exact.betti[d].upper <= approx.betti[d].upper);
            width += approx.betti[d].upper - approx.betti[d].lower;
        }
        if (prev_width >= 0) CHECK(width <= prev_width);
        prev_width = width;
    }
}

TEST_CASE("feature vectors") {
    const auto cyc = DirectedGraph::from_edge_list(3, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
    const auto fb = feature_vector(cyc, FeatureKind::Betti, 2);
    CHECK(fb.values == std::vector<double>{0.0, 0.0, 0.0}); // log 1 = 0, beta_2 = 0 clamps

    const auto k3 = complete_bidirectional(3);
    const auto fc = feature_vector(k3, FeatureKind::SimplexCount, 2);
    REQUIRE(fc.values.size() == 3);
    CHECK(fc.values[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fc.values[1] == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(fc.values[2] == doctest::Approx(std::log(6.0)).epsilon(1e-12));

    const auto lone = DirectedGraph::from_edge_list(5, std::vector<Edge>{});
    const auto fe = feature_vector(lone, FeatureKind::Betti, 3);
    CHECK(fe.values[0] == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(fe.values[1] == 0.0);
    CHECK(fe.values[2] == 0.0);

    CHECK_THROWS_AS(feature_vector(cyc, FeatureKind::Betti, 7), BadParamError);
}

TEST_CASE("features json round-trip") {
    const auto g = gen_er(20, 0.3, 33);
    const auto f = compute_features(g, 3, 10.0);
    std::string id;
    const auto back = features_from_json(features_to_json("g7", f), &id);
    CHECK(id == "g7");
    CHECK(back.p == f.p);
    CHECK(back.eps == f.eps);
    CHECK(back.gamma == f.gamma);
    CHECK(back.b == f.b);
    CHECK(back.c == f.c);
    REQUIRE(back.betti.betti.size() == f.betti.betti.size());
    for (std::size_t d = 0; d < f.betti.betti.size(); ++d) {
        CHECK(back.betti.betti[d].lower == f.betti.betti[d].lower);
        CHECK(back.betti.betti[d].upper == f.betti.betti[d].upper);
    }

    const auto fe = compute_features(g, 3);
    const auto back2 = features_from_json(features_to_json("g8", fe));
    CHECK(back2.betti.exact);
    CHECK(std::isinf(back2.eps));
}
