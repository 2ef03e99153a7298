#include "doctest.h"

#include <cmath>
#include <set>

#include "gm/random_models.hpp"
#include "gm/rng.hpp"

using namespace gm;

TEST_CASE("gen_er edge cases") {
    CHECK(gen_er(5, 0.0, 1).num_edges() == 0);
    CHECK(gen_er(5, 1.0, 1).num_edges() == 20);
    CHECK_THROWS_AS(gen_er(5, 1.5, 1), BadParamError);

    // determinism
    CHECK(gen_er(30, 0.2, 42).edge_list() == gen_er(30, 0.2, 42).edge_list());
    CHECK(gen_er(30, 0.2, 42).edge_list() != gen_er(30, 0.2, 43).edge_list());
}

TEST_CASE("gen_er edge count matches binomial moments") {
    // mean edge count over 200 seeds within 3 sigma of N*rho
    const int seeds = 200;
    const double n = 120, rho = 0.1;
    const double pairs = n * (n - 1);
    double total = 0;
    for (int s = 0; s < seeds; ++s) total += double(gen_er(Vertex(n), rho, 1000 + s).num_edges());
    const double mean = total / seeds;
    const double sigma = std::sqrt(pairs * rho * (1 - rho) / seeds);
    CHECK(std::abs(mean - pairs * rho) <= 3 * sigma);
}

TEST_CASE("gen_gr edge cases and orientation bias") {
    CHECK(gen_gr(20, 0.0, 1).num_edges() == 0);
    // diameter of the unit square: every pair connected, single orientation
    CHECK(gen_gr(20, std::sqrt(2.0), 1).num_edges() == 20 * 19 / 2);
    CHECK_THROWS_AS(gen_gr(5, -0.1, 1), BadParamError);

    // no bigons, ever
    for (int s = 0; s < 10; ++s) {
        const auto g = gen_gr(40, 0.3, 500 + s);
        for (const auto& [u, v] : g.edge_list()) CHECK(!g.has_edge(v, u));
    }

    // low-index -> high-index orientation frequency within 3 sigma of 1/3
    std::size_t forward = 0, edges = 0;
    for (int s = 0; s < 200; ++s) {
        const auto g = gen_gr(50, 0.25, 9000 + s);
        for (const auto& [u, v] : g.edge_list()) {
            ++edges;
            if (u < v) ++forward;
        }
    }
    const double phat = double(forward) / double(edges);
    const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / double(edges));
    CHECK(std::abs(phat - 1.0 / 3) <= 3 * sigma);
}

TEST_CASE("gen_pa basics") {
    CHECK_THROWS_AS(gen_pa(5, 0, 1), BadParamError);
    CHECK_THROWS_AS(gen_pa(5, 5, 1), BadParamError);

    // the 2-vertex 1-out graph is forced: the bigon
    const auto b = gen_pa(2, 1, 123);
    CHECK(b.num_edges() == 2);
    CHECK(b.has_edge(0, 1));
    CHECK(b.has_edge(1, 0));

    // out-degree never exceeds k after collapsing
    for (int s = 0; s < 5; ++s) {
        const auto g = gen_pa(60, 7, 300 + s);
        const auto [out, in] = degrees(g);
        for (std::size_t v = 0; v < 60; ++v) CHECK(out[v] <= 7);
    }

    CHECK(gen_pa(50, 5, 77).edge_list() == gen_pa(50, 5, 77).edge_list());
}

TEST_CASE("gen_pa in-degrees are heavy-tailed") {
    // max in-degree exceeds 3x the mean in-degree in at least 90% of seeds
    const int seeds = 100;
    int heavy = 0;
    for (int s = 0; s < seeds; ++s) {
        const auto g = gen_pa(500, 20, 40000 + s);
        const auto [out, in] = degrees(g);
        std::size_t maxin = 0, sum = 0;
        for (std::size_t v = 0; v < 500; ++v) {
            maxin = std::max(maxin, in[v]);
            sum += in[v];
        }
        const double mean = double(sum) / 500.0;
        if (double(maxin) > 3.0 * mean) ++heavy;
    }
    CHECK(heavy >= 90);
}

TEST_CASE("point-drawn collection") {
    const auto m = gen_point_collection(7);
    CHECK(m.kind == "point");
    CHECK(m.entries.size() == 120);
    int er = 0, gr = 0, pa = 0;
    std::set<std::string> ids;
    for (const auto& e : m.entries) {
        ids.insert(e.id);
        if (e.params.model == Model::ER) ++er;
        if (e.params.model == Model::GR) ++gr;
        if (e.params.model == Model::PA) ++pa;
        CHECK(e.params.n == 500);
        CHECK(e.seed == derive_seed(7, fnv1a64(e.id)));
    }
    CHECK(er == 60);
    CHECK(gr == 30);
    CHECK(pa == 30);
    CHECK(ids.size() == m.entries.size()); // unique ids

    // reproducible from (params, seed) alone and stable across calls
    const auto m2 = gen_point_collection(7);
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        CHECK(m.entries[i].id == m2.entries[i].id);
        CHECK(m.entries[i].seed == m2.entries[i].seed);
    }
    const auto g1 = materialize(m.entries[3]);
    const auto g2 = materialize(m2.entries[3]);
    CHECK(g1.edge_list() == g2.edge_list());
}

TEST_CASE("interval-drawn collection") {
    const auto m = gen_interval_collection(11);
    CHECK(m.kind == "interval");
    CHECK(m.entries.size() == 300);
    int per_model[3] = {0, 0, 0};
    const IntervalGrid grid;
    for (const auto& e : m.entries) {
        ++per_model[int(e.params.model)];
        if (e.params.model == Model::ER) {
            bool inside = false;
            for (const auto& [lo, hi] : grid.er)
                if (e.params.param >= lo && e.params.param <= hi) inside = true;
            CHECK(inside);
        }
        if (e.params.model == Model::PA)
            CHECK(e.params.param == std::floor(e.params.param)); // integral k
    }
    CHECK(per_model[0] == 100);
    CHECK(per_model[1] == 100);
    CHECK(per_model[2] == 100);
}

TEST_CASE("desk-scale grids") {
    const auto p = gen_point_collection(3, point_grid_desk100());
    CHECK(p.entries.size() == 120);
    for (const auto& e : p.entries) CHECK(e.params.n == 100);

    const auto iv = gen_interval_collection(3, interval_grid_desk100());
    CHECK(iv.entries.size() == 75);
    int er = 0;
    for (const auto& e : iv.entries)
        if (e.params.model == Model::ER) ++er;
    CHECK(er == 25);
}

TEST_CASE("manifest json round-trip") {
    const auto m = gen_point_collection(9, point_grid_desk100());
    const auto back = manifest_from_json(manifest_to_json(m));
    CHECK(back.kind == m.kind);
    CHECK(back.seed == m.seed);
    REQUIRE(back.entries.size() == m.entries.size());
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        CHECK(back.entries[i].id == m.entries[i].id);
        CHECK(back.entries[i].seed == m.entries[i].seed);
        CHECK(back.entries[i].params.model == m.entries[i].params.model);
        CHECK(back.entries[i].params.param == m.entries[i].params.param);
        CHECK(back.entries[i].params.n == m.entries[i].params.n);
    }
}
