#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gm/digraph.hpp"

namespace gm {

enum class Model { ER, GR, PA };

std::string model_name(Model m);
Model model_from_name(const std::string& name);

struct ModelParams {
    Model model = Model::ER;
    double param = 0.0; // rho for ER, r for GR, k for PA (integer-valued)
    Vertex n = 0;
};

struct ManifestEntry {
    std::string id;
    ModelParams params;
    std::uint64_t seed = 0;
};

struct CollectionManifest {
    std::string kind; // "point" or "interval"
    std::uint64_t seed = 0;
    std::vector<ManifestEntry> entries;
};

// Directed Erdos-Renyi: each of the n(n-1) ordered pairs is present
// independently with probability rho; (u,v) and (v,u) are decided
// independently, so bigons can occur.
DirectedGraph gen_er(Vertex n, double rho, std::uint64_t seed);

// Biased oriented geometric graph: vertices i.i.d. uniform in the unit
// square, undirected edge when the Euclidean distance is at most r, then each
// edge uv with u < v oriented u->v with probability 1/3 (else v->u). Never
// both directions.
DirectedGraph gen_gr(Vertex n, double r, std::uint64_t seed);

// Random k-out graph with preferential attachment: all weights start at 1;
// repeatedly pick a vertex u with out-degree < k uniformly at random, pick a
// target v != u with probability proportional to its weight, add u->v and
// increment v's weight. Stops when every out-degree reaches k in the
// multigraph sense; parallel edges are then collapsed.
DirectedGraph gen_pa(Vertex n, int k, std::uint64_t seed);

DirectedGraph generate(const ModelParams& params, std::uint64_t seed);

struct PointGrid {
    Vertex n = 500;
    std::vector<double> er_rho = {0.03, 0.06, 0.1, 0.15, 0.2, 0.25};
    std::vector<double> gr_r = {0.1, 0.175, 0.3};
    std::vector<int> pa_k = {20, 40, 70};
    int per_param = 10;
};

using Interval = std::pair<double, double>;

struct IntervalGrid {
    Vertex n = 500;
    std::array<Interval, 4> er = {{{0.0, 0.01}, {0.02, 0.03}, {0.05, 0.07}, {0.09, 0.1}}};
    std::array<Interval, 4> gr = {{{0.0, 0.02}, {0.04, 0.05}, {0.08, 0.12}, {0.15, 0.175}}};
    std::array<Interval, 4> pa = {{{4, 7}, {12, 18}, {22, 25}, {27, 30}}};
    int per_model = 100; // split across the 4 intervals, first intervals get the remainder
};

PointGrid point_grid_paper();
PointGrid point_grid_desk100();
IntervalGrid interval_grid_paper();
// Desk-scale intervals at n=100: ER densities rescaled so mean degrees stay in
// the tens, GR radii rescaled by sqrt(5) to preserve mean degree, PA k kept
// (k is the mean out-degree directly). 25 graphs per model.
IntervalGrid interval_grid_desk100();

// Point-drawn collection: per_param graphs for every grid parameter. The
// default grid gives 120 entries: 60 ER, 30 GR, 30 PA.
CollectionManifest gen_point_collection(std::uint64_t seed, const PointGrid& grid = PointGrid{});

// Interval-drawn collection: per_model parameters per model, drawn uniformly
// from the four intervals in fixed (model, interval, draw) order. The default
// grid gives 300 entries, 100 per model.
CollectionManifest gen_interval_collection(std::uint64_t seed, const IntervalGrid& grid = IntervalGrid{});

DirectedGraph materialize(const ManifestEntry& entry);

std::string manifest_to_json(const CollectionManifest& manifest);
CollectionManifest manifest_from_json(const std::string& text);

} // namespace gm
