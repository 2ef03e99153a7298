#pragma once

#include <string>
#include <vector>

#include "gm/digraph.hpp"
#include "gm/homology.hpp"

namespace gm {

enum class FeatureKind { Betti, SimplexCount };

/// Log-clamped topological feature vector: values[k] = max{0, log x_k} for
/// the underlying count x_k (Betti number or simplex count), k = 0..p.
/// Natural logarithm; every downstream statistic is invariant to the base.
struct FeatureVector {
    FeatureKind kind = FeatureKind::Betti;
    std::vector<double> values;
    bool exact = true;
    double eps = std::numeric_limits<double>::infinity();
};

struct GraphFeatures {
    int p = 0;
    double eps = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> gamma;    // γ_0..γ_p
    BettiResult betti;                 // intervals for dimensions 0..p
    std::vector<double> b, c;          // log-clamped vectors, length p+1
};

/// Computes γ, Betti numbers (exact for eps = infinity, budgeted otherwise)
/// and both feature vectors in one pass. The flag complex is built to
/// dimension p+1 internally so that β_p is exact with respect to the graph.
/// Approximate Betti intervals enter b via their midpoint rounded to the
/// nearest integer.
GraphFeatures compute_features(const DirectedGraph& g, int p,
                               double eps = std::numeric_limits<double>::infinity());

FeatureVector feature_vector(const DirectedGraph& g, FeatureKind kind, int p,
                             double eps = std::numeric_limits<double>::infinity());

std::string features_to_json(const std::string& id, const GraphFeatures& f);
GraphFeatures features_from_json(const std::string& text, std::string* id_out = nullptr);

} // namespace gm
