#pragma once

#include <cstdint>
#include <vector>

#include "gm/digraph.hpp"

namespace gm {

/// Network portrait: rows[l][k] = number of vertices that are at directed
/// distance l from exactly k other vertices, l = 0..diameter, k = 0..n-1.
/// Every row sums to n; row 0 is concentrated at k = 1, and row 1 restricted
/// over k is the out-degree distribution.
struct Portrait {
    Vertex n = 0;
    std::vector<std::vector<std::int64_t>> rows;
};

/// One BFS per vertex; unreachable pairs contribute to no row.
Portrait portrait(const DirectedGraph& g);

/// Joint distribution P(k,l) of picking an ordered pair (u,v) uniformly among
/// pairs at finite distance, with d(u,v) = l and s^l_u = k. P(k,l) is
/// proportional to k*rows[l][k], normalized by the total number of finite
/// ordered pairs (which equals n^2 exactly when the graph is strongly
/// connected). The k = 0 column carries zero weight.
struct PortraitDistribution {
    std::vector<std::vector<double>> p; // p[l][k]
};

PortraitDistribution portrait_distribution(const Portrait& B);

/// KL divergence (base 2) over the joint (k,l) grid; DomainMismatch where
/// q = 0 < p. Terms with p = 0 contribute zero.
double kl_divergence(const PortraitDistribution& p, const PortraitDistribution& q);

/// Jensen-Shannon divergence (base 2): (KL(p||m) + KL(q||m))/2 with the
/// mixture m = (p+q)/2, clamped into [0,1].
double js_divergence(const PortraitDistribution& p, const PortraitDistribution& q);

/// Portrait Divergence: Jensen-Shannon divergence (base 2) between the joint
/// shortest-path distributions, so the value lies in [0,1].
double portrait_divergence(const Portrait& b1, const Portrait& b2);
double portrait_divergence(const DirectedGraph& g1, const DirectedGraph& g2);

} // namespace gm
