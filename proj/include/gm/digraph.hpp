#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gm/errors.hpp"

namespace gm {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Distance value reported by bfs_distances for unreachable vertices.
inline constexpr int kUnreachable = -1;

/// Finite directed graph: no self-loops, at most one edge per ordered pair,
/// bigons (both u->v and v->u) allowed. Vertices are dense integers 0..n-1.
/// Immutable after construction, so all queries are safe to run concurrently.
class DirectedGraph {
public:
    DirectedGraph() = default;

    // Duplicate pairs collapse to a single edge; self-loops are rejected.
    static DirectedGraph from_edge_list(Vertex n, std::span<const Edge> pairs);
    static DirectedGraph from_edge_list(Vertex n, const std::vector<Edge>& pairs) {
        return from_edge_list(n, std::span<const Edge>(pairs));
    }

    Vertex num_vertices() const { return n_; }
    std::size_t num_edges() const { return m_; }

    bool has_edge(Vertex u, Vertex v) const {
        return (adj_bits_[std::size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }

    const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_[v]; }
    const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_[v]; }

    // Bit row of out-neighbors, 64 vertices per word. Used by the flag complex
    // enumerator and the triad census for fast set intersections.
    std::span<const std::uint64_t> out_row(Vertex v) const {
        return {adj_bits_.data() + std::size_t(v) * words_, words_};
    }
    std::size_t words_per_row() const { return words_; }

    /// Edges sorted by (source, target).
    std::vector<Edge> edge_list() const;

private:
    Vertex n_ = 0;
    std::size_t m_ = 0;
    std::size_t words_ = 0;
    std::vector<std::vector<Vertex>> out_, in_;
    std::vector<std::uint64_t> adj_bits_;
};

/// (out-degree sequence, in-degree sequence); both sum to num_edges().
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
degrees(const DirectedGraph& g);

/// Directed shortest-path distances from `source`; kUnreachable marks vertices
/// with no directed path from the source.
std::vector<int> bfs_distances(const DirectedGraph& g, Vertex source);

/// Subgraph induced on `keep` (duplicates ignored), vertices relabeled to
/// 0..|keep|-1 in increasing order of their original ids.
DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const Vertex> keep);

} // namespace gm
