#include "gm/digraph.hpp"

#include <algorithm>
#include <queue>

namespace gm {

DirectedGraph DirectedGraph::from_edge_list(Vertex n, std::span<const Edge> pairs) {
    DirectedGraph g;
    g.n_ = n;
    g.words_ = (std::size_t(n) + 63) / 64;
    g.out_.resize(n);
    g.in_.resize(n);
    g.adj_bits_.assign(std::size_t(n) * g.words_, 0);

    for (const auto& [u, v] : pairs) {
        if (u >= n) throw VertexOutOfRangeError(u, n);
        if (v >= n) throw VertexOutOfRangeError(v, n);
        if (u == v) throw SelfLoopError(u);
        std::uint64_t& word = g.adj_bits_[std::size_t(u) * g.words_ + (v >> 6)];
        const std::uint64_t bit = std::uint64_t(1) << (v & 63);
        if (word & bit) continue; // duplicate pair, collapse
        word |= bit;
        g.out_[u].push_back(v);
        g.in_[v].push_back(u);
        ++g.m_;
    }
    for (auto& nb : g.out_) std::sort(nb.begin(), nb.end());
    for (auto& nb : g.in_) std::sort(nb.begin(), nb.end());
    return g;
}

std::vector<Edge> DirectedGraph::edge_list() const {
    std::vector<Edge> edges;
    edges.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : out_[u]) edges.emplace_back(u, v);
    return edges;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
degrees(const DirectedGraph& g) {
    const Vertex n = g.num_vertices();
    std::vector<std::size_t> out(n), in(n);
    for (Vertex v = 0; v < n; ++v) {
        out[v] = g.out_neighbors(v).size();
        in[v] = g.in_neighbors(v).size();
    }
    return {std::move(out), std::move(in)};
}

std::vector<int> bfs_distances(const DirectedGraph& g, Vertex source) {
    const Vertex n = g.num_vertices();
    if (source >= n) throw VertexOutOfRangeError(source, n);
    std::vector<int> dist(n, kUnreachable);
    std::queue<Vertex> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const Vertex u = frontier.front();
        frontier.pop();
        for (Vertex v : g.out_neighbors(u)) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
        }
    }
    return dist;
}

DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const Vertex> keep) {
    std::vector<Vertex> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v : sorted)
        if (v >= g.num_vertices()) throw VertexOutOfRangeError(v, g.num_vertices());

    std::vector<Vertex> local(g.num_vertices(), 0);
    for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = Vertex(i);

    std::vector<Edge> edges;
    for (Vertex u : sorted)
        for (Vertex v : g.out_neighbors(u))
            if (std::binary_search(sorted.begin(), sorted.end(), v))
                edges.emplace_back(local[u], local[v]);
    return DirectedGraph::from_edge_list(Vertex(sorted.size()), edges);
}

} // namespace gm
