#include "gm/portrait.hpp"

#include <algorithm>
#include <cmath>

namespace gm {

Portrait portrait(const DirectedGraph& g) {
    const Vertex n = g.num_vertices();
    Portrait B;
    B.n = n;
    if (n == 0) return B;

    // shells[v][l] = number of vertices at distance l from v
    std::vector<std::vector<std::size_t>> shells(n);
    std::size_t diameter = 0;
    for (Vertex v = 0; v < n; ++v) {
        const auto dist = bfs_distances(g, v);
        auto& shell = shells[v];
        shell.assign(1, 0);
        for (Vertex u = 0; u < n; ++u) {
            if (dist[u] == kUnreachable) continue;
            const std::size_t l = std::size_t(dist[u]);
            if (l >= shell.size()) shell.resize(l + 1, 0);
            ++shell[l];
        }
        diameter = std::max(diameter, shell.size() - 1);
    }
    // vertices whose eccentricity falls short of the diameter sit at k = 0 in
    // the longer rows, keeping every row sum equal to n. Columns run 0..n so
    // the k = 1 slot exists even for a single-vertex graph.
    B.rows.assign(diameter + 1, std::vector<std::int64_t>(std::size_t(n) + 1, 0));
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t l = 0; l <= diameter; ++l) {
            const std::size_t k = l < shells[v].size() ? shells[v][l] : 0;
            ++B.rows[l][k];
        }
    return B;
}

PortraitDistribution portrait_distribution(const Portrait& B) {
    if (B.n == 0) throw EmptyGraphError("portrait distribution needs n >= 1");
    double total = 0;
    for (const auto& row : B.rows)
        for (std::size_t k = 1; k < row.size(); ++k) total += double(k) * double(row[k]);
    PortraitDistribution P;
    P.p.resize(B.rows.size());
    for (std::size_t l = 0; l < B.rows.size(); ++l) {
        P.p[l].assign(B.rows[l].size(), 0.0);
        for (std::size_t k = 1; k < B.rows[l].size(); ++k)
            P.p[l][k] = double(k) * double(B.rows[l][k]) / total;
    }
    return P;
}

namespace {

double at(const PortraitDistribution& P, std::size_t l, std::size_t k) {
    if (l >= P.p.size() || k >= P.p[l].size()) return 0.0;
    return P.p[l][k];
}

} // namespace

double kl_divergence(const PortraitDistribution& P, const PortraitDistribution& Q) {
    const std::size_t rows = std::max(P.p.size(), Q.p.size());
    double kl = 0;
    for (std::size_t l = 0; l < rows; ++l) {
        const std::size_t cols =
            std::max(l < P.p.size() ? P.p[l].size() : 0, l < Q.p.size() ? Q.p[l].size() : 0);
        for (std::size_t k = 0; k < cols; ++k) {
            const double p = at(P, l, k);
            if (p == 0.0) continue;
            const double q = at(Q, l, k);
            if (q == 0.0) throw DomainMismatchError("kl_divergence: q = 0 < p");
            kl += p * std::log2(p / q);
        }
    }
    return kl;
}

double js_divergence(const PortraitDistribution& P, const PortraitDistribution& Q) {
    const std::size_t rows = std::max(P.p.size(), Q.p.size());
    double js = 0;
    for (std::size_t l = 0; l < rows; ++l) {
        const std::size_t cols =
            std::max(l < P.p.size() ? P.p[l].size() : 0, l < Q.p.size() ? Q.p[l].size() : 0);
        for (std::size_t k = 0; k < cols; ++k) {
            const double p = at(P, l, k), q = at(Q, l, k);
            const double m = 0.5 * (p + q);
            if (p > 0) js += 0.5 * p * std::log2(p / m);
            if (q > 0) js += 0.5 * q * std::log2(q / m);
        }
    }
    // clamp off rounding noise; JS in base 2 lies in [0,1]
    return std::min(1.0, std::max(0.0, js));
}

double portrait_divergence(const Portrait& b1, const Portrait& b2) {
    return js_divergence(portrait_distribution(b1), portrait_distribution(b2));
}

double portrait_divergence(const DirectedGraph& g1, const DirectedGraph& g2) {
    return portrait_divergence(portrait(g1), portrait(g2));
}

} // namespace gm
