#include "gm/graphlets.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>

namespace gm {

namespace {

// ordered pairs encoded by bit index
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

constexpr std::array<std::array<int, 3>, 6> kPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

int pair_bit(int a, int b) {
    for (int i = 0; i < 6; ++i)
        if (kPairs[i][0] == a && kPairs[i][1] == b) return i;
    return -1;
}

} // namespace

bool TriadCatalog::connected_code(std::uint8_t code) {
    const bool uv = code & ((1 << pair_bit(0, 1)) | (1 << pair_bit(1, 0)));
    const bool uw = code & ((1 << pair_bit(0, 2)) | (1 << pair_bit(2, 0)));
    const bool vw = code & ((1 << pair_bit(1, 2)) | (1 << pair_bit(2, 1)));
    return int(uv) + int(uw) + int(vw) >= 2;
}

std::uint8_t TriadCatalog::relabel_code(std::uint8_t code, const std::array<int, 3>& perm) {
    std::uint8_t out = 0;
    for (int i = 0; i < 6; ++i)
        if (code & (1 << i)) out |= std::uint8_t(1 << pair_bit(perm[kPairs[i][0]], perm[kPairs[i][1]]));
    return out;
}

TriadCatalog::TriadCatalog() {
    auto canon = [](std::uint8_t code) {
        std::uint8_t best = relabel_code(code, kPerms[0]);
        for (int p = 1; p < 6; ++p) best = std::min(best, relabel_code(code, kPerms[p]));
        return best;
    };

    // group the connected labeled triads by canonical code
    std::map<std::uint8_t, std::vector<std::uint8_t>> groups;
    for (int code = 0; code < 64; ++code)
        if (connected_code(std::uint8_t(code))) groups[canon(std::uint8_t(code))].push_back(std::uint8_t(code));
    assert(groups.size() == std::size_t(kClasses));

    std::vector<std::uint8_t> reps;
    for (const auto& [rep, members] : groups) reps.push_back(rep);
    std::sort(reps.begin(), reps.end(), [](std::uint8_t a, std::uint8_t b) {
        const int pa = std::popcount(unsigned(a)), pb = std::popcount(unsigned(b));
        return pa != pb ? pa < pb : a < b;
    });

    class_of_.fill(-1);
    int next_orbit = 0;
    for (int cls = 0; cls < kClasses; ++cls) {
        const std::uint8_t rep = reps[cls];
        TriadClass& tc = classes_[cls];
        tc.canon_code = rep;
        tc.edge_count = std::popcount(unsigned(rep));

        // vertex orbits of the canonical representative under its automorphisms
        std::array<int, 3> orbit_min = {0, 1, 2};
        for (const auto& perm : kPerms)
            if (relabel_code(rep, perm) == rep)
                for (int pos = 0; pos < 3; ++pos)
                    orbit_min[perm[pos]] = std::min(orbit_min[perm[pos]], pos);
        // assign global ids in order of the orbit's smallest position
        std::array<int, 3> id_of_min = {-1, -1, -1};
        for (int pos = 0; pos < 3; ++pos) {
            if (orbit_min[pos] == pos) {
                id_of_min[pos] = next_orbit++;
                ++tc.num_orbits;
            }
        }
        for (int pos = 0; pos < 3; ++pos) tc.orbit_of_pos[pos] = id_of_min[orbit_min[pos]];

        for (std::uint8_t code : groups[rep]) {
            class_of_[code] = cls;
            // any relabeling onto the representative fixes the orbit of each position
            for (const auto& perm : kPerms) {
                if (relabel_code(code, perm) == rep) {
                    for (int pos = 0; pos < 3; ++pos)
                        orbit_of_[code][pos] = tc.orbit_of_pos[perm[pos]];
                    break;
                }
            }
        }
    }
    assert(next_orbit == kOrbits);

    // connected edge-subsets per labeled code, for subgraph-copy counting
    for (int code = 0; code < 64; ++code) {
        for (int sub = code;; sub = (sub - 1) & code) {
            if (connected_code(std::uint8_t(sub))) {
                Copy copy;
                copy.cls = std::uint8_t(class_of_[sub]);
                for (int pos = 0; pos < 3; ++pos)
                    copy.orbit[pos] = std::uint8_t(orbit_of_[sub][pos]);
                copies_[code].push_back(copy);
            }
            if (sub == 0) break;
        }
    }
}

const TriadCatalog& TriadCatalog::instance() {
    static const TriadCatalog catalog;
    return catalog;
}

namespace {

// Visits every connected vertex triple exactly once, sorted as a < b < c.
// For each linked pair u < v, a third vertex w from the joint undirected
// neighborhood is accepted iff w > v, or u < w < v and w is not an
// undirected neighbor of u (so the triple is charged to its first linked
// pair in index order).
template <class Visit>
void for_each_connected_triple(const DirectedGraph& g, Visit&& visit) {
    const Vertex n = g.num_vertices();
    const std::size_t words = g.words_per_row();
    std::vector<std::uint64_t> und(std::size_t(n) * words, 0);
    for (Vertex u = 0; u < n; ++u) {
        const auto row = g.out_row(u);
        for (std::size_t w = 0; w < words; ++w) und[u * words + w] |= row[w];
        for (Vertex v : g.out_neighbors(u)) und[std::size_t(v) * words + (u >> 6)] |= std::uint64_t(1) << (u & 63);
    }

    std::vector<std::uint64_t> joint(words);
    for (Vertex u = 0; u < n; ++u) {
        const std::uint64_t* und_u = und.data() + std::size_t(u) * words;
        for (std::size_t wu = u >> 6; wu < words; ++wu) {
            std::uint64_t ubits = und_u[wu];
            if (wu == (u >> 6)) ubits &= ~((std::uint64_t(2) << (u & 63)) - 1); // v > u
            while (ubits) {
                const Vertex v = Vertex(wu * 64 + std::countr_zero(ubits));
                ubits &= ubits - 1;
                const std::uint64_t* und_v = und.data() + std::size_t(v) * words;
                for (std::size_t w = 0; w < words; ++w) joint[w] = und_u[w] | und_v[w];
                joint[u >> 6] &= ~(std::uint64_t(1) << (u & 63));
                joint[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
                for (std::size_t ww = (u >> 6); ww < words; ++ww) {
                    std::uint64_t bits = joint[ww];
                    if (ww == (u >> 6)) bits &= ~((std::uint64_t(2) << (u & 63)) - 1); // w > u
                    while (bits) {
                        const Vertex w = Vertex(ww * 64 + std::countr_zero(bits));
                        bits &= bits - 1;
                        if (w < v) {
                            const bool adj_uw = (und_u[w >> 6] >> (w & 63)) & 1;
                            if (adj_uw) continue; // charged to pair (u,w)
                            visit(u, w, v);
                        } else if (w > v) {
                            visit(u, v, w);
                        }
                    }
                }
            }
        }
    }
}

std::uint8_t triple_code(const DirectedGraph& g, Vertex a, Vertex b, Vertex c) {
    const Vertex t[3] = {a, b, c};
    std::uint8_t code = 0;
    for (int i = 0; i < 6; ++i)
        if (g.has_edge(t[kPairs[i][0]], t[kPairs[i][1]])) code |= std::uint8_t(1 << i);
    return code;
}

} // namespace

TriadCensus triad_census(const DirectedGraph& g) {
    const auto& catalog = TriadCatalog::instance();
    TriadCensus census;
    for_each_connected_triple(g, [&](Vertex a, Vertex b, Vertex c) {
        const int cls = catalog.class_of_code(triple_code(g, a, b, c));
        assert(cls >= 0);
        ++census.counts[cls];
        ++census.total;
    });
    return census;
}

std::array<double, TriadCatalog::kClasses> triad_profile(const TriadCensus& census) {
    std::array<double, TriadCatalog::kClasses> phi{};
    if (census.total == 0) return phi;
    for (int i = 0; i < TriadCatalog::kClasses; ++i)
        phi[i] = double(census.counts[i]) / double(census.total);
    return phi;
}

double triad_euclid(const DirectedGraph& g1, const DirectedGraph& g2) {
    const auto p1 = triad_profile(triad_census(g1));
    const auto p2 = triad_profile(triad_census(g2));
    double sum = 0;
    for (int i = 0; i < TriadCatalog::kClasses; ++i) {
        const double d = p1[i] - p2[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::vector<std::vector<std::int64_t>> orbit_degrees_all(const DirectedGraph& g, bool induced) {
    const auto& catalog = TriadCatalog::instance();
    std::vector<std::vector<std::int64_t>> deg(TriadCatalog::kOrbits,
                                               std::vector<std::int64_t>(g.num_vertices(), 0));
    for_each_connected_triple(g, [&](Vertex a, Vertex b, Vertex c) {
        const std::uint8_t code = triple_code(g, a, b, c);
        const Vertex t[3] = {a, b, c};
        if (induced) {
            for (int pos = 0; pos < 3; ++pos)
                ++deg[catalog.orbit_of_code_pos(code, pos)][t[pos]];
        } else {
            for (const auto& copy : catalog.copies_of_code(code))
                for (int pos = 0; pos < 3; ++pos) ++deg[copy.orbit[pos]][t[pos]];
        }
    });
    return deg;
}

std::vector<std::int64_t> orbit_degrees(const DirectedGraph& g, int orbit, bool induced) {
    if (orbit < 0 || orbit >= TriadCatalog::kOrbits) throw OrbitOutOfRangeError(orbit);
    return orbit_degrees_all(g, induced)[orbit];
}

std::vector<double> orbit_degree_distribution(const std::vector<std::int64_t>& degrees) {
    if (degrees.empty()) throw EmptyGraphError("orbit-degree distribution needs n >= 1");
    const std::int64_t maxdeg = *std::max_element(degrees.begin(), degrees.end());
    std::vector<double> p(std::size_t(maxdeg) + 1, 0.0);
    for (std::int64_t d : degrees) p[std::size_t(d)] += 1.0;
    for (double& x : p) x /= double(degrees.size());
    return p;
}

double emd_1d(const std::vector<double>& p, const std::vector<double>& q) {
    const double sp = std::accumulate(p.begin(), p.end(), 0.0);
    const double sq = std::accumulate(q.begin(), q.end(), 0.0);
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
        throw NotNormalizedError("emd_1d expects probability distributions");
    const std::size_t len = std::max(p.size(), q.size());
    double fp = 0, fq = 0, emd = 0;
    for (std::size_t x = 0; x < len; ++x) {
        fp += x < p.size() ? p[x] : 0.0;
        fq += x < q.size() ? q[x] : 0.0;
        emd += std::abs(fp - fq);
    }
    return emd;
}

double triad_emd_from_distributions(const std::vector<std::vector<double>>& d1,
                                    const std::vector<std::vector<double>>& d2) {
    if (d1.size() != std::size_t(TriadCatalog::kOrbits) || d2.size() != d1.size())
        throw SizeMismatchError("expected 30 orbit-degree distributions");
    double sum = 0;
    for (int i = 0; i < TriadCatalog::kOrbits; ++i) sum += emd_1d(d1[i], d2[i]);
    return sum / double(TriadCatalog::kOrbits);
}

double triad_emd(const DirectedGraph& g1, const DirectedGraph& g2) {
    if (g1.num_vertices() == 0 || g2.num_vertices() == 0)
        throw EmptyGraphError("triad_emd needs nonempty graphs");
    auto dists = [](const DirectedGraph& g) {
        std::vector<std::vector<double>> out;
        for (auto& deg : orbit_degrees_all(g)) out.push_back(orbit_degree_distribution(deg));
        return out;
    };
    return triad_emd_from_distributions(dists(g1), dists(g2));
}

} // namespace gm
