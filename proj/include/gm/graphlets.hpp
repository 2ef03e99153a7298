#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gm/digraph.hpp"

namespace gm {

/// The 13 isomorphism classes of connected 3-vertex digraphs and their 30
/// automorphism orbits. Generated programmatically at first use by
/// enumerating all 2^6 labeled triads, grouping by canonical code, and
/// computing vertex orbits; the counts 13 and 30 are asserted.
///
/// A labeled triad on local vertices {0,1,2} is encoded in 6 bits, one per
/// ordered pair in the order (0,1),(0,2),(1,0),(1,2),(2,0),(2,1). The
/// canonical code of a class is the smallest encoding over the 6 relabelings;
/// classes are ordered by (edge count, canonical code).
class TriadCatalog {
public:
    static constexpr int kClasses = 13;
    static constexpr int kOrbits = 30;

    struct TriadClass {
        std::uint8_t canon_code = 0;
        int edge_count = 0;
        std::array<int, 3> orbit_of_pos{}; // global orbit id per canonical position
        int num_orbits = 0;
    };

    // One connected edge-subset of an induced triad: the graphlet class it
    // forms and the global orbit occupied by each local position.
    struct Copy {
        std::uint8_t cls = 0;
        std::array<std::uint8_t, 3> orbit{};
    };

    static const TriadCatalog& instance();

    const std::array<TriadClass, kClasses>& classes() const { return classes_; }
    /// Class index for a labeled 6-bit triad code, or -1 if disconnected.
    int class_of_code(std::uint8_t code) const { return class_of_[code]; }
    /// Orbit occupied by local position pos of a connected labeled code.
    int orbit_of_code_pos(std::uint8_t code, int pos) const { return orbit_of_[code][pos]; }
    /// All connected edge-subsets of a labeled code, for subgraph-copy counting.
    const std::vector<Copy>& copies_of_code(std::uint8_t code) const { return copies_[code]; }

    static bool connected_code(std::uint8_t code);
    static std::uint8_t relabel_code(std::uint8_t code, const std::array<int, 3>& perm);

private:
    TriadCatalog();
    std::array<TriadClass, kClasses> classes_{};
    std::array<int, 64> class_of_{};
    std::array<std::array<int, 3>, 64> orbit_of_{};
    std::array<std::vector<Copy>, 64> copies_{};
};

struct TriadCensus {
    std::array<std::int64_t, TriadCatalog::kClasses> counts{};
    std::int64_t total = 0;
};

/// Counts connected induced 3-vertex subgraphs by isomorphism class, visiting
/// only connected triples through the adjacency structure.
TriadCensus triad_census(const DirectedGraph& g);

/// phi(G): census proportions. The zero vector when the graph has no
/// connected triples, which keeps TriadEuclid total on degenerate inputs.
std::array<double, TriadCatalog::kClasses> triad_profile(const TriadCensus& census);

/// || phi(g1) - phi(g2) ||_2
double triad_euclid(const DirectedGraph& g1, const DirectedGraph& g2);

/// Orbit-degree sequences for all 30 orbits: result[i][v] counts the copies
/// of orbit i's graphlet (as a subgraph, i.e. an edge subset on a vertex
/// triple) in which v occupies an orbit-i position. With `induced` set, only
/// the full induced triad of each triple is counted, for cross-checking
/// against induced-graphlet conventions.
std::vector<std::vector<std::int64_t>> orbit_degrees_all(const DirectedGraph& g,
                                                         bool induced = false);

std::vector<std::int64_t> orbit_degrees(const DirectedGraph& g, int orbit,
                                        bool induced = false);

/// P_i(k) = proportion of vertices with orbit-i-degree k, as a dense vector
/// over k = 0..max degree.
std::vector<double> orbit_degree_distribution(const std::vector<std::int64_t>& degrees);

/// Earth mover distance between discrete distributions on 0..len-1:
/// the L1 distance between their step CDFs on the integer grid.
double emd_1d(const std::vector<double>& p, const std::vector<double>& q);

/// Mean EMD between matched orbit-degree distributions over the 30 orbits.
double triad_emd(const DirectedGraph& g1, const DirectedGraph& g2);

/// Pairwise-ready variant working from precomputed orbit-degree distributions.
double triad_emd_from_distributions(const std::vector<std::vector<double>>& d1,
                                    const std::vector<std::vector<double>>& d2);

} // namespace gm
