#pragma once

#include <cstdint>
#include <vector>

#include "gm/digraph.hpp"

namespace gm {

namespace detail {

// Cells are packed with one vertex per 8- or 16-bit slot, left-aligned, so
// integer order on packed values equals lexicographic order on tuples of the
// same length. Trailing slots are zero.
inline std::uint64_t pack_cell8(const Vertex* v, int len) {
    std::uint64_t p = 0;
    for (int i = 0; i < len; ++i) p |= std::uint64_t(v[i] & 0xFFu) << (8 * (7 - i));
    return p;
}

inline unsigned __int128 pack_cell16(const Vertex* v, int len) {
    unsigned __int128 p = 0;
    for (int i = 0; i < len; ++i)
        p |= static_cast<unsigned __int128>(v[i] & 0xFFFFu) << (16 * (7 - i));
    return p;
}

// Remove the vertex in slot i from a packed len-slot cell (len <= 8).
template <class P, int Slot>
inline P drop_slot(P p, int i) {
    constexpr int total = int(sizeof(P)) * 8;
    const P high = (i == 0) ? P(0) : P(~P(0)) << (total - Slot * i);
    const P low = (Slot * (i + 1) == total) ? P(0) : (P(1) << (total - Slot * (i + 1))) - 1;
    return P(p & high) | P((p & low) << Slot);
}

template <class P, int Slot>
inline Vertex slot_at(P p, int i) {
    constexpr int total = int(sizeof(P)) * 8;
    return Vertex((p >> (total - Slot * (i + 1))) & ((P(1) << Slot) - 1));
}

} // namespace detail

/// Directed flag complex of a digraph up to a requested dimension. A directed
/// p-simplex is an ordered (p+1)-tuple (v_0,...,v_p) with an edge v_i -> v_j
/// for every i < j; v_0 is its source and v_p its sink. Cell arrays are sorted
/// lexicographically, one array per dimension.
class DirectedFlagComplex {
public:
    // Packing allows 8 vertex slots, i.e. cells up to dimension 7; enough for
    // the default homology range (p = 6 needs dimension p+1).
    static constexpr int kMaxDim = 7;

    Vertex n = 0;
    int max_dim = 0;       // dimension the enumeration was asked for
    bool complete = false; // no cells exist above the stored top dimension
    bool wide = false;     // 16-bit slots (needed when n > 255)

    std::vector<std::vector<std::uint64_t>> cells;
    std::vector<std::vector<unsigned __int128>> cells_wide;

    int top_dim() const {
        return int((wide ? cells_wide.size() : cells.size())) - 1;
    }
    std::size_t count(int d) const {
        if (d < 0 || d > top_dim()) return 0;
        return wide ? cells_wide[d].size() : cells[d].size();
    }
    /// Simplex counts γ_0..γ_top.
    std::vector<std::size_t> cell_counts() const {
        std::vector<std::size_t> c;
        for (int d = 0; d <= top_dim(); ++d) c.push_back(count(d));
        return c;
    }
    std::vector<Vertex> simplex(int d, std::size_t index) const;
};

/// Enumerates the flag complex by sink extension: every cell is extended by
/// the common out-neighbors of its vertices, appended as the new sink.
DirectedFlagComplex build_flag_complex(const DirectedGraph& g, int max_dim);

/// Counting-only pass; returns γ_0..γ_top for dimensions <= max_dim.
std::vector<std::size_t> count_cells(const DirectedGraph& g, int max_dim);

} // namespace gm
