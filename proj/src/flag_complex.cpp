#include "gm/flag_complex.hpp"

#include <bit>

namespace gm {

namespace {

// DFS over ordered cliques. `cand` buffers live on an explicit stack, one
// level per tuple length; level L holds the common out-neighbors of
// tuple[0..L-1]. Cells come out in lexicographic order per dimension.
template <class Visit>
class Enumerator {
public:
    Enumerator(const DirectedGraph& g, int max_dim, Visit& visit)
        : g_(g), max_dim_(max_dim), words_(g.words_per_row()), visit_(visit),
          cand_(std::size_t(max_dim + 2) * words_) {}

    bool run() { // returns true if some cell of dimension max_dim+1 exists
        const Vertex n = g_.num_vertices();
        for (Vertex v = 0; v < n; ++v) {
            tuple_[0] = v;
            visit_(0, tuple_);
            const auto row = g_.out_row(v);
            if (max_dim_ == 0) {
                if (!has_higher_) {
                    for (std::size_t w = 0; w < words_; ++w)
                        if (row[w]) { has_higher_ = true; break; }
                }
                continue;
            }
            std::uint64_t* level1 = cand_.data();
            bool any = false;
            for (std::size_t w = 0; w < words_; ++w) {
                level1[w] = row[w];
                any |= row[w] != 0;
            }
            if (any) expand(level1, 1);
        }
        return has_higher_;
    }

private:
    void expand(const std::uint64_t* cand, int depth) {
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                const Vertex u = Vertex(w * 64 + b);
                tuple_[depth] = u;
                visit_(depth, tuple_);
                const auto row = g_.out_row(u);
                if (depth < max_dim_) {
                    std::uint64_t* next = cand_.data() + std::size_t(depth) * words_;
                    bool any = false;
                    for (std::size_t k = 0; k < words_; ++k) {
                        next[k] = cand[k] & row[k];
                        any |= next[k] != 0;
                    }
                    if (any) expand(next, depth + 1);
                } else if (!has_higher_) {
                    for (std::size_t k = 0; k < words_; ++k)
                        if (cand[k] & row[k]) { has_higher_ = true; break; }
                }
            }
        }
    }

    const DirectedGraph& g_;
    const int max_dim_;
    const std::size_t words_;
    Visit& visit_;
    std::vector<std::uint64_t> cand_;
    Vertex tuple_[DirectedFlagComplex::kMaxDim + 2];
    bool has_higher_ = false;
};

} // namespace

std::vector<Vertex> DirectedFlagComplex::simplex(int d, std::size_t index) const {
    std::vector<Vertex> out(std::size_t(d) + 1);
    if (wide) {
        const auto p = cells_wide[d][index];
        for (int i = 0; i <= d; ++i) out[i] = detail::slot_at<unsigned __int128, 16>(p, i);
    } else {
        const auto p = cells[d][index];
        for (int i = 0; i <= d; ++i) out[i] = detail::slot_at<std::uint64_t, 8>(p, i);
    }
    return out;
}

DirectedFlagComplex build_flag_complex(const DirectedGraph& g, int max_dim) {
    if (max_dim < 0 || max_dim > DirectedFlagComplex::kMaxDim)
        throw BadParamError("flag complex dimension must be in [0, 7]");
    if (g.num_vertices() > 0xFFFF)
        throw BadParamError("flag complex supports at most 65535 vertices");

    DirectedFlagComplex K;
    K.n = g.num_vertices();
    K.max_dim = max_dim;
    K.wide = g.num_vertices() > 0xFF;

    bool higher = false;
    if (K.wide) {
        K.cells_wide.resize(max_dim + 1);
        auto visit = [&](int d, const Vertex* tuple) {
            K.cells_wide[d].push_back(detail::pack_cell16(tuple, d + 1));
        };
        Enumerator<decltype(visit)> e(g, max_dim, visit);
        higher = e.run();
        while (!K.cells_wide.empty() && K.cells_wide.back().empty()) K.cells_wide.pop_back();
    } else {
        K.cells.resize(max_dim + 1);
        auto visit = [&](int d, const Vertex* tuple) {
            K.cells[d].push_back(detail::pack_cell8(tuple, d + 1));
        };
        Enumerator<decltype(visit)> e(g, max_dim, visit);
        higher = e.run();
        while (!K.cells.empty() && K.cells.back().empty()) K.cells.pop_back();
    }
    K.complete = !higher;
    return K;
}

std::vector<std::size_t> count_cells(const DirectedGraph& g, int max_dim) {
    if (max_dim < 0 || max_dim > DirectedFlagComplex::kMaxDim)
        throw BadParamError("flag complex dimension must be in [0, 7]");
    std::vector<std::size_t> counts(std::size_t(max_dim) + 1, 0);
    auto visit = [&](int d, const Vertex*) { ++counts[d]; };
    Enumerator<decltype(visit)> e(g, max_dim, visit);
    e.run();
    while (!counts.empty() && counts.back() == 0) counts.pop_back();
    return counts;
}

} // namespace gm
