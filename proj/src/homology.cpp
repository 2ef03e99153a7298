#include "gm/homology.hpp"

#include <algorithm>
#include <cmath>

namespace gm {

namespace {

constexpr std::uint32_t kNoPivot = 0xFFFFFFFFu;

struct RankBound {
    std::uint64_t lower = 0;
    std::uint64_t skipped = 0;
};

// Flat pool of reduced columns claimed as pivots.
struct ColumnPool {
    std::vector<std::uint32_t> data;
    std::vector<std::uint64_t> offset;
    std::vector<std::uint32_t> length;

    std::uint32_t store(const std::vector<std::uint32_t>& col) {
        offset.push_back(data.size());
        length.push_back(std::uint32_t(col.size()));
        data.insert(data.end(), col.begin(), col.end());
        return std::uint32_t(offset.size() - 1);
    }
};

// out = symmetric difference of two sorted index lists.
void symdiff(const std::vector<std::uint32_t>& a, const std::uint32_t* b, std::size_t blen,
             std::vector<std::uint32_t>& out) {
    out.clear();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < blen) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b + j, b + blen);
}

// Column-by-column reduction of boundary_d (rows: (d-1)-cells, cols: d-cells).
// A column may be cleared (known boundary from the dimension above), claim an
// unclaimed pivot within the budget, reduce to zero, or be abandoned once the
// budget runs out. Claiming requires remaining budget, so budget 0 abandons
// every nonzero column.
template <class P, int Slot>
RankBound reduce_rank(const std::vector<P>& rows, const std::vector<P>& cols, int dim,
                      std::uint64_t budget, const std::vector<std::uint8_t>* cleared,
                      std::vector<std::uint8_t>& pivot_rows_out) {
    RankBound rb;
    pivot_rows_out.assign(rows.size(), 0);
    std::vector<std::uint32_t> pivot_owner(rows.size(), kNoPivot);
    ColumnPool pool;
    std::vector<std::uint32_t> col, tmp;

    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cleared && (*cleared)[j]) continue; // certain boundary, rank 0 here

        col.clear();
        const P c = cols[j];
        for (int i = 0; i <= dim; ++i) {
            const P face = detail::drop_slot<P, Slot>(c, i);
            const auto it = std::lower_bound(rows.begin(), rows.end(), face);
            col.push_back(std::uint32_t(it - rows.begin()));
        }
        std::sort(col.begin(), col.end());

        std::uint64_t steps = 0;
        for (;;) {
            if (col.empty()) break; // zero column
            if (steps >= budget) {
                ++rb.skipped;
                break;
            }
            const std::uint32_t piv = col.back();
            const std::uint32_t owner = pivot_owner[piv];
            if (owner == kNoPivot) {
                pivot_owner[piv] = pool.store(col);
                pivot_rows_out[piv] = 1;
                ++rb.lower;
                break;
            }
            symdiff(col, pool.data.data() + pool.offset[owner], pool.length[owner], tmp);
            col.swap(tmp);
            ++steps;
        }
    }
    return rb;
}

template <class P, int Slot>
BettiResult betti_impl(const std::vector<std::vector<P>>& cells, int max_dim, double eps) {
    const std::uint64_t budget =
        (eps >= double(std::numeric_limits<std::uint64_t>::max()))
            ? std::numeric_limits<std::uint64_t>::max()
            : std::uint64_t(std::max(eps, 0.0));

    const int top = int(cells.size()) - 1;
    const int reduce_top = std::min(top, max_dim + 1);

    std::vector<RankBound> rb(std::size_t(max_dim) + 3);
    std::vector<std::uint8_t> cleared;
    for (int d = reduce_top; d >= 1; --d) {
        std::vector<std::uint8_t> pivot_rows;
        rb[d] = reduce_rank<P, Slot>(cells[d - 1], cells[d], d, budget,
                                     d == reduce_top ? nullptr : &cleared, pivot_rows);
        cleared = std::move(pivot_rows);
    }

    BettiResult res;
    res.eps = eps;
    res.betti.resize(std::size_t(max_dim) + 1);
    for (int d = 0; d <= max_dim; ++d) {
        const std::int64_t gamma = (d <= top) ? std::int64_t(cells[d].size()) : 0;
        const auto& rd = rb[d];
        const auto& ru = rb[d + 1];
        std::int64_t lo = gamma - std::int64_t(rd.lower + rd.skipped) -
                          std::int64_t(ru.lower + ru.skipped);
        std::int64_t hi = gamma - std::int64_t(rd.lower) - std::int64_t(ru.lower);
        if (lo < 0) lo = 0;
        res.betti[d] = {lo, hi};
        if (lo != hi) res.exact = false;
    }
    return res;
}

} // namespace

std::vector<std::int64_t> BettiResult::midpoints() const {
    std::vector<std::int64_t> m;
    m.reserve(betti.size());
    for (const auto& iv : betti)
        m.push_back(std::llround(0.5 * double(iv.lower) + 0.5 * double(iv.upper)));
    return m;
}

BettiResult betti_numbers(const DirectedFlagComplex& K, int max_dim) {
    return betti_numbers_approx(K, max_dim, std::numeric_limits<double>::infinity());
}

BettiResult betti_numbers_approx(const DirectedFlagComplex& K, int max_dim, double eps) {
    if (max_dim < 0) throw BadParamError("max_dim must be nonnegative");
    if (eps < 0.0 || std::isnan(eps)) throw BadParamError("eps must be nonnegative");
    return K.wide ? betti_impl<unsigned __int128, 16>(K.cells_wide, max_dim, eps)
                  : betti_impl<std::uint64_t, 8>(K.cells, max_dim, eps);
}

} // namespace gm
