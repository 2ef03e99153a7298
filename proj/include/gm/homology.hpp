#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "gm/flag_complex.hpp"

namespace gm {

struct BettiInterval {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
};

struct BettiResult {
    std::vector<BettiInterval> betti; // dimensions 0..max_dim
    bool exact = true;                // every interval has zero width
    double eps = std::numeric_limits<double>::infinity();

    /// Interval midpoints rounded to the nearest integer.
    std::vector<std::int64_t> midpoints() const;
};

// Betti numbers of the complex as given, over F2:
//   beta_d = gamma_d - rank(boundary_d) - rank(boundary_{d+1}),
// with rank(boundary_{d+1}) = 0 when the complex stores no (d+1)-cells. For
// beta_p of a graph this means the complex must be built to dimension p+1
// (feature extraction does this).
BettiResult betti_numbers(const DirectedFlagComplex& K, int max_dim);

// Budgeted variant: reducing a column stops after `eps` column additions and
// the column is abandoned, leaving its rank contribution ambiguous. Each
// abandoned column of boundary_d widens the intervals of beta_{d-1} and
// beta_d by at most one. eps = infinity reproduces betti_numbers; eps = 0
// abandons every nonzero column, so beta_d is bracketed by [0, gamma_d].
BettiResult betti_numbers_approx(const DirectedFlagComplex& K, int max_dim, double eps);

} // namespace gm
