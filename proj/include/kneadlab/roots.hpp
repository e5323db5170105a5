#pragma once

#include <optional>

#include "kneadlab/rational.hpp"
#include "kneadlab/series.hpp"

namespace kneadlab {

/// Result of a bracketed root search. `root` is exact when the search hit a
/// point with p(root) == 0; otherwise it is the simplest rational inside the
/// final bracket (whose width is at most the requested tolerance).
struct RootResult {
    Rational root;
    Rational bracket_lo;
    Rational bracket_hi;
    bool exact = false;
};

/// Smallest root of the polynomial p (a truncated series evaluated exactly)
/// in [lo, hi], located by an exact sign scan over a uniform grid followed by
/// bisection. Returns nullopt when no sign change (and no exact zero) is
/// found on the grid. Throws std::domain_error on the zero series and
/// std::invalid_argument unless 0 < lo < hi <= 1 and tol > 0.
std::optional<RootResult> smallest_root_in_unit_interval(const Series& p, const Rational& lo,
                                                         const Rational& hi, const Rational& tol,
                                                         int grid_steps = 1024);

}  // namespace kneadlab
