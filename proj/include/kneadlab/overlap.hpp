#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kneadlab/rational.hpp"
#include "kneadlab/roots.hpp"
#include "kneadlab/series.hpp"
#include "kneadlab/system.hpp"

namespace kneadlab {

/// Check the two-branch overlap shape: exactly two increasing branches whose
/// domains share exactly one interior point q and whose images stay inside
/// the hull. Throws invalid_argument with the offending detail otherwise.
void validate_overlap(const System& sys);

/// Digit strings (0 = left branch, 1 = right branch) of the orbit of the
/// shared point q, of length N+1. The first favors the left branch whenever
/// both apply, the second the right branch.
std::pair<std::vector<int>, std::vector<int>> overlap_itineraries(const System& sys, int N);

enum class OverlapStatus {
    ok,
    identical_itineraries,  // the difference series vanishes to depth N
    no_root,                // the difference series has no zero on the scan range
};

/// Growth data recovered from the pair of tie-broken itineraries of q: the
/// smallest zero r of the difference series, the slope s = 1/r, and the
/// breakpoint p of the matching constant-slope pair, with its truncation
/// tail r^(N+1). `p` is the simplest rational within the tail of the raw
/// partial sum; `stability` compares r against the depth-(N-1) recomputation.
struct OverlapModel {
    OverlapStatus status = OverlapStatus::no_root;
    int N = 0;
    std::vector<int> alpha, beta;
    Series difference{0};
    std::optional<RootResult> root;
    Rational r, s;
    std::optional<double> stability;
    Rational p_raw, tail, p;
    bool anchored = false;  // left branch fixes the hull's left end, right the right end
    std::string note;
};

/// Model from explicit digit strings (sizes N+1); use this to feed
/// externally produced itineraries.
OverlapModel overlap_entropy_model(const std::vector<int>& alpha, const std::vector<int>& beta,
                                   int N, const Rational& tol);

/// Validate, compute both itineraries of q, and fit the model. `anchored`
/// reports whether the constant-slope pair is directly comparable to the
/// system (hull endpoints fixed by the outer branches).
OverlapModel overlap_model(const System& sys, int N, const Rational& tol);

}  // namespace kneadlab
