#pragma once

#include <string>
#include <vector>

#include "kneadlab/entropy.hpp"
#include "kneadlab/interval.hpp"
#include "kneadlab/rational.hpp"
#include "kneadlab/system.hpp"

namespace kneadlab {

/// Estimate of the normalized word-count measure of an interval: the
/// fraction of depth-m word domains meeting J with nonempty interior.
struct MeasureEstimate {
    Interval J{Rational(0), Rational(0)};
    int depth = 0;
    double value = 0.0;  // ratio at the deepest level
    double lower = 0.0;  // min/max of the ratio over the last three levels
    double upper = 0.0;
    double abel = 0.0;  // Abel-style resummation extrapolated toward t = 1/s_hat
    bool exact_one = false;
    std::vector<std::string> warnings;
};

/// One instance of the self-similarity relation
///   measure(J) = (1/s) sum_a measure(f_a(J)),
/// with the estimator's own uncertainty: the level-to-level spread of each
/// estimate, two boundary domains' worth of counting slack per estimate, and
/// the spread between the two growth estimators.
struct SelfSimilarityCheck {
    Interval J{Rational(0), Rational(0)};
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double bracket = 0.0;
    bool within = false;
};

struct LinearizeBranchModel {
    int branch = 0;  // 1-based
    int sign = 0;    // branch orientation; the model slope is sign * s
    double y_lo = 0.0, y_hi = 0.0;  // phi of the branch domain endpoints
    double v_lo = 0.0;              // phi of the image of the left endpoint (the anchor)
    double residual = 0.0;
    bool degenerate = false;  // phi collapses the branch domain
};

/// Constant-slope model: on phi-coordinates every branch becomes
/// y -> v_lo + sign * s * (y - y_lo), with the single slope magnitude s
/// stored once. `max_residual` is the worst deviation of phi(f_a(x)) from
/// the model over a uniform grid per branch.
struct LinearizeReport {
    double s = 0.0;
    bool from_root = false;  // s came from the determinant root rather than lap growth
    std::vector<LinearizeBranchModel> branches;
    double max_residual = 0.0;
    int grid_points = 0;
    std::vector<std::string> warnings;
};

/// Sorted per-level domain endpoints. A domain D meets J with interior iff
/// D.lo < J.hi and J.lo < D.hi, so every restricted count is two binary
/// searches. The context keeps a pointer to the system; it must not outlive
/// it.
class MeasureContext {
public:
    MeasureContext(const System& sys, int depth, long long node_budget = 10'000'000,
                   int threads = 1);

    const System& system() const { return *sys_; }
    int depth() const { return depth_; }
    const GrowthEstimate& growth() const { return growth_; }

    long long total(int level) const;
    long long restricted(int level, const Interval& J) const;

    /// Normalized cumulative distribution at the deepest level: the fraction
    /// of domains with lo < x. Exactly 0 at the left end of the hull and
    /// exactly 1 at the right end.
    double phi(const Rational& x) const;

    MeasureEstimate estimate(const Interval& J, bool endpoint_warnings = true) const;
    SelfSimilarityCheck self_similarity(const Interval& J) const;

private:
    const System* sys_;
    int depth_;
    GrowthEstimate growth_;
    std::vector<long long> laps_;
    std::vector<std::vector<Rational>> lo_, hi_;
};

/// Fit the constant-slope model in phi-coordinates and measure how far the
/// system is from it on a per-branch grid. The slope magnitude is taken from
/// the determinant root when the entropy report certifies one, else from lap
/// growth.
LinearizeReport linearize(const System& sys, int m, int M, int grid_points, const Rational& tol,
                          long long node_budget = 10'000'000, int threads = 1);

}  // namespace kneadlab
