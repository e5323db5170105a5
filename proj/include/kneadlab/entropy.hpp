#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kneadlab/interval.hpp"
#include "kneadlab/roots.hpp"
#include "kneadlab/series.hpp"
#include "kneadlab/system.hpp"

namespace kneadlab {

/// Domains of all interior-admissible semigroup words, level by level,
/// computed front-to-back: a word's domain is the one-letter pullback of its
/// tail's domain, so each node costs O(1) interval operations. This engine
/// is deliberately independent of the word enumeration in words.hpp (which
/// extends words at the back); the counting identities cross-check the two.
struct DomainLevels {
    int depth = 0;
    std::vector<std::vector<Interval>> levels;  // levels[k] = domains of words of length k+1

    const std::vector<Interval>& level(int len) const { return levels.at(static_cast<size_t>(len) - 1); }
    std::vector<long long> lap_counts() const {
        std::vector<long long> out;
        out.reserve(levels.size());
        for (const auto& l : levels) out.push_back(static_cast<long long>(l.size()));
        return out;
    }
};
DomainLevels domain_levels(const System& sys, int depth, long long node_budget = 10'000'000,
                           int threads = 1);

/// Number of level domains whose intersection with J has nonempty interior.
long long lap_count_restricted(const std::vector<Interval>& level, const Interval& J);

/// Growth-rate estimators from a lap-count sequence l(1..m). The headline
/// estimate is the geometric mean of the last ceil(m/4) one-step ratios,
/// i.e. (l(m)/l(m-k))^(1/k) with k = ceil(m/4); the plain power mean
/// l(m)^(1/m) and the last ratio l(m)/l(m-1) are reported alongside.
struct GrowthEstimate {
    double s_hat = 0.0;
    double s_hat_power = 0.0;
    double s_hat_ratio = 0.0;
    double entropy = 0.0;           // log of s_hat, floored at 0
    double fluctuation_band = 0.0;  // max |log ratio - log s_hat| over the averaged ratios
};
GrowthEstimate growth_from_laps(const std::vector<long long>& laps);

/// Boundary-word counts: counts[i-1][k-1] is the number of length-k words
/// with c_i on the boundary of their domain; s0_hat applies the growth
/// estimator per turning point and takes the maximum.
struct BoundaryGrowth {
    std::vector<std::vector<long long>> counts;
    double s0_hat = 0.0;
};
BoundaryGrowth boundary_counts(const System& sys, const DomainLevels& dl);

/// Entropy via both routes: lap-count growth, and the smallest root of the
/// kneading determinant (valid when the boundary growth is strictly slower,
/// via the gate s0_hat <= s_hat (1 - 1/m)). The two estimates are compared
/// against ten times the lap-ratio fluctuation band; disagreement and a
/// missing root at clearly positive growth are reported as flags with the
/// data, never silently dropped.
struct EntropyReport {
    int m = 0;
    int M = 0;
    std::vector<long long> laps;
    GrowthEstimate growth;
    double s0_hat = 0.0;
    bool root_applicable = false;
    std::optional<RootResult> root;
    std::optional<double> entropy_root;
    double entropy_lap = 0.0;
    bool routes_consistent = true;  // |entropy_root - entropy_lap| <= 10 * band, when both exist
    bool inconsistency = false;     // applicable, growing, but no root found
    std::string note;
};
EntropyReport entropy_report(const System& sys, int m, int M, const Rational& tol,
                             long long node_budget = 10'000'000, int threads = 1);

/// Residuals (per step k = 1..kmax-1) of the restricted-count recursion
/// l(k+1 | J) = sum over branches a of l(k | f_a(J)); all zero when exact.
std::vector<long long> l_recursion_residuals(const System& sys, const Interval& J, int kmax,
                                             long long node_budget = 10'000'000);

/// Residuals (per level k = 1..m) of the cylinder count identity: the number
/// of nonempty itinerary cylinders of length <= k (counted by the back-
/// extension engine, plus one for the empty cylinder) minus
/// 1 + l(1) + ... + l(k) from the front-extension engine.
std::vector<long long> cylinder_identity_residuals(const System& sys, int m,
                                                   long long node_budget = 10'000'000);

/// Residual series (degree cap M-1) of L = 1/2 sum_i L'_{c_i} gamma_i, the
/// generating-function form of the boundary/pre-turning pairing.
Series lap_gamma_identity_residual(const System& sys, int M, long long node_budget = 10'000'000);

/// Residuals (per length j = 1..m) of the triple-count bijection:
/// sum_i sum_{k<j} gamma_{i,k} l'_{c_i}(j-k) minus 2 l(j) (each word domain
/// has exactly two boundary points).
std::vector<long long> tri_bijection_residuals(const System& sys, int m,
                                               long long node_budget = 10'000'000);

/// Interior-admissible word counts at a single point, with a tail growth
/// rate; `thin` flags points whose count growth stays clearly below the
/// system growth rate (measure-theoretically negligible boundary points).
struct PointGrowth {
    std::vector<long long> counts;  // l_x(0..m)
    double tail_rate = 0.0;         // log-slope over the last quarter; -inf when counts vanish
    bool thin = false;
};
PointGrowth point_growth(const System& sys, const Rational& x, int m, double log_s_hat,
                         long long node_budget = 10'000'000);

}  // namespace kneadlab
