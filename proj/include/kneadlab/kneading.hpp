#pragma once

#include <optional>
#include <vector>

#include "kneadlab/interval.hpp"
#include "kneadlab/series.hpp"
#include "kneadlab/system.hpp"
#include "kneadlab/words.hpp"

namespace kneadlab {

/// Invariant coordinate of a signed point: the vector-valued series
///   theta(p) = sum over admissible words g (with interior-nonempty domain)
///              of sigma(f_g) * [address of f_g(p)] * t^{|g|},
/// truncated at degree M. The address vector lives over the cells; at a
/// turning point the exact-side address contributes half to each neighbor
/// cell, a one-sided address resolves to the neighbor on that side.
VectorSeries theta(const System& sys, const SignedPoint& p, int M, long long node_budget = 10'000'000);

/// Cell polynomials e_j(t) = 1 - sum of sigma(f_a) t over the branches whose
/// domain contains cell j; the unbounded outer cells get the constant 1.
std::vector<Series> cell_polys(const System& sys, int M);

/// Kneading increments: jump of theta at each turning point,
/// theta(c_i plus) - theta(c_i minus), i = 1..K.
std::vector<VectorSeries> kneading_increments(const System& sys, int M, long long node_budget = 10'000'000);

/// The increments written out in the cell basis: K rows (turning points),
/// K+1 columns (cells), entries truncated series; plus the cell polynomials.
struct KneadingMatrix {
    int M = 0;
    std::vector<std::vector<Series>> n;  // n[i-1][j] = coefficient of cell j in increment i
    std::vector<Series> e;               // cell polynomials, one per cell
};
KneadingMatrix kneading_matrix(const System& sys, int M, long long node_budget = 10'000'000);

/// Kneading determinant: delete one column j of the matrix, take the
/// determinant of the K x K rest, normalize by (-1)^j / e_j. The result is
/// independent of j; with delete_column unset every column is computed and
/// cross-checked (throwing std::logic_error on mismatch). Columns whose e_j
/// has zero constant term cannot be normalized and are skipped in the scan.
Series kneading_determinant(const System& sys, int M, std::optional<int> delete_column = std::nullopt,
                            long long node_budget = 10'000'000);
/// Same, starting from an already computed matrix.
Series kneading_determinant(const KneadingMatrix& km, std::optional<int> delete_column = std::nullopt);

/// Earliest witness that x is a pre-turning point: an admissible word g of
/// length <= depth (possibly empty) with f_g(x) a turning point and no
/// shorter prefix doing so. nullopt when x is not pre-turning to this depth.
struct PreTurningWitness {
    Word word;
    int turning = 0;  // 1-based index of the turning point hit
};
std::optional<PreTurningWitness> find_preturning(const System& sys, const Rational& x, int depth,
                                                 long long node_budget = 10'000'000);

/// Residual of the partition-of-unity identity sum_j theta_j(x) e_j(t) - 1
/// (a scalar series, zero mod t^{M+1} for non-pre-turning x). Throws
/// std::invalid_argument when x is pre-turning within depth M, naming the
/// witness word: the identity does not apply at such points.
Series unity_identity_residual(const System& sys, const Rational& x, int M,
                               long long node_budget = 10'000'000);

/// Residual of the column relation sum_j e_j(t) * Gamma_j = 0, where Gamma_j
/// is the j-th column of the kneading matrix (a K-vector of series). The
/// result is one series per row; all zero when the relation holds.
std::vector<Series> column_relation_residual(const KneadingMatrix& km);

/// Pre-turning pair counts: gamma[i] has coefficient at t^k equal to the
/// number of pairs (g, x) with |g| = k, x in J, f_g(x) = c_i, and no proper
/// prefix of g mapping x to a turning point (the empty word pair counts c_i
/// itself when it lies in J). J = nullopt means the whole line. Words must
/// have interior-nonempty domains. Optionally collects the pairs.
struct PreTurningPair {
    Word word;
    Rational x;
};
struct GammaCounts {
    int depth = 0;
    std::vector<Series> gamma;                            // one per turning point, degree cap = depth
    std::vector<std::vector<PreTurningPair>> pairs;       // per turning point (when collected)
};
GammaCounts pre_turning_pairs(const System& sys, const OptInterval& J, int depth, bool collect = false,
                              long long node_budget = 10'000'000);

/// Residual of the jump identity
///   theta(b plus) - theta(a minus) = sum_i increment_i * gamma_i([a, b])
/// truncated at degree M; zero when the identity holds.
VectorSeries jump_identity_residual(const System& sys, const Interval& J, int M,
                                    long long node_budget = 10'000'000);

}  // namespace kneadlab
