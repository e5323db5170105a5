#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kneadlab/interval.hpp"
#include "kneadlab/system.hpp"

namespace kneadlab {

/// One generator letter: branch index 1..n, applied either forward (a3) or
/// as the inverse branch (A3). Words act by composition with the FIRST
/// letter applied FIRST: the word "a1.a2" sends x to f2(f1(x)).
struct Letter {
    int index;
    bool inverse;

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.index == b.index && a.inverse == b.inverse;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    /// Canonical alphabet order a1 < ... < an < A1 < ... < An.
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.inverse != b.inverse) return !a.inverse;
        return a.index < b.index;
    }
};

using Word = std::vector<Letter>;

/// Serialize as "a1.a3.A2"; the empty word prints as "e".
std::string word_str(const Word& w);

/// Parse the dotted form; validates letter indices against branch_count.
Word parse_word(const std::string& text, int branch_count);

bool is_reduced(const Word& w);
/// Iteratively cancel adjacent inverse pairs.
Word reduced(Word w);

/// Membership in the positive semigroup S (all letters forward; the empty
/// word counts) and its inverse S^{-1}.
bool in_semigroup(const Word& w);
bool in_inverse_semigroup(const Word& w);

/// Orientation character: the product of branch orientations over the
/// letters (an inverse letter carries the same sign as its branch).
int sigma(const System& sys, const Word& w);

/// Level-lexicographic order: by length, then letter-wise canonical.
bool word_less(const Word& a, const Word& b);

/// Domain of the composite map f_w, computed by a backward pullback pass.
/// The empty word has the whole line as domain (full_line set, domain
/// unused); otherwise domain == nullopt means f_w is nowhere defined.
struct DomainResult {
    bool full_line = false;
    OptInterval domain;
};
DomainResult word_domain(const System& sys, const Word& w);

/// Apply a word to a signed point, one letter at a time, with one-sided
/// admissibility at domain endpoints (a right-sided point may sit on a left
/// domain endpoint but not on a right one, and symmetrically). On failure,
/// `prefix_len` is the number of letters successfully applied.
struct PointStep {
    bool ok = false;
    size_t prefix_len = 0;
    SignedPoint point;
};
PointStep apply_word(const System& sys, const Word& w, SignedPoint start);

/// Thrown when an enumeration would exceed its node budget. Carries the
/// number of fully completed levels so callers can keep partial results.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(size_t completed_levels, long long budget)
        : std::runtime_error("node budget of " + std::to_string(budget) + " exceeded after " +
                             std::to_string(completed_levels) + " completed levels"),
          completed_levels_(completed_levels) {}
    size_t completed_levels() const { return completed_levels_; }

private:
    size_t completed_levels_;
};

struct WordDomain {
    Word word;
    Interval domain;  // always has nonempty interior by construction
};

/// All semigroup words of length 1..m whose composite map has a domain with
/// nonempty interior, grouped by length (levels[k] = words of length k+1) in
/// canonical word order, each with its exact domain. counts[k] is the lap
/// count for length k+1.
struct LevelEnumeration {
    std::vector<std::vector<WordDomain>> levels;
    std::vector<long long> counts;
};
LevelEnumeration enumerate_admissible(const System& sys, int m, long long node_budget = 10'000'000,
                                      int threads = 1);

/// All semigroup words of length 0..m admissible at the signed point p,
/// grouped by length, with the image point and an interior flag (whether p
/// lies in the interior of the word's domain). For one-sided p every
/// admissible word is interior by construction.
struct PointWord {
    Word word;
    SignedPoint point;
    bool interior = true;
};
std::vector<std::vector<PointWord>> admissible_for_point(const System& sys, const SignedPoint& p, int m,
                                                         long long node_budget = 10'000'000);

}  // namespace kneadlab
