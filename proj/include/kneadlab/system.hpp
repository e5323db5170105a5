#pragma once

#include <string>
#include <vector>

#include "kneadlab/branch.hpp"
#include "kneadlab/interval.hpp"

namespace kneadlab {

/// Which one-sided limit a point carries. `exact` is the point itself;
/// `plus`/`minus` are the right/left one-sided versions x⁺ / x⁻ used for the
/// one-sided itinerary series.
enum class Side { minus, exact, plus };

struct SignedPoint {
    Rational value;
    Side side = Side::exact;
};

/// Symbolic address of a point relative to the turning-point partition:
/// either a cell P_j (j = 0 .. cell_count-1, where P_0 and the last cell are
/// the unbounded outer cells) or a turning point c_i (i = 1 .. turning
/// count). `rank` linearizes both kinds into one strictly increasing scale
/// along the real line (cells at even ranks, turning points at odd ranks).
struct Address {
    enum class Kind { cell, turning };
    Kind kind;
    int index;

    int rank() const { return kind == Kind::cell ? 2 * index : 2 * index - 1; }

    friend bool operator==(const Address& a, const Address& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    friend bool operator!=(const Address& a, const Address& b) { return !(a == b); }

    std::string str() const {
        return (kind == Kind::cell ? "P" : "c") + std::to_string(index);
    }
};

/// A finite family of strictly monotone branches together with the derived
/// partition data: turning points c_1 < ... < c_K (the distinct branch
/// domain endpoints) and cells P_0 .. P_K.
///
/// Cell indexing: P_0 = (-inf, c_1], P_j = [c_j, c_{j+1}] for 1 <= j <= K-1,
/// P_K = [c_K, +inf); there are K+1 cells for K turning points.
class System {
public:
    explicit System(std::vector<Branch> branches, bool degenerate = false, std::string name = "");

    const std::string& name() const { return name_; }
    bool degenerate_allowed() const { return degenerate_; }

    int branch_count() const { return static_cast<int>(branches_.size()); }
    const Branch& branch(int i) const { return branches_.at(static_cast<size_t>(i)); }

    /// Number K of turning points (c_1 .. c_K, 1-based accessor below).
    int turning_count() const { return static_cast<int>(turning_.size()); }
    const Rational& turning(int i) const { return turning_.at(static_cast<size_t>(i) - 1); }

    int cell_count() const { return turning_count() + 1; }

    /// Turning index of x (1-based), or 0 when x is not a turning point.
    int turning_index(const Rational& x) const;

    /// Cell index of a non-turning point (the unique cell whose interior,
    /// relative to the line, contains x). Turning points are not in any
    /// single cell; passing one throws std::logic_error.
    int cell_of(const Rational& x) const;

    /// Symbolic address of a signed point. At a turning point the side
    /// resolves to the neighboring cell; side == exact keeps the turning
    /// symbol itself.
    Address address(const SignedPoint& p) const;

    /// Convex hull of the branch domains, [c_1, c_K].
    Interval hull() const { return Interval(turning_.front(), turning_.back()); }

    /// True when cell j is a subset of branch a's domain. Unbounded outer
    /// cells are never contained in a (bounded) branch domain.
    bool cell_in_domain(int cell, int branch) const;

    /// Construction warnings (e.g. branch domains with overlapping
    /// interiors); informational, not errors.
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::vector<Branch> branches_;
    std::vector<Rational> turning_;
    bool degenerate_;
    std::string name_;
    std::vector<std::string> warnings_;
};

}  // namespace kneadlab
