#pragma once

#include <utility>
#include <vector>

#include "kneadlab/interval.hpp"
#include "kneadlab/rational.hpp"

namespace kneadlab {

/// One strictly monotone continuous map on a closed interval, represented as
/// a piecewise-linear interpolation through rational knots (an affine branch
/// is the two-knot special case). Strict monotonicity of the knot values is
/// enforced at construction.
class Branch {
public:
    /// Affine branch x -> slope*x + intercept restricted to `dom`.
    /// slope must be nonzero.
    static Branch affine(const Interval& dom, const Rational& slope, const Rational& intercept);

    /// Piecewise-linear branch through the given (x, y) knots. Needs at
    /// least two knots, strictly increasing x, strictly monotone y.
    static Branch table(std::vector<std::pair<Rational, Rational>> knots);

    const Interval& domain() const { return domain_; }
    const Interval& image() const { return image_; }
    /// +1 increasing, -1 decreasing.
    int orientation() const { return orient_; }

    /// Evaluate at x; throws std::domain_error when x is outside the domain.
    Rational eval(const Rational& x) const;

    /// Preimage of a point under the branch (the inverse map); throws
    /// std::domain_error when y is outside the image.
    Rational invert(const Rational& y) const;

    /// Image of sub ∩ domain; nullopt when they are disjoint.
    OptInterval image_of(const Interval& sub) const;

    /// {x in domain : f(x) in target}; nullopt when empty.
    OptInterval preimage_of(const Interval& target) const;

    bool is_affine() const { return xs_.size() == 2; }
    size_t knot_count() const { return xs_.size(); }

private:
    Branch(std::vector<Rational> xs, std::vector<Rational> ys);

    std::vector<Rational> xs_, ys_;
    Interval domain_;
    Interval image_;
    int orient_;
};

}  // namespace kneadlab
