#include "kneadlab/branch.hpp"

#include <algorithm>
#include <stdexcept>

namespace kneadlab {

Branch Branch::affine(const Interval& dom, const Rational& slope, const Rational& intercept) {
    if (slope.is_zero()) throw std::invalid_argument("Branch::affine: slope must be nonzero");
    std::vector<Rational> xs{dom.lo, dom.hi};
    std::vector<Rational> ys{slope * dom.lo + intercept, slope * dom.hi + intercept};
    return Branch(std::move(xs), std::move(ys));
}

Branch Branch::table(std::vector<std::pair<Rational, Rational>> knots) {
    if (knots.size() < 2) throw std::invalid_argument("Branch::table: need at least two knots");
    std::vector<Rational> xs, ys;
    xs.reserve(knots.size());
    ys.reserve(knots.size());
    for (auto& kv : knots) {
        xs.push_back(std::move(kv.first));
        ys.push_back(std::move(kv.second));
    }
    return Branch(std::move(xs), std::move(ys));
}

Branch::Branch(std::vector<Rational> xs, std::vector<Rational> ys)
    : xs_(std::move(xs)),
      ys_(std::move(ys)),
      domain_(xs_.front(), xs_.back()),
      image_(min(ys_.front(), ys_.back()), max(ys_.front(), ys_.back())),
      orient_(ys_.back() > ys_.front() ? 1 : -1) {
    for (size_t i = 0; i + 1 < xs_.size(); ++i) {
        if (!(xs_[i] < xs_[i + 1]))
            throw std::invalid_argument("Branch: knot x-coordinates must be strictly increasing");
        bool up = ys_[i + 1] > ys_[i];
        bool strict = ys_[i + 1] != ys_[i];
        if (!strict || (up != (orient_ == 1)))
            throw std::invalid_argument("Branch: knot values must be strictly monotone in one direction");
    }
}

Rational Branch::eval(const Rational& x) const {
    if (!domain_.contains(x))
        throw std::domain_error("Branch::eval: " + x.str() + " outside domain " + domain_.str());
    // Segment lookup: largest i with xs_[i] <= x.
    size_t i = static_cast<size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    if (i > 0) --i;
    if (i + 1 >= xs_.size()) i = xs_.size() - 2;
    return ys_[i] + (ys_[i + 1] - ys_[i]) * (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
}

Rational Branch::invert(const Rational& y) const {
    if (!image_.contains(y))
        throw std::domain_error("Branch::invert: " + y.str() + " outside image " + image_.str());
    // The knot values are strictly monotone; locate the segment whose value
    // range contains y, then invert the affine piece.
    size_t i;
    if (orient_ == 1) {
        i = static_cast<size_t>(std::upper_bound(ys_.begin(), ys_.end(), y) - ys_.begin());
        if (i > 0) --i;
    } else {
        i = static_cast<size_t>(std::upper_bound(ys_.begin(), ys_.end(), y,
                                                 [](const Rational& a, const Rational& b) { return a > b; }) -
                                ys_.begin());
        if (i > 0) --i;
    }
    if (i + 1 >= xs_.size()) i = xs_.size() - 2;
    return xs_[i] + (xs_[i + 1] - xs_[i]) * (y - ys_[i]) / (ys_[i + 1] - ys_[i]);
}

OptInterval Branch::image_of(const Interval& sub) const {
    OptInterval clipped = intersect(sub, domain_);
    if (!clipped) return std::nullopt;
    Rational a = eval(clipped->lo), b = eval(clipped->hi);
    return Interval(min(a, b), max(a, b));
}

OptInterval Branch::preimage_of(const Interval& target) const {
    OptInterval clipped = intersect(target, image_);
    if (!clipped) return std::nullopt;
    Rational a = invert(clipped->lo), b = invert(clipped->hi);
    return Interval(min(a, b), max(a, b));
}

}  // namespace kneadlab
