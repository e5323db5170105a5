#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "kneadlab/rational.hpp"

namespace kneadlab {

/// Closed bounded interval [lo, hi] with rational endpoints, lo <= hi.
/// A degenerate interval (lo == hi) is a single point and is allowed;
/// the empty set is represented externally as std::nullopt, never as an
/// interval with lo > hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("Interval: lo > hi (" + lo.str() + " > " + hi.str() + ")");
    }

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool interior_contains(const Rational& x) const { return lo < x && x < hi; }
    bool has_interior() const { return lo < hi; }
    bool is_point() const { return lo == hi; }
    Rational length() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / Rational(2); }

    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }

    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }
};

using OptInterval = std::optional<Interval>;

/// Intersection of two closed intervals; nullopt when disjoint.
inline OptInterval intersect(const Interval& a, const Interval& b) {
    Rational lo = max(a.lo, b.lo);
    Rational hi = min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return Interval(lo, hi);
}

/// Smallest interval containing both.
inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi));
}

}  // namespace kneadlab
