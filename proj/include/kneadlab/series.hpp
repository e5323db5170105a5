#pragma once

#include <string>
#include <vector>

#include "kneadlab/rational.hpp"

namespace kneadlab {

/// Formal power series in t with rational coefficients, truncated at a fixed
/// degree cap: coefficients for t^0 .. t^cap are stored, everything above is
/// discarded. All binary operations require equal caps and throw
/// std::invalid_argument otherwise -- mixing truncation levels silently is a
/// recipe for wrong identities.
class Series {
public:
    explicit Series(int degree_cap) : c_(static_cast<size_t>(check_cap(degree_cap)) + 1) {}
    explicit Series(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("Series: empty coefficient vector");
    }

    static Series constant(const Rational& value, int degree_cap) {
        Series s(degree_cap);
        s.c_[0] = value;
        return s;
    }
    /// The monomial t (zero when cap is 0, by truncation).
    static Series t(int degree_cap) {
        Series s(degree_cap);
        if (degree_cap >= 1) s.c_[1] = Rational(1);
        return s;
    }

    int degree_cap() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(int k) const { return c_.at(static_cast<size_t>(k)); }
    Rational& coeff(int k) { return c_.at(static_cast<size_t>(k)); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Degree of the lowest nonzero coefficient, or -1 for the zero series.
    int valuation() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return static_cast<int>(k);
        return -1;
    }

    Series operator-() const {
        Series out = *this;
        for (auto& x : out.c_) x = -x;
        return out;
    }

    Series& operator+=(const Series& o) {
        check_same_cap(o);
        for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Series& operator-=(const Series& o) {
        check_same_cap(o);
        for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    /// Truncated Cauchy product.
    friend Series operator*(const Series& a, const Series& b) {
        a.check_same_cap(b);
        Series out(a.degree_cap());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; i + j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                out.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return out;
    }

    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const Rational& r) const {
        Series out = *this;
        for (auto& x : out.c_) x *= r;
        return out;
    }

    /// Multiplicative inverse as a truncated series. Requires an invertible
    /// constant term (c0 != 0); throws std::domain_error otherwise.
    Series inverse() const;

    /// Exact evaluation at a rational point (Horner).
    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    /// Human-readable polynomial text, e.g. "1 - 2t + t^3", "(1/2)t^2 - 1".
    std::string str() const;

private:
    std::vector<Rational> c_;

    static int check_cap(int cap) {
        if (cap < 0) throw std::invalid_argument("Series: negative degree cap");
        return cap;
    }
    void check_same_cap(const Series& o) const {
        if (c_.size() != o.c_.size())
            throw std::invalid_argument("Series: degree cap mismatch (" + std::to_string(degree_cap()) +
                                        " vs " + std::to_string(o.degree_cap()) + ")");
    }
};

/// Determinant of a square matrix of truncated series, all with one common
/// degree cap. Cofactor expansion up to dimension 5; fraction-free
/// (division-avoiding) elimination above that.
Series series_det(const std::vector<std::vector<Series>>& m);

/// Formal series whose coefficients are vectors indexed by the cells of a
/// partition (one slot per cell). Used for address-valued itinerary series:
/// the coefficient of t^k is a formal linear combination of cell symbols.
class VectorSeries {
public:
    VectorSeries(int cells, int degree_cap)
        : cells_(cells),
          deg_(static_cast<size_t>(degree_cap) + 1, std::vector<Rational>(static_cast<size_t>(cells))) {
        if (cells <= 0) throw std::invalid_argument("VectorSeries: need at least one cell");
        if (degree_cap < 0) throw std::invalid_argument("VectorSeries: negative degree cap");
    }

    int cells() const { return cells_; }
    int degree_cap() const { return static_cast<int>(deg_.size()) - 1; }

    const Rational& at(int k, int cell) const { return deg_.at(static_cast<size_t>(k)).at(static_cast<size_t>(cell)); }
    Rational& at(int k, int cell) { return deg_.at(static_cast<size_t>(k)).at(static_cast<size_t>(cell)); }

    bool is_zero() const {
        for (const auto& row : deg_)
            for (const auto& x : row)
                if (!x.is_zero()) return false;
        return true;
    }

    VectorSeries operator-() const {
        VectorSeries out = *this;
        for (auto& row : out.deg_)
            for (auto& x : row) x = -x;
        return out;
    }
    VectorSeries& operator+=(const VectorSeries& o) {
        check_shape(o);
        for (size_t k = 0; k < deg_.size(); ++k)
            for (size_t j = 0; j < deg_[k].size(); ++j) deg_[k][j] += o.deg_[k][j];
        return *this;
    }
    VectorSeries& operator-=(const VectorSeries& o) {
        check_shape(o);
        for (size_t k = 0; k < deg_.size(); ++k)
            for (size_t j = 0; j < deg_[k].size(); ++j) deg_[k][j] -= o.deg_[k][j];
        return *this;
    }
    friend VectorSeries operator+(VectorSeries a, const VectorSeries& b) { return a += b; }
    friend VectorSeries operator-(VectorSeries a, const VectorSeries& b) { return a -= b; }

    friend bool operator==(const VectorSeries& a, const VectorSeries& b) {
        return a.cells_ == b.cells_ && a.deg_ == b.deg_;
    }
    friend bool operator!=(const VectorSeries& a, const VectorSeries& b) { return !(a == b); }

    /// Scalar series component carried by one cell symbol.
    Series component(int cell) const {
        Series out(degree_cap());
        for (size_t k = 0; k < deg_.size(); ++k) out.coeff(static_cast<int>(k)) = deg_[k].at(static_cast<size_t>(cell));
        return out;
    }

    /// Truncated product with a scalar series.
    VectorSeries times(const Series& s) const {
        if (s.degree_cap() != degree_cap())
            throw std::invalid_argument("VectorSeries::times: degree cap mismatch");
        VectorSeries out(cells_, degree_cap());
        for (size_t i = 0; i < deg_.size(); ++i) {
            for (size_t k = 0; i + k < out.deg_.size(); ++k) {
                const Rational& c = s.coeff(static_cast<int>(k));
                if (c.is_zero()) continue;
                for (size_t j = 0; j < deg_[i].size(); ++j) {
                    if (deg_[i][j].is_zero()) continue;
                    out.deg_[i + k][j] += deg_[i][j] * c;
                }
            }
        }
        return out;
    }

    /// Three-way order comparison: compare degree by degree; within the first
    /// differing degree, the sign of the difference is the sign of its
    /// highest-index nonzero cell coordinate (cell symbols are formally
    /// increasing with the cell index). Returns -1, 0, or +1.
    static int compare(const VectorSeries& a, const VectorSeries& b) {
        a.check_shape(b);
        for (size_t k = 0; k < a.deg_.size(); ++k) {
            for (size_t j = a.deg_[k].size(); j-- > 0;) {
                Rational d = b.deg_[k][j] - a.deg_[k][j];
                if (!d.is_zero()) return d.sign() > 0 ? -1 : 1;
            }
        }
        return 0;
    }

    std::string str() const;

private:
    int cells_;
    std::vector<std::vector<Rational>> deg_;  // deg_[k][cell] = coefficient of cell symbol at t^k

    void check_shape(const VectorSeries& o) const {
        if (cells_ != o.cells_ || deg_.size() != o.deg_.size())
            throw std::invalid_argument("VectorSeries: shape mismatch");
    }
};

}  // namespace kneadlab
