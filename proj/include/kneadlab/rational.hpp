#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace kneadlab {

/// Arbitrary-precision rational number. Thin wrapper around GMP's mpq_class
/// that adds strict parsing, exact rendering, and the "simplest fraction in
/// an interval" operation needed by the root finder. Always canonical
/// (reduced, positive denominator).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<long int>(n)) {}
    Rational(long long n) { set_ll(n); }
    Rational(long long num, long long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        Rational n(num), d(den);
        v_ = n.v_ / d.v_;
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    /// Strict parser. Accepts "7", "-3/4", "1.25", "-0.5". Rejects anything
    /// else (whitespace, exponents, empty string, zero denominator).
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    /// Largest integer <= value, as a Rational.
    Rational floor() const {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return Rational(q);
    }
    /// Smallest integer >= value, as a Rational.
    Rational ceil() const {
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return Rational(q);
    }

    double to_double() const { return v_.get_d(); }

    /// Exact rendering: "a/b", or just "a" for integers.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounded to
    /// nearest (ties away from zero).
    std::string decimal_str(int digits) const;

    /// The unique fraction of smallest denominator (smallest numerator
    /// magnitude as tie-break) in the closed interval [lo, hi]. Classic
    /// continued-fraction / Stern-Brocot construction.
    static Rational simplest_in(const Rational& lo, const Rational& hi);

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;

    void set_ll(long long n) {
        // mpq_class has no long long constructor; go through a decimal string
        // only when the value does not fit in a long.
        if (n >= INT64_C(-2147483648) && n <= INT64_C(2147483647)) {
            v_ = static_cast<long int>(n);
        } else {
            v_ = mpq_class(std::to_string(n));
        }
    }
};

inline Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace kneadlab
