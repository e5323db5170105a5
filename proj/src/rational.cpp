#include "kneadlab/rational.hpp"

#include <cctype>
#include <ostream>

namespace kneadlab {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("Rational::parse: cannot parse \"" + text + "\"");
    };

    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty()) return fail();

    Rational out;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        if (dot != std::string::npos) return fail();
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        mpz_class n(num), d(den);
        if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator in \"" + text + "\"");
        mpq_class q(n, d);
        q.canonicalize();
        out = Rational(q);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot);
        std::string fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) return fail();
        if (!ip.empty() && !all_digits(ip)) return fail();
        if (!fp.empty() && !all_digits(fp)) return fail();
        mpz_class n(ip.empty() ? std::string("0") : ip);
        mpz_class scale = 1;
        for (char c : fp) {
            n = n * 10 + (c - '0');
            scale *= 10;
        }
        mpq_class q(n, scale);
        q.canonicalize();
        out = Rational(q);
    } else {
        if (!all_digits(s)) return fail();
        out = Rational(mpz_class(s));
    }
    return negative ? -out : out;
}

std::string Rational::decimal_str(int digits) const {
    if (digits < 0) throw std::invalid_argument("Rational::decimal_str: negative digit count");
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;

    // Round |v| * scale to nearest integer, ties away from zero.
    mpz_class num = ::abs(numerator()) * scale;
    mpz_class den = denominator();
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;

    mpz_class whole = q / scale;
    mpz_class frac = q % scale;
    std::string out = (sign() < 0 && q != 0) ? "-" : "";
    out += whole.get_str();
    if (digits > 0) {
        std::string f = frac.get_str();
        out += "." + std::string(digits - f.size(), '0') + f;
    }
    return out;
}

Rational Rational::simplest_in(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("Rational::simplest_in: empty interval");
    // Integer in range: pick the one nearest zero (uniquely defined).
    Rational zero(0);
    if (lo <= zero && zero <= hi) return zero;
    if (lo > zero) {
        Rational c = lo.ceil();
        if (c <= hi) return c;
        // floor(lo) == floor(hi); recurse on reciprocal fractional parts.
        Rational n = lo.floor();
        return n + Rational(1) / simplest_in(Rational(1) / (hi - n), Rational(1) / (lo - n));
    }
    // hi < 0: mirror the positive case.
    return -simplest_in(-hi, -lo);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace kneadlab
