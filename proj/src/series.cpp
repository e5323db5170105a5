#include "kneadlab/series.hpp"

#include <cstddef>
#include <stdexcept>

namespace kneadlab {

Series Series::inverse() const {
    if (c_[0].is_zero())
        throw std::domain_error("Series::inverse: constant term is zero, series not invertible");
    Series out(degree_cap());
    Rational c0inv = Rational(1) / c_[0];
    out.c_[0] = c0inv;
    // Standard long-division recurrence: b_k = -(1/a_0) * sum_{j=1..k} a_j b_{k-j}.
    for (size_t k = 1; k < c_.size(); ++k) {
        Rational acc(0);
        for (size_t j = 1; j <= k; ++j) {
            if (c_[j].is_zero()) continue;
            acc += c_[j] * out.c_[k - j];
        }
        out.c_[k] = -c0inv * acc;
    }
    return out;
}

namespace {

std::string coeff_term(const Rational& c, int k, bool leading) {
    Rational a = c.abs();
    std::string sign = leading ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ");
    std::string mag;
    if (k == 0) {
        mag = a.str();
    } else {
        std::string power = (k == 1) ? "t" : "t^" + std::to_string(k);
        if (a == Rational(1))
            mag = power;
        else if (a.is_integer())
            mag = a.str() + power;
        else
            mag = "(" + a.str() + ")" + power;
    }
    return sign + mag;
}

}  // namespace

std::string Series::str() const {
    std::string out;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        out += coeff_term(c_[k], static_cast<int>(k), out.empty());
    }
    return out.empty() ? "0" : out;
}

std::string VectorSeries::str() const {
    std::string out;
    for (int k = 0; k <= degree_cap(); ++k) {
        std::string deg;
        for (int j = 0; j < cells(); ++j) {
            const Rational& c = at(k, j);
            if (c.is_zero()) continue;
            if (!deg.empty()) deg += c.sign() < 0 ? " - " : " + ";
            else if (c.sign() < 0) deg += "-";
            Rational a = c.abs();
            if (a != Rational(1)) deg += (a.is_integer() ? a.str() : "(" + a.str() + ")") + "*";
            deg += "P" + std::to_string(j);
        }
        if (deg.empty()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + deg + ")";
        if (k == 1) out += " t";
        else if (k > 1) out += " t^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

namespace {

// Cofactor expansion along the first column. Fine up to dimension 5
// (5! = 120 terms); dimensions above that use fraction-free elimination.
Series det_cofactor(const std::vector<std::vector<Series>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    Series acc(m[0][0].degree_cap());
    for (size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<Series>> minor;
        minor.reserve(n - 1);
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Series> row;
            row.reserve(n - 1);
            for (size_t c = 1; c < n; ++c) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Series term = m[i][0] * det_cofactor(minor);
        if (i % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// Dense polynomial helpers for the elimination path. Truncated series
// entries are polynomials; doing the elimination at full degree and
// truncating only the final determinant keeps every retained coefficient
// exact (no division-by-truncated-series pitfalls).
using Poly = std::vector<Rational>;  // coefficient k = t^k, trailing zeros trimmed

void ptrim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly pmul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    ptrim(out);
    return out;
}

Poly psub(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ptrim(a);
    return a;
}

// Exact polynomial division; the Bareiss invariant guarantees a zero
// remainder, which we assert rather than assume.
Poly pdiv_exact(Poly num, const Poly& den) {
    if (den.empty()) throw std::domain_error("series_det: exact division by zero polynomial");
    if (num.empty()) return {};
    if (num.size() < den.size())
        throw std::logic_error("series_det: exact division underflow (fraction-free invariant broken)");
    Poly q(num.size() - den.size() + 1);
    Rational lead_inv = Rational(1) / den.back();
    for (size_t k = q.size(); k-- > 0;) {
        size_t top = k + den.size() - 1;
        Rational c = (top < num.size() ? num[top] : Rational(0)) * lead_inv;
        q[k] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    ptrim(num);
    if (!num.empty()) throw std::logic_error("series_det: nonzero remainder in fraction-free elimination");
    ptrim(q);
    return q;
}

Series det_bareiss(const std::vector<std::vector<Series>>& m) {
    size_t n = m.size();
    int cap = m[0][0].degree_cap();
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Poly p = m[i][j].coeffs();
            ptrim(p);
            a[i][j] = std::move(p);
        }

    Poly prev{Rational(1)};
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && a[pivot][k].empty()) ++pivot;
        if (pivot == n) return Series(cap);  // zero pivot column -> zero determinant
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = pdiv_exact(psub(pmul(a[i][j], a[k][k]), pmul(a[i][k], a[k][j])), prev);
            a[i][k].clear();
        }
        prev = a[k][k];
    }

    Series det(cap);
    const Poly& d = a[n - 1][n - 1];
    for (size_t k = 0; k < d.size() && k <= static_cast<size_t>(cap); ++k) det.coeff(static_cast<int>(k)) = d[k];
    if (sign < 0) det = -det;
    return det;
}

}  // namespace

Series series_det(const std::vector<std::vector<Series>>& m) {
    size_t n = m.size();
    if (n == 0) throw std::invalid_argument("series_det: empty matrix");
    int cap = m[0].empty() ? -1 : m[0][0].degree_cap();
    for (const auto& row : m) {
        if (row.size() != n) throw std::invalid_argument("series_det: matrix is not square");
        for (const auto& e : row)
            if (e.degree_cap() != cap) throw std::invalid_argument("series_det: degree cap mismatch");
    }
    if (n <= 5) return det_cofactor(m);
    return det_bareiss(m);
}

}  // namespace kneadlab
