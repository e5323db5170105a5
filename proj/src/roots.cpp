#include "kneadlab/roots.hpp"

#include <stdexcept>

namespace kneadlab {

std::optional<RootResult> smallest_root_in_unit_interval(const Series& p, const Rational& lo,
                                                         const Rational& hi, const Rational& tol,
                                                         int grid_steps) {
    if (!(Rational(0) < lo && lo < hi && hi <= Rational(1)))
        throw std::invalid_argument("smallest_root_in_unit_interval: need 0 < lo < hi <= 1");
    if (tol.sign() <= 0) throw std::invalid_argument("smallest_root_in_unit_interval: tol must be positive");
    if (grid_steps < 1) throw std::invalid_argument("smallest_root_in_unit_interval: grid_steps must be >= 1");
    if (p.is_zero()) throw std::domain_error("smallest_root_in_unit_interval: degenerate (identically zero) series");

    Rational step = (hi - lo) / Rational(grid_steps);
    Rational prev_x = lo;
    Rational prev_v = p.eval(lo);
    if (prev_v.is_zero()) return RootResult{lo, lo, lo, true};

    for (int k = 1; k <= grid_steps; ++k) {
        Rational x = (k == grid_steps) ? hi : lo + step * Rational(k);
        Rational v = p.eval(x);
        if (v.is_zero()) return RootResult{x, x, x, true};
        if (v.sign() != prev_v.sign()) {
            // Bisect [prev_x, x] down to the tolerance, keeping the sign change.
            Rational a = prev_x, b = x;
            int sign_a = prev_v.sign();
            while (b - a > tol / Rational(2)) {
                Rational mid = (a + b) / Rational(2);
                Rational vm = p.eval(mid);
                if (vm.is_zero()) return RootResult{mid, mid, mid, true};
                if (vm.sign() == sign_a)
                    a = mid;
                else
                    b = mid;
            }
            return RootResult{Rational::simplest_in(a, b), a, b, false};
        }
        prev_x = x;
        prev_v = v;
    }
    return std::nullopt;
}

}  // namespace kneadlab
