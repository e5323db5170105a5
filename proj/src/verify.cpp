#include "kneadlab/verify.hpp"

#include <random>
#include <stdexcept>

#include "kneadlab/entropy.hpp"
#include "kneadlab/kneading.hpp"

namespace kneadlab {

namespace {

// Raw modulo on the generator output: slightly biased, but identical on
// every platform, which matters more here than uniformity.
long long draw(std::mt19937_64& gen, long long lo, long long hi) {
    return lo + static_cast<long long>(gen() % static_cast<unsigned long long>(hi - lo + 1));
}

Rational random_interior_point(std::mt19937_64& gen, const Interval& hull) {
    long long den = draw(gen, 11, 211);
    long long num = draw(gen, 1, den - 1);
    return hull.lo + (hull.hi - hull.lo) * Rational(num, den);
}

struct Sampler {
    std::mt19937_64 gen;
    const System& sys;
    int depth;
    long long budget;
    long long rejected = 0;

    // A point whose forward words never reach a turning point within the
    // probe depth; the partition-of-unity identity needs exactly that.
    Rational non_preturning_point() {
        for (int attempt = 0; attempt < 400; ++attempt) {
            Rational x = random_interior_point(gen, sys.hull());
            if (!find_preturning(sys, x, depth, budget)) return x;
            ++rejected;
        }
        throw std::runtime_error("could not sample a point avoiding the turning orbits");
    }
};

std::string plural(long long n, const char* what) {
    return std::to_string(n) + " " + what + (n == 1 ? "" : "s");
}

}  // namespace

std::vector<CheckResult> run_identity_suite(const System& sys, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    Sampler sampler{std::mt19937_64(opt.seed), sys, opt.M, opt.node_budget};

    {
        CheckResult c{"partition of unity", true, ""};
        try {
            for (int i = 0; i < opt.points && c.pass; ++i) {
                Rational x = sampler.non_preturning_point();
                Series r = unity_identity_residual(sys, x, opt.M, opt.node_budget);
                if (!r.is_zero()) {
                    c.pass = false;
                    c.detail = "residual " + r.str() + " at x = " + x.str();
                }
            }
            if (c.pass)
                c.detail = plural(opt.points, "point") + " exact, " +
                           plural(sampler.rejected, "turning-orbit rejection");
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = e.what();
        }
        out.push_back(c);
    }

    KneadingMatrix km = kneading_matrix(sys, opt.M, opt.node_budget);
    {
        CheckResult c{"column relation", true, ""};
        for (const Series& row : column_relation_residual(km)) {
            if (!row.is_zero()) {
                c.pass = false;
                c.detail = "residual " + row.str();
                break;
            }
        }
        if (c.pass) c.detail = plural(sys.turning_count(), "row") + " exactly zero";
        out.push_back(c);
    }
    {
        CheckResult c{"determinant column independence", true, ""};
        Series ref = kneading_determinant(km, 0);
        for (int j = 1; j <= sys.turning_count(); ++j) {
            Series dj = kneading_determinant(km, j);
            if (dj != ref) {
                c.pass = false;
                c.detail = "column " + std::to_string(j) + " gives " + dj.str() + ", column 0 gives " +
                           ref.str();
                break;
            }
        }
        if (c.pass)
            c.detail = plural(sys.turning_count() + 1, "column") + " agree: " + ref.str();
        out.push_back(c);
    }
    {
        CheckResult c{"jump identity", true, ""};
        for (int i = 0; i < opt.intervals && c.pass; ++i) {
            Rational a = random_interior_point(sampler.gen, sys.hull());
            Rational b = random_interior_point(sampler.gen, sys.hull());
            while (b == a) b = random_interior_point(sampler.gen, sys.hull());
            Interval J{min(a, b), max(a, b)};
            VectorSeries r = jump_identity_residual(sys, J, opt.M, opt.node_budget);
            VectorSeries zero(sys.cell_count(), opt.M);
            if (r != zero) {
                c.pass = false;
                c.detail = "residual " + r.str() + " on " + J.str();
            }
        }
        if (c.pass) c.detail = plural(opt.intervals, "interval") + " exact";
        out.push_back(c);
    }
    {
        CheckResult c{"restricted-count recursion", true, ""};
        std::vector<Interval> js{sys.hull()};
        for (int i = 0; i < 2; ++i) {
            Rational a = random_interior_point(sampler.gen, sys.hull());
            Rational b = random_interior_point(sampler.gen, sys.hull());
            while (b == a) b = random_interior_point(sampler.gen, sys.hull());
            js.push_back(Interval{min(a, b), max(a, b)});
        }
        for (const Interval& J : js) {
            for (long long r : l_recursion_residuals(sys, J, opt.m, opt.node_budget)) {
                if (r != 0) {
                    c.pass = false;
                    c.detail = "residual " + std::to_string(r) + " on " + J.str();
                    break;
                }
            }
            if (!c.pass) break;
        }
        if (c.pass)
            c.detail = plural(static_cast<long long>(js.size()), "interval") + " exact to depth " +
                       std::to_string(opt.m);
        out.push_back(c);
    }
    {
        CheckResult c{"cylinder count identity", true, ""};
        auto res = cylinder_identity_residuals(sys, opt.cylinder_depth, opt.node_budget);
        for (size_t k = 0; k < res.size(); ++k) {
            if (res[k] != 0) {
                c.pass = false;
                c.detail = "the two enumeration engines disagree by " + std::to_string(res[k]) +
                           " at depth " + std::to_string(k + 1);
                break;
            }
        }
        if (c.pass) c.detail = "both engines agree to depth " + std::to_string(opt.cylinder_depth);
        out.push_back(c);
    }
    {
        CheckResult c{"boundary pairing series", true, ""};
        Series r = lap_gamma_identity_residual(sys, opt.M, opt.node_budget);
        if (!r.is_zero()) {
            c.pass = false;
            c.detail = "residual " + r.str();
        } else {
            c.detail = "exact through degree " + std::to_string(opt.M - 1);
        }
        out.push_back(c);
    }
    {
        CheckResult c{"triple-count bijection", true, ""};
        auto res = tri_bijection_residuals(sys, opt.tri_depth, opt.node_budget);
        for (size_t j = 0; j < res.size(); ++j) {
            if (res[j] != 0) {
                c.pass = false;
                c.detail = "count mismatch " + std::to_string(res[j]) + " at length " +
                           std::to_string(j + 1);
                break;
            }
        }
        if (c.pass) c.detail = "exact for lengths 1.." + std::to_string(opt.tri_depth);
        out.push_back(c);
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& c : results)
        if (!c.pass) return false;
    return true;
}

}  // namespace kneadlab
