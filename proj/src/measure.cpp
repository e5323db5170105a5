#include "kneadlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kneadlab {

MeasureContext::MeasureContext(const System& sys, int depth, long long node_budget, int threads)
    : sys_(&sys), depth_(depth) {
    DomainLevels dl = domain_levels(sys, depth, node_budget, threads);
    laps_ = dl.lap_counts();
    if (laps_.back() <= 0)
        throw std::domain_error("measure: no admissible words at depth " + std::to_string(depth) +
                                "; the self-similar measure is undefined");
    growth_ = growth_from_laps(laps_);
    lo_.resize(static_cast<size_t>(depth));
    hi_.resize(static_cast<size_t>(depth));
    for (int k = 1; k <= depth; ++k) {
        auto& lo = lo_[static_cast<size_t>(k) - 1];
        auto& hi = hi_[static_cast<size_t>(k) - 1];
        lo.reserve(dl.level(k).size());
        hi.reserve(dl.level(k).size());
        for (const Interval& d : dl.level(k)) {
            lo.push_back(d.lo);
            hi.push_back(d.hi);
        }
        std::sort(lo.begin(), lo.end());
        std::sort(hi.begin(), hi.end());
    }
}

long long MeasureContext::total(int level) const {
    return laps_.at(static_cast<size_t>(level) - 1);
}

long long MeasureContext::restricted(int level, const Interval& J) const {
    const auto& lo = lo_.at(static_cast<size_t>(level) - 1);
    const auto& hi = hi_.at(static_cast<size_t>(level) - 1);
    // #{D : D.lo < J.hi} minus #{D : D.hi <= J.lo}; the difference counts the
    // domains overlapping J with interior, because D.hi <= J.lo forces
    // D.lo < J.hi anyway.
    long long below = std::lower_bound(lo.begin(), lo.end(), J.hi) - lo.begin();
    long long gone = std::upper_bound(hi.begin(), hi.end(), J.lo) - hi.begin();
    return below - gone;
}

double MeasureContext::phi(const Rational& x) const {
    const auto& lo = lo_.back();
    long long below = std::lower_bound(lo.begin(), lo.end(), x) - lo.begin();
    return static_cast<double>(below) / static_cast<double>(laps_.back());
}

MeasureEstimate MeasureContext::estimate(const Interval& J, bool endpoint_warnings) const {
    MeasureEstimate est;
    est.J = J;
    est.depth = depth_;
    const int first = std::max(1, depth_ - 2);
    bool all_full = true;
    for (int k = first; k <= depth_; ++k) {
        long long r = restricted(k, J);
        double ratio = static_cast<double>(r) / static_cast<double>(total(k));
        if (k == first) est.lower = est.upper = ratio;
        est.lower = std::min(est.lower, ratio);
        est.upper = std::max(est.upper, ratio);
        if (k == depth_) est.value = ratio;
        if (r != total(k)) all_full = false;
    }
    est.exact_one = all_full;

    // Abel-style resummation: weigh the whole level profile at three points
    // approaching t = 1/s_hat from below, then extrapolate the last step.
    if (growth_.s_hat > 0.0) {
        double samples[3];
        const double deltas[3] = {0.1, 0.05, 0.02};
        for (int s = 0; s < 3; ++s) {
            double t = (1.0 - deltas[s]) / growth_.s_hat;
            double num = 0.0, den = 0.0, tk = 1.0;
            for (int k = 1; k <= depth_; ++k) {
                tk *= t;
                num += static_cast<double>(restricted(k, J)) * tk;
                den += static_cast<double>(total(k)) * tk;
            }
            samples[s] = den > 0.0 ? num / den : 0.0;
        }
        est.abel = std::clamp(samples[2] + (samples[2] - samples[1]) * (2.0 / 3.0), 0.0, 1.0);
    }

    if (endpoint_warnings) {
        const int probe = std::min(depth_, 12);
        const double log_s = std::log(std::max(growth_.s_hat, 1.0));
        for (const Rational& end : {J.lo, J.hi}) {
            PointGrowth pg = point_growth(*sys_, end, probe, log_s);
            if (!pg.thin)
                est.warnings.push_back("endpoint " + end.str() +
                                       " carries near-full word growth; the estimate may be "
                                       "sensitive to boundary mass");
        }
    }
    return est;
}

SelfSimilarityCheck MeasureContext::self_similarity(const Interval& J) const {
    SelfSimilarityCheck chk;
    chk.J = J;
    if (growth_.s_hat <= 0.0)
        throw std::domain_error("self_similarity: lap growth vanished, no scaling factor");
    MeasureEstimate lhs = estimate(J, false);
    chk.lhs = lhs.value;

    const double inv_s = 1.0 / growth_.s_hat;
    const double disc = 2.0 / static_cast<double>(total(depth_));
    double rhs = 0.0, branch_spread = 0.0, branch_value = 0.0;
    int used = 0;
    for (int a = 1; a <= sys_->branch_count(); ++a) {
        OptInterval img = sys_->branch(a - 1).image_of(J);
        if (!img || !img->has_interior()) continue;
        MeasureEstimate ea = estimate(*img, false);
        rhs += ea.value;
        branch_spread += ea.upper - ea.lower;
        branch_value += ea.value;
        ++used;
    }
    chk.rhs = inv_s * rhs;
    chk.residual = std::abs(chk.lhs - chk.rhs);
    chk.bracket = (lhs.upper - lhs.lower) + disc + inv_s * (branch_spread + used * disc) +
                  std::abs(inv_s - 1.0 / growth_.s_hat_power) * branch_value + 1e-9;
    chk.within = chk.residual <= chk.bracket;
    return chk;
}

LinearizeReport linearize(const System& sys, int m, int M, int grid_points, const Rational& tol,
                          long long node_budget, int threads) {
    if (grid_points < 2) throw std::invalid_argument("linearize: need at least two grid points");
    LinearizeReport rep;
    rep.grid_points = grid_points;

    MeasureContext ctx(sys, m, node_budget, threads);
    EntropyReport ent = entropy_report(sys, m, M, tol, node_budget, threads);
    if (ent.entropy_root) {
        rep.s = std::exp(*ent.entropy_root);
        rep.from_root = true;
    } else {
        rep.s = ent.growth.s_hat;
        if (!ent.note.empty()) rep.warnings.push_back(ent.note);
    }
    if (rep.s <= 1.0)
        rep.warnings.push_back("growth rate at or below 1; the constant-slope model degenerates");

    for (int a = 1; a <= sys.branch_count(); ++a) {
        const Branch& br = sys.branch(a - 1);
        const Interval& dom = br.domain();
        LinearizeBranchModel model;
        model.branch = a;
        model.sign = br.orientation();
        model.y_lo = ctx.phi(dom.lo);
        model.y_hi = ctx.phi(dom.hi);
        model.v_lo = ctx.phi(br.eval(dom.lo));
        if (model.y_hi <= model.y_lo) {
            model.degenerate = true;
            rep.warnings.push_back("branch " + std::to_string(a) +
                                   ": the measure collapses its domain; no slope to fit");
            rep.branches.push_back(model);
            continue;
        }
        double worst = 0.0;
        for (int j = 0; j < grid_points; ++j) {
            Rational x = dom.lo + (dom.hi - dom.lo) * Rational(j, grid_points - 1);
            double y = ctx.phi(x);
            double predicted = model.v_lo + model.sign * rep.s * (y - model.y_lo);
            worst = std::max(worst, std::abs(ctx.phi(br.eval(x)) - predicted));
        }
        model.residual = worst;
        rep.max_residual = std::max(rep.max_residual, worst);
        rep.branches.push_back(model);
    }
    return rep;
}

}  // namespace kneadlab
