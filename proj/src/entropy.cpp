#include "kneadlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "kneadlab/kneading.hpp"
#include "kneadlab/words.hpp"

namespace kneadlab {

namespace {

// One front-extension step: the domain of a.w is I_a intersected with the
// f_a-preimage of Dom(w), so each child costs a single interval pullback
// regardless of word length.
std::vector<Interval> pullback_range(const System& sys, const std::vector<Interval>& frontier,
                                     size_t begin, size_t end) {
    std::vector<Interval> out;
    out.reserve((end - begin) * static_cast<size_t>(sys.branch_count()));
    for (size_t idx = begin; idx < end; ++idx) {
        for (int a = 1; a <= sys.branch_count(); ++a) {
            OptInterval pre = sys.branch(a - 1).preimage_of(frontier[idx]);
            if (pre && pre->has_interior()) out.push_back(*pre);
        }
    }
    return out;
}

std::vector<Interval> pullback_level(const System& sys, const std::vector<Interval>& frontier,
                                     int threads) {
    if (threads <= 1 || frontier.size() < 256) return pullback_range(sys, frontier, 0, frontier.size());
    size_t chunk = (frontier.size() + static_cast<size_t>(threads) - 1) / static_cast<size_t>(threads);
    std::vector<std::future<std::vector<Interval>>> parts;
    for (size_t b = 0; b < frontier.size(); b += chunk) {
        size_t e = std::min(frontier.size(), b + chunk);
        parts.push_back(std::async(std::launch::async, [&sys, &frontier, b, e]() {
            return pullback_range(sys, frontier, b, e);
        }));
    }
    std::vector<Interval> out;
    for (auto& p : parts) {
        std::vector<Interval> part = p.get();
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

double log_ratio(long long num, long long den) {
    return std::log(static_cast<double>(num)) - std::log(static_cast<double>(den));
}

// Averaging window used by every growth estimate: the last ceil(m/4) steps.
int window(int m) {
    int k = (m + 3) / 4;
    return std::min(k, m - 1) < 1 ? 1 : std::min(k, m - 1);
}

long long as_count(const Rational& r) {
    if (!r.is_integer()) throw std::logic_error("expected an integer count, got " + r.str());
    return static_cast<long long>(r.numerator().get_si());
}

}  // namespace

DomainLevels domain_levels(const System& sys, int depth, long long node_budget, int threads) {
    if (depth < 1) throw std::invalid_argument("domain_levels: depth must be positive");
    DomainLevels dl;
    dl.depth = depth;
    dl.levels.reserve(static_cast<size_t>(depth));

    std::vector<Interval> frontier;
    for (int a = 1; a <= sys.branch_count(); ++a) {
        const Interval& dom = sys.branch(a - 1).domain();
        if (dom.has_interior()) frontier.push_back(dom);
    }
    long long total = static_cast<long long>(frontier.size());
    if (total > node_budget) throw BudgetExceeded(0, node_budget);
    dl.levels.push_back(frontier);

    for (int len = 2; len <= depth; ++len) {
        if (dl.levels.back().empty()) break;  // the tree died out; pad below
        std::vector<Interval> next = pullback_level(sys, dl.levels.back(), threads);
        total += static_cast<long long>(next.size());
        if (total > node_budget) throw BudgetExceeded(static_cast<size_t>(len) - 1, node_budget);
        dl.levels.push_back(std::move(next));
    }
    while (dl.levels.size() < static_cast<size_t>(depth)) dl.levels.emplace_back();
    return dl;
}

long long lap_count_restricted(const std::vector<Interval>& level, const Interval& J) {
    long long n = 0;
    for (const Interval& d : level)
        if (d.lo < J.hi && J.lo < d.hi) ++n;  // the overlap has nonempty interior
    return n;
}

GrowthEstimate growth_from_laps(const std::vector<long long>& laps) {
    GrowthEstimate g;
    const int m = static_cast<int>(laps.size());
    if (m == 0 || laps.back() <= 0) return g;  // the word tree dies out: zero growth
    if (m == 1) {
        g.s_hat = g.s_hat_power = g.s_hat_ratio = static_cast<double>(laps[0]);
        g.entropy = std::max(0.0, std::log(g.s_hat));
        return g;
    }
    // laps.back() > 0 forces every earlier count positive (each admissible
    // word's tail is admissible), so the ratios below are well defined.
    const int k = window(m);
    g.s_hat = std::exp(log_ratio(laps[m - 1], laps[m - 1 - k]) / k);
    g.s_hat_power = std::exp(std::log(static_cast<double>(laps[m - 1])) / m);
    g.s_hat_ratio = static_cast<double>(laps[m - 1]) / static_cast<double>(laps[m - 2]);
    double band = 0.0;
    for (int j = m - k + 1; j <= m; ++j)
        band = std::max(band, std::abs(log_ratio(laps[j - 1], laps[j - 2]) - std::log(g.s_hat)));
    g.fluctuation_band = band;
    g.entropy = std::max(0.0, std::log(g.s_hat));
    return g;
}

BoundaryGrowth boundary_counts(const System& sys, const DomainLevels& dl) {
    BoundaryGrowth bg;
    const int K = sys.turning_count();
    const int m = dl.depth;
    bg.counts.assign(static_cast<size_t>(K), std::vector<long long>(static_cast<size_t>(m), 0));
    for (int len = 1; len <= m; ++len)
        for (const Interval& d : dl.level(len))
            for (int i = 1; i <= K; ++i)
                if (d.lo == sys.turning(i) || d.hi == sys.turning(i))
                    ++bg.counts[static_cast<size_t>(i) - 1][static_cast<size_t>(len) - 1];

    double s0 = 0.0;
    for (int i = 0; i < K; ++i) {
        const auto& c = bg.counts[static_cast<size_t>(i)];
        if (m == 0 || c[static_cast<size_t>(m) - 1] <= 0) continue;  // boundary hits die out: rate 0
        double rate;
        if (m == 1) {
            rate = static_cast<double>(c[0]);
        } else {
            const int k = window(m);
            // Boundary counts need not be monotone; fall back to the plain
            // power mean when the window base vanishes.
            rate = c[static_cast<size_t>(m - 1 - k)] > 0
                       ? std::exp(log_ratio(c[static_cast<size_t>(m - 1)],
                                            c[static_cast<size_t>(m - 1 - k)]) /
                                  k)
                       : std::exp(std::log(static_cast<double>(c[static_cast<size_t>(m - 1)])) / m);
        }
        s0 = std::max(s0, rate);
    }
    bg.s0_hat = s0;
    return bg;
}

EntropyReport entropy_report(const System& sys, int m, int M, const Rational& tol,
                             long long node_budget, int threads) {
    if (m < 2) throw std::invalid_argument("entropy_report: lap depth m must be at least 2");
    if (M < 2) throw std::invalid_argument("entropy_report: series cap M must be at least 2");
    EntropyReport rep;
    rep.m = m;
    rep.M = M;
    DomainLevels dl = domain_levels(sys, m, node_budget, threads);
    rep.laps = dl.lap_counts();
    rep.growth = growth_from_laps(rep.laps);
    rep.entropy_lap = rep.growth.entropy;

    BoundaryGrowth bg = boundary_counts(sys, dl);
    rep.s0_hat = bg.s0_hat;
    rep.root_applicable =
        rep.growth.s_hat > 0.0 && bg.s0_hat <= rep.growth.s_hat * (1.0 - 1.0 / m);
    if (!rep.root_applicable) {
        rep.note = "boundary growth " + std::to_string(bg.s0_hat) + " is not clearly below lap growth " +
                   std::to_string(rep.growth.s_hat) + "; determinant root not certified";
        return rep;
    }

    Series det = kneading_determinant(sys, M, std::nullopt, node_budget);
    Rational hi(1);
    if (bg.s0_hat > 1.0) {
        // Scan only below 1/s0_hat, where the smallest determinant zero is 1/s.
        long num = static_cast<long>(std::floor(4096.0 / bg.s0_hat));
        if (num < 2) num = 2;
        hi = std::min(Rational(1), Rational(num, 4096));
    }
    rep.root = smallest_root_in_unit_interval(det, hi / Rational(1024), hi, tol, 1023);
    if (rep.root) {
        rep.entropy_root = -std::log(rep.root->root.to_double());
        double diff = std::abs(*rep.entropy_root - rep.entropy_lap);
        // The absolute floor absorbs the truncation bias of the determinant
        // root, which stays well below 1e-6 for the caps used here.
        rep.routes_consistent = diff <= 10.0 * rep.growth.fluctuation_band + 1e-6;
        if (!rep.routes_consistent)
            rep.note = "entropy estimates disagree by " + std::to_string(diff) +
                       " against a fluctuation band of " + std::to_string(rep.growth.fluctuation_band);
    } else if (rep.growth.s_hat > 1.0 + 1.0 / m) {
        rep.inconsistency = true;
        rep.note = "no determinant root on (0, " + hi.str() + "] although lap growth is " +
                   std::to_string(rep.growth.s_hat) + "; raise the series cap or distrust the growth gate";
    }
    return rep;
}

std::vector<long long> l_recursion_residuals(const System& sys, const Interval& J, int kmax,
                                             long long node_budget) {
    if (kmax < 2) throw std::invalid_argument("l_recursion_residuals: need kmax >= 2");
    DomainLevels dl = domain_levels(sys, kmax, node_budget);
    std::vector<long long> res;
    res.reserve(static_cast<size_t>(kmax) - 1);
    for (int k = 1; k + 1 <= kmax; ++k) {
        long long lhs = lap_count_restricted(dl.level(k + 1), J);
        long long rhs = 0;
        for (int a = 1; a <= sys.branch_count(); ++a) {
            OptInterval img = sys.branch(a - 1).image_of(J);
            if (img && img->has_interior()) rhs += lap_count_restricted(dl.level(k), *img);
        }
        res.push_back(lhs - rhs);
    }
    return res;
}

std::vector<long long> cylinder_identity_residuals(const System& sys, int m, long long node_budget) {
    LevelEnumeration back = enumerate_admissible(sys, m, node_budget);
    DomainLevels front = domain_levels(sys, m, node_budget);
    std::vector<long long> res;
    res.reserve(static_cast<size_t>(m));
    long long back_cum = 1, front_cum = 1;  // the empty cylinder
    for (int k = 1; k <= m; ++k) {
        back_cum += back.counts[static_cast<size_t>(k) - 1];
        front_cum += static_cast<long long>(front.level(k).size());
        res.push_back(back_cum - front_cum);
    }
    return res;
}

Series lap_gamma_identity_residual(const System& sys, int M, long long node_budget) {
    if (M < 1) throw std::invalid_argument("lap_gamma_identity_residual: need M >= 1");
    const int cap = M - 1;
    DomainLevels dl = domain_levels(sys, M, node_budget);
    BoundaryGrowth bg = boundary_counts(sys, dl);
    GammaCounts gc = pre_turning_pairs(sys, std::nullopt, cap, false, node_budget);

    std::vector<Rational> lap_coeffs(static_cast<size_t>(cap) + 1);
    for (int len = 1; len <= M; ++len)
        lap_coeffs[static_cast<size_t>(len) - 1] = Rational(static_cast<long>(dl.level(len).size()));
    Series residual{lap_coeffs};

    const Rational half(1, 2);
    for (int i = 0; i < sys.turning_count(); ++i) {
        std::vector<Rational> bd(static_cast<size_t>(cap) + 1);
        for (int len = 1; len <= M; ++len)
            bd[static_cast<size_t>(len) - 1] =
                Rational(static_cast<long>(bg.counts[static_cast<size_t>(i)][static_cast<size_t>(len) - 1]));
        residual -= (Series{bd} * gc.gamma[static_cast<size_t>(i)]).scaled(half);
    }
    return residual;
}

std::vector<long long> tri_bijection_residuals(const System& sys, int m, long long node_budget) {
    if (m < 1) throw std::invalid_argument("tri_bijection_residuals: need m >= 1");
    DomainLevels dl = domain_levels(sys, m, node_budget);
    BoundaryGrowth bg = boundary_counts(sys, dl);
    GammaCounts gc = pre_turning_pairs(sys, std::nullopt, m - 1, false, node_budget);

    std::vector<long long> res;
    res.reserve(static_cast<size_t>(m));
    for (int j = 1; j <= m; ++j) {
        Rational triples;
        for (int i = 0; i < sys.turning_count(); ++i)
            for (int k = 0; k < j; ++k)
                triples += gc.gamma[static_cast<size_t>(i)].coeff(k) *
                           Rational(static_cast<long>(
                               bg.counts[static_cast<size_t>(i)][static_cast<size_t>(j - k) - 1]));
        // Every admissible word domain is a nondegenerate interval, so the
        // boundary-point pairs on the other side of the bijection number
        // exactly twice the lap count.
        res.push_back(as_count(triples) - 2 * static_cast<long long>(dl.level(j).size()));
    }
    return res;
}

PointGrowth point_growth(const System& sys, const Rational& x, int m, double log_s_hat,
                         long long node_budget) {
    PointGrowth pg;
    auto levels = admissible_for_point(sys, SignedPoint{x, Side::exact}, m, node_budget);
    pg.counts.reserve(levels.size());
    for (const auto& level : levels) {
        long long n = 0;
        for (const PointWord& pw : level)
            if (pw.interior) ++n;
        pg.counts.push_back(n);
    }
    const int last = static_cast<int>(pg.counts.size()) - 1;
    if (last < 1 || pg.counts[static_cast<size_t>(last)] <= 0) {
        pg.tail_rate = -std::numeric_limits<double>::infinity();
        pg.thin = true;
        return pg;
    }
    const int k = window(last < 2 ? 2 : last);
    // Interior admissibility passes to prefixes, so the window base is positive.
    pg.tail_rate = log_ratio(pg.counts[static_cast<size_t>(last)],
                             pg.counts[static_cast<size_t>(last - k)]) /
                   k;
    pg.thin = pg.tail_rate < log_s_hat - 0.1;  // demand a clear gap, not mere inequality
    return pg;
}

}  // namespace kneadlab
