#include "kneadlab/overlap.hpp"

#include <cmath>
#include <stdexcept>

namespace kneadlab {

void validate_overlap(const System& sys) {
    if (sys.branch_count() != 2)
        throw std::invalid_argument("overlap: need exactly two branches, got " +
                                    std::to_string(sys.branch_count()));
    const Branch& left = sys.branch(0);
    const Branch& right = sys.branch(1);
    if (left.orientation() != 1 || right.orientation() != 1)
        throw std::invalid_argument("overlap: both branches must be increasing");
    if (left.domain().hi != right.domain().lo)
        throw std::invalid_argument(
            "overlap: branch domains must share exactly their inner endpoints, got " +
            left.domain().str() + " and " + right.domain().str());
    const Interval h = sys.hull();
    const Rational q = left.domain().hi;
    if (!(left.domain().lo < q) || !(q < right.domain().hi))
        throw std::invalid_argument("overlap: the shared point must be interior to the hull");
    for (int a = 1; a <= 2; ++a) {
        const Interval img = sys.branch(a - 1).image();
        if (img.lo < h.lo || h.hi < img.hi)
            throw std::invalid_argument("overlap: branch " + std::to_string(a) + " maps outside " +
                                        h.str() + " (image " + img.str() + ")");
    }
}

std::pair<std::vector<int>, std::vector<int>> overlap_itineraries(const System& sys, int N) {
    validate_overlap(sys);
    if (N < 0) throw std::invalid_argument("overlap: itinerary depth must be nonnegative");
    const Rational q = sys.branch(0).domain().hi;
    std::vector<int> alpha, beta;
    alpha.reserve(static_cast<size_t>(N) + 1);
    beta.reserve(static_cast<size_t>(N) + 1);
    Rational x = q;
    for (int i = 0; i <= N; ++i) {  // ties go to the left branch
        int digit = x <= q ? 0 : 1;
        alpha.push_back(digit);
        x = sys.branch(digit).eval(x);
    }
    x = q;
    for (int i = 0; i <= N; ++i) {  // ties go to the right branch
        int digit = x < q ? 0 : 1;
        beta.push_back(digit);
        x = sys.branch(digit).eval(x);
    }
    return {std::move(alpha), std::move(beta)};
}

namespace {

std::optional<RootResult> difference_root(const Series& d, const Rational& tol) {
    if (d.is_zero()) return std::nullopt;
    // Uniform 1/1024 grid over the open unit interval; the endpoints are
    // excluded because r = 1 carries no growth and r = 0 is the trivial zero.
    return smallest_root_in_unit_interval(d, Rational(1, 1024), Rational(1023, 1024), tol, 1022);
}

}  // namespace

OverlapModel overlap_entropy_model(const std::vector<int>& alpha, const std::vector<int>& beta,
                                   int N, const Rational& tol) {
    if (N < 1) throw std::invalid_argument("overlap: need depth N >= 1");
    if (alpha.size() != static_cast<size_t>(N) + 1 || beta.size() != alpha.size())
        throw std::invalid_argument("overlap: digit strings must have length N + 1");
    OverlapModel m;
    m.N = N;
    m.alpha = alpha;
    m.beta = beta;

    std::vector<Rational> coeffs(static_cast<size_t>(N) + 1);
    for (int i = 0; i <= N; ++i)
        coeffs[static_cast<size_t>(i)] = Rational(alpha[static_cast<size_t>(i)] - beta[static_cast<size_t>(i)]);
    m.difference = Series{coeffs};

    if (m.difference.is_zero()) {
        m.status = OverlapStatus::identical_itineraries;
        m.note = "the two tie-breakings produce the same digits to depth " + std::to_string(N);
        return m;
    }
    m.root = difference_root(m.difference, tol);
    if (!m.root) {
        m.status = OverlapStatus::no_root;
        m.note = "difference series has no zero on (0, 1); no growth rate recovered";
        return m;
    }
    m.status = OverlapStatus::ok;
    m.r = m.root->root;
    m.s = Rational(1) / m.r;

    // Sensitivity to the truncation depth: redo the scan one level shallower.
    std::vector<Rational> shorter(coeffs.begin(), coeffs.end() - 1);
    Series d_prev{shorter};
    if (auto prev = difference_root(d_prev, tol))
        m.stability = std::abs(m.r.to_double() - prev->root.to_double());

    Series a_series{[&] {
        std::vector<Rational> ac(static_cast<size_t>(N) + 1);
        for (int i = 0; i <= N; ++i) ac[static_cast<size_t>(i)] = Rational(alpha[static_cast<size_t>(i)]);
        return ac;
    }()};
    m.p_raw = (Rational(1) - m.r) * a_series.eval(m.r);
    Rational tail(1);
    for (int i = 0; i <= N; ++i) tail *= m.r;  // r^(N+1)
    m.tail = tail;
    m.p = Rational::simplest_in(max(Rational(0), m.p_raw - m.tail), min(Rational(1), m.p_raw + m.tail));
    return m;
}

OverlapModel overlap_model(const System& sys, int N, const Rational& tol) {
    auto [alpha, beta] = overlap_itineraries(sys, N);
    OverlapModel m = overlap_entropy_model(alpha, beta, N, tol);
    const Interval h = sys.hull();
    m.anchored = sys.branch(0).eval(h.lo) == h.lo && sys.branch(1).eval(h.hi) == h.hi;
    return m;
}

}  // namespace kneadlab
