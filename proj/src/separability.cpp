#include "kneadlab/separability.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kneadlab {

namespace {

/// Level-synchronized value BFS: starting from the turning points, apply
/// every applicable letter of the given alphabet, deduplicating values per
/// accumulated set. Letters: 0 = forward only, 1 = inverse only.
std::vector<Rational> value_orbit(const System& sys, int depth, bool inverse_letters,
                                  long long node_budget) {
    std::set<Rational> all;
    std::vector<Rational> frontier;
    for (int i = 1; i <= sys.turning_count(); ++i)
        if (all.insert(sys.turning(i)).second) frontier.push_back(sys.turning(i));

    long long used = static_cast<long long>(all.size());
    for (int level = 1; level <= depth && !frontier.empty(); ++level) {
        std::vector<Rational> next;
        for (const Rational& v : frontier) {
            for (int j = 0; j < sys.branch_count(); ++j) {
                const Branch& b = sys.branch(j);
                if (inverse_letters) {
                    if (!b.image().contains(v)) continue;
                    Rational w = b.invert(v);
                    if (all.insert(w).second) next.push_back(w);
                } else {
                    if (!b.domain().contains(v)) continue;
                    Rational w = b.eval(v);
                    if (all.insert(w).second) next.push_back(w);
                }
            }
        }
        used += static_cast<long long>(next.size());
        if (used > node_budget) throw BudgetExceeded(static_cast<size_t>(level) - 1, node_budget);
        frontier = std::move(next);
    }
    return std::vector<Rational>(all.begin(), all.end());
}

}  // namespace

std::vector<Rational> turning_orbit_forward(const System& sys, int depth, long long node_budget) {
    return value_orbit(sys, depth, false, node_budget);
}

std::vector<Rational> turning_orbit_backward(const System& sys, int depth, long long node_budget) {
    return value_orbit(sys, depth, true, node_budget);
}

std::vector<Rational> turning_orbit_group(const System& sys, int depth, long long node_budget) {
    // Group orbit: dedup on (value, last letter) so reduced words are not cut
    // short by a value revisited along a different path, then collect values.
    // last = 0 is the root marker; letters are encoded +j / -j.
    std::set<std::pair<Rational, int>> seen;
    std::set<Rational> values;
    std::vector<std::pair<Rational, int>> frontier;
    for (int i = 1; i <= sys.turning_count(); ++i) {
        values.insert(sys.turning(i));
        if (seen.insert({sys.turning(i), 0}).second) frontier.push_back({sys.turning(i), 0});
    }

    long long used = static_cast<long long>(seen.size());
    for (int level = 1; level <= depth && !frontier.empty(); ++level) {
        std::vector<std::pair<Rational, int>> next;
        for (const auto& [v, last] : frontier) {
            for (int j = 1; j <= sys.branch_count(); ++j) {
                const Branch& b = sys.branch(j - 1);
                if (last != -j && b.domain().contains(v)) {  // forward letter, reduced
                    std::pair<Rational, int> child{b.eval(v), j};
                    if (seen.insert(child).second) {
                        next.push_back(child);
                        values.insert(child.first);
                    }
                }
                if (last != j && b.image().contains(v)) {  // inverse letter, reduced
                    std::pair<Rational, int> child{b.invert(v), -j};
                    if (seen.insert(child).second) {
                        next.push_back(child);
                        values.insert(child.first);
                    }
                }
            }
        }
        used += static_cast<long long>(next.size());
        if (used > node_budget) throw BudgetExceeded(static_cast<size_t>(level) - 1, node_budget);
        frontier = std::move(next);
    }
    return std::vector<Rational>(values.begin(), values.end());
}

namespace {

/// Gap index of v in the sorted separator array: separators themselves get
/// index -1 (always separated); otherwise the number of separators below v.
long long gap_of(const std::vector<Rational>& seps, const Rational& v) {
    auto it = std::lower_bound(seps.begin(), seps.end(), v);
    if (it != seps.end() && *it == v) return -1;
    return static_cast<long long>(it - seps.begin());
}

}  // namespace

SeparabilityReport check_separability(const System& sys, int depth, long long node_budget) {
    SeparabilityReport rep;
    rep.depth = depth;

    std::vector<Rational> fwd = turning_orbit_forward(sys, depth, node_budget);
    std::vector<Rational> bwd = turning_orbit_backward(sys, depth, node_budget);
    std::vector<Rational> grp = turning_orbit_group(sys, depth, node_budget);

    // --- future: distinct group-orbit points, separated by forward words.
    // A forward word of length <= depth separates x < y exactly when a
    // backward-orbit point lies in [x, y]; so two points fail exactly when
    // they sit strictly inside the same gap between consecutive backward-
    // orbit points. Scan each gap for two or more orbit values.
    rep.future_pairs = static_cast<long long>(grp.size());
    {
        std::map<long long, Rational> first_in_gap;
        for (const Rational& v : grp) {
            long long g = gap_of(bwd, v);
            if (g < 0) continue;  // on a separator: separated from everything
            auto [it, fresh] = first_in_gap.emplace(g, v);
            if (!fresh) {
                rep.future_ok = false;
                rep.future_witness = SeparabilityReport::FutureWitness{it->second, v};
                break;
            }
        }
    }

    // --- past: pullbacks of backward-orbit points under two distinct
    // generators, separated by inverse words; mirrored reduction with the
    // forward orbit as separator set. A value reachable under several
    // generators is tracked with each generator tag.
    {
        // Bucket the tagged pullback points by gap, then look inside each
        // bucket for two distinct values carrying distinct generators (same-
        // generator or same-value crowds are not failing pairs).
        std::map<long long, std::vector<std::pair<Rational, int>>> gaps;
        for (int j = 1; j <= sys.branch_count(); ++j) {
            const Branch& b = sys.branch(j - 1);
            for (const Rational& v : bwd) {
                if (!b.image().contains(v)) continue;
                Rational x = b.invert(v);
                ++rep.past_pairs;
                long long g = gap_of(fwd, x);
                if (g < 0) continue;
                gaps[g].emplace_back(std::move(x), j);
            }
        }
        for (auto& [g, bucket] : gaps) {
            if (!rep.past_ok) break;
            std::sort(bucket.begin(), bucket.end());
            for (size_t i = 0; i + 1 < bucket.size() && rep.past_ok; ++i)
                for (size_t k = i + 1; k < bucket.size(); ++k) {
                    if (bucket[i].first == bucket[k].first) continue;
                    if (bucket[i].second == bucket[k].second) continue;
                    rep.past_ok = false;
                    rep.past_witness = SeparabilityReport::PastWitness{
                        bucket[i].first, bucket[k].first, bucket[i].second, bucket[k].second};
                    break;
                }
        }
    }

    if (grp.size() < 2) rep.notes.push_back("group orbit has fewer than two points; future check vacuous");
    return rep;
}

}  // namespace kneadlab
