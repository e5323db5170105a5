#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kneadlab/system.hpp"
#include "kneadlab/words.hpp"

namespace kneadlab {

/// Finite-depth separability certificate. "Future" separability asks that
/// any two distinct points of the depth-m group orbit of the turning points
/// be separated by a semigroup word of length <= m; "past" separability asks
/// the mirrored question for one-step pullbacks of the inverse-orbit under
/// distinct generators, separated by inverse words. Both reduce to an exact
/// interval test: a word of length k separates x < y exactly when a depth-k
/// point of the opposite-direction orbit of a turning point lies in [x, y].
struct SeparabilityReport {
    int depth = 0;

    bool future_ok = true;
    long long future_pairs = 0;  // distinct orbit points examined
    struct FutureWitness {
        Rational x, y;  // unseparated pair
    };
    std::optional<FutureWitness> future_witness;

    bool past_ok = true;
    long long past_pairs = 0;
    struct PastWitness {
        Rational x, y;
        int gen_x = 0, gen_y = 0;  // the distinct generators whose pullbacks collide
    };
    std::optional<PastWitness> past_witness;

    std::vector<std::string> notes;
};

SeparabilityReport check_separability(const System& sys, int depth, long long node_budget = 10'000'000);

/// Value sets used by the separability test (exposed for tests and the CLI):
/// images of the turning points under admissible semigroup words of length
/// <= depth (forward), under inverse words (backward), or under arbitrary
/// reduced group words (group orbit). Sorted, deduplicated.
std::vector<Rational> turning_orbit_forward(const System& sys, int depth, long long node_budget = 10'000'000);
std::vector<Rational> turning_orbit_backward(const System& sys, int depth, long long node_budget = 10'000'000);
std::vector<Rational> turning_orbit_group(const System& sys, int depth, long long node_budget = 10'000'000);

}  // namespace kneadlab
