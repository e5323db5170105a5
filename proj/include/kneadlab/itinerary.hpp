#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kneadlab/system.hpp"
#include "kneadlab/words.hpp"

namespace kneadlab {

/// The finite-depth itinerary of a signed point: for every admissible
/// semigroup word (level by level, canonical order) the address of the image
/// point. Level 0 is the empty word with the address of the point itself.
struct ItineraryTree {
    SignedPoint base;
    int depth = 0;

    struct Entry {
        Word word;
        Address addr;
        bool interior;
    };
    std::vector<std::vector<Entry>> levels;
};

ItineraryTree itinerary(const System& sys, const SignedPoint& p, int depth,
                        long long node_budget = 10'000'000);

/// Kneading data: the exact-side itineraries of all turning points.
struct KneadingData {
    int depth = 0;
    std::vector<ItineraryTree> turning;  // index i-1 = itinerary of c_i
};
KneadingData kneading_data(const System& sys, int depth, long long node_budget = 10'000'000);

/// Compare the kneading data of two systems with the same combinatorial
/// layout: equal branch and turning-point counts, every branch domain
/// spanning the same turning indices, and equal orientations (enforced;
/// addresses only correspond symbol-by-symbol when the layouts agree --
/// the actual turning values may differ, e.g. for conjugated systems).
/// On the first disagreement (scanning turning points in order, then levels,
/// then words) reports the witness word and the two addresses; an address is
/// absent when the word is admissible in only one system.
struct CompareResult {
    bool equal = true;
    int depth = 0;
    int turning = 0;  // 1-based turning index of the disagreement
    Word witness;
    std::optional<Address> addr_a, addr_b;
    std::string note;
};
CompareResult compare_kneading(const System& a, const System& b, int depth,
                               long long node_budget = 10'000'000);

/// Decide the order of two points from their symbolic itineraries alone:
/// find the first word (level by level, canonical order) where the address
/// trees disagree; the sign of the address difference there, twisted by the
/// word's orientation character, is the order of the base points.
/// Indeterminate when the trees agree to their common depth.
struct OrderResult {
    bool determinate = false;
    int lambda = 0;  // +1 when a < b, -1 when a > b
    Word witness;
};
OrderResult order_from_symbolic(const System& sys, const ItineraryTree& a, const ItineraryTree& b);

/// Conjugacy test on the critical orbit: try to build an order-preserving
/// equivariant bijection phi between the depth-m group orbits of the turning
/// points of A and B, pairing the image of every reduced admissible word
/// pointwise. Precondition: compare_kneading(A, B, depth) must be equal.
/// All violations (up to a cap) are collected, never just the first.
struct MapViolation {
    enum class Kind { well_defined, order, equivariance, admissibility };
    Kind kind;
    std::string detail;
    Rational a1, b1;  // the offending pair(s): the phi-graph points involved
    Rational a2, b2;
};
struct CombinatorialMapResult {
    bool ok = true;
    /// Graph of phi: pairs (value in A-orbit, value in B-orbit), sorted by
    /// the A-value, one witness word per pair.
    struct Pair {
        Rational a, b;
        Word word;
        int turning;  // which turning point's orbit produced it first
    };
    std::vector<Pair> graph;
    std::vector<MapViolation> violations;
};
CombinatorialMapResult combinatorial_map(const System& a, const System& b, int depth,
                                         long long node_budget = 10'000'000,
                                         size_t violation_cap = 100);

}  // namespace kneadlab
