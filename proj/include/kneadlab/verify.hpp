#pragma once

#include <string>
#include <vector>

#include "kneadlab/system.hpp"

namespace kneadlab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int m = 12;          // depth for the counting identities
    int M = 10;          // series degree cap for the algebraic identities
    int points = 20;     // random sample points for the partition-of-unity check
    int intervals = 5;   // random intervals for the jump identity
    int cylinder_depth = 10;
    int tri_depth = 8;
    unsigned long long seed = 20260822ull;
    long long node_budget = 10'000'000;
};

/// Run every exact identity the kneading pipeline is built on, on one
/// system, with reproducible random sampling. Every residual is computed in
/// exact arithmetic; a check passes only when its residuals vanish
/// identically. Random points that eventually hit a turning point are
/// rejected and redrawn (the partition-of-unity identity genuinely fails
/// there), with the rejection count reported.
std::vector<CheckResult> run_identity_suite(const System& sys, const VerifyOptions& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace kneadlab
