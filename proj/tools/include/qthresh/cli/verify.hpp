#pragma once

#include <string>
#include <vector>

#include "qthresh/cli/registry.hpp"

namespace qthresh::cli {

/// Outcome of one named cross-check. `deviation` is the worst measured
/// violation across the check's case grid and `tolerance` the bound it must
/// stay under; both are NaN for pure pass/fail checks.
struct CheckResult {
    std::string name;
    bool passed = false;
    double deviation = 0;
    double tolerance = 0;
    std::string detail;  // failure causes, per-entry warnings
};

/// Runs the cross-check suite over every registry entry:
///   registry-valid       parameter invariants hold for each entry
///   composition-law      top-level failure equals the iterated map e -> c e^2
///   c-scaling            doubling c exactly halves the threshold
///   asymptotic-agreement exact block failure approaches C(m,2) q^2 as q -> 0
///   exact-vs-leading     exact recursion within 20*L*p of the leading model
///   stationarity         d(log p_th)/dr vanishes at the closed-form optimum
///   concavity            second difference of p_th is negative at the optimum
///   mc-determinism       identical seeds and thread counts agree (skipped
///                        with quick=true)
/// Entries that fail validation are reported and excluded from the analytic
/// checks rather than aborting the run.
std::vector<CheckResult> run_verification(const std::vector<CodeRegistryEntry>& registry,
                                          bool quick);

}  // namespace qthresh::cli
