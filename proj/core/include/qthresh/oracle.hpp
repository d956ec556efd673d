#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "qthresh/model.hpp"

namespace qthresh::oracle {

enum class BottomLayerMode {
    kExactDepth,  // L Bernoulli(p) location faults per leaf qubit
    kCollapsed,   // one draw per leaf with probability 1 - (1-p)^L
};

/// Inputs of one Monte Carlo run over the hierarchical failure process.
/// Trials use independently seeded substreams derived from (seed, trial
/// index), so runs are reproducible and trial-parallelism does not change
/// the failure count.
struct SimulationConfig {
    double p = 0;
    model::CodeParameters code;
    model::ScheduleQuery query;  // r must be a positive integer here
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    BottomLayerMode bottom_mode = BottomLayerMode::kCollapsed;
    unsigned threads = 1;  // 0 selects hardware concurrency

    void validate() const;
};

struct FailureEstimate {
    std::uint64_t failures = 0;
    std::uint64_t trials = 0;
    double estimate = 0;
    double ci_low = 0;   // 99% Wilson score bounds
    double ci_high = 0;
    std::string method = "wilson-99";
};

/// Probability that an m-qubit block is unrecoverable, i.e. holds >= 2 qubit
/// errors when each qubit errs independently with probability q. Equals
/// 1 - (1-q)^m - m q (1-q)^(m-1), evaluated as the binomial tail sum so no
/// cancellation occurs at small q.
double block_failure_exact(double q, int m);

/// Exact counterpart of the leading-order top-level failure: starts from
/// e0 = 1 - (1-p)^L and applies the exact block recursion k times.
double recursive_failure_exact(double p, const model::CodeParameters& code,
                               const model::ScheduleQuery& q);

/// Wilson score interval at fixed 99% confidence (z = 2.5758).
std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials);

/// Samples the level-k failure event per trial: leaves fail per bottom_mode,
/// an inner block fails when >= 2 of its m children fail, and the trial fails
/// when the top block fails. Identical configs give identical estimates;
/// serial and parallel execution agree exactly.
FailureEstimate simulate_failure(const SimulationConfig& cfg);

}  // namespace qthresh::oracle
