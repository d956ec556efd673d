#pragma once

#include <optional>
#include <stdexcept>

#include "qthresh/model.hpp"

namespace qthresh::optimize {

/// Raised when a maximization range holds no interior maximum (the objective
/// is monotone over the scanned interval), which signals invalid parameters.
class NoInteriorMaximum : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OptimalPeriod {
    int k = 0;
    double r_continuous = 0;        // (alpha+beta)*k / (delta*(2^k - 1))
    int r_integer = 0;              // best integer period, >= 1
    double p_th_at_continuous = 0;
    double p_th_at_integer = 0;
    bool concavity_ok = false;      // numerical second-difference check
};

/// Stationary point of the threshold in r, plus the best integer period.
/// The integer optimum is resolved by log-domain comparison of the floor and
/// ceil candidates (clamped to >= 1), not by rounding: the log objective is
/// asymmetric around the stationary point.
OptimalPeriod optimal_period_closed_form(const model::CodeParameters& code, int k);

/// Golden-section maximization of log p_th over (0, r_max], to relative
/// tolerance 1e-9 in r. Throws NoInteriorMaximum when the objective is
/// monotone over the range.
double optimal_period_numeric(const model::CodeParameters& code, int k, double r_max);

/// Central second difference of p_th(r) at the stationary point, with step
/// h = r * 1e-4; true when it is negative.
bool verify_concavity(const model::CodeParameters& code, int k);

/// Smallest level k <= k_max whose leading-order top-level failure at period
/// r meets `target` while the perturbative regime is still valid (c*L*p < 1);
/// nullopt when no such level exists.
std::optional<int> required_level(const model::CodeParameters& code, double p, int r,
                                  double target, int k_max = 20);

}  // namespace qthresh::optimize
