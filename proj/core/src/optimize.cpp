#include "qthresh/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qthresh::optimize {

namespace {

double log_p_th_at(const model::CodeParameters& code, int k, double r) {
    return model::threshold_value(code, model::ScheduleQuery{k, r}).log_p_th;
}

}  // namespace

OptimalPeriod optimal_period_closed_form(const model::CodeParameters& code, int k) {
    code.validate();
    if (k < 1) throw std::invalid_argument("concatenation level k must be >= 1");

    OptimalPeriod result;
    result.k = k;
    result.r_continuous = static_cast<double>((code.alpha + code.beta) * k) /
                          (code.delta * (std::exp2(static_cast<double>(k)) - 1.0));

    const int floor_candidate =
        std::max(1, static_cast<int>(std::floor(result.r_continuous)));
    const int ceil_candidate =
        std::max(1, static_cast<int>(std::ceil(result.r_continuous)));
    int best = floor_candidate;
    if (ceil_candidate != floor_candidate &&
        log_p_th_at(code, k, ceil_candidate) > log_p_th_at(code, k, floor_candidate)) {
        best = ceil_candidate;
    }
    result.r_integer = best;
    result.p_th_at_continuous =
        model::threshold_value(code, model::ScheduleQuery{k, result.r_continuous}).p_th;
    result.p_th_at_integer =
        model::threshold_value(code, model::ScheduleQuery{k, static_cast<double>(best)}).p_th;
    result.concavity_ok = verify_concavity(code, k);
    return result;
}

double optimal_period_numeric(const model::CodeParameters& code, int k, double r_max) {
    code.validate();
    if (k < 1) throw std::invalid_argument("concatenation level k must be >= 1");
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
        throw std::invalid_argument("r_max must be a finite real > 0");
    }

    // Coarse geometric scan to bracket the maximum, then golden section.
    constexpr int kGridPoints = 256;
    const double lo = r_max * 1e-9;
    const double ratio = std::pow(r_max / lo, 1.0 / (kGridPoints - 1));
    std::vector<double> grid(kGridPoints);
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        grid[i] = lo * std::pow(ratio, i);
        const double value = log_p_th_at(code, k, grid[i]);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    if (best == 0 || best == kGridPoints - 1) {
        throw NoInteriorMaximum(
            "log p_th is monotone over the scanned range; no interior maximum");
    }

    double a = grid[best - 1];
    double b = grid[best + 1];
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - (b - a) * kInvPhi;
    double d = a + (b - a) * kInvPhi;
    double fc = log_p_th_at(code, k, c);
    double fd = log_p_th_at(code, k, d);
    while (b - a > 1e-9 * (0.5 * (a + b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * kInvPhi;
            fc = log_p_th_at(code, k, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * kInvPhi;
            fd = log_p_th_at(code, k, d);
        }
    }
    return 0.5 * (a + b);
}

bool verify_concavity(const model::CodeParameters& code, int k) {
    code.validate();
    if (k < 1) throw std::invalid_argument("concatenation level k must be >= 1");
    const double r_star = static_cast<double>((code.alpha + code.beta) * k) /
                          (code.delta * (std::exp2(static_cast<double>(k)) - 1.0));
    const double h = r_star * 1e-4;
    const auto p_th = [&](double r) {
        return model::threshold_value(code, model::ScheduleQuery{k, r}).p_th;
    };
    const double second_difference = p_th(r_star + h) - 2.0 * p_th(r_star) + p_th(r_star - h);
    return second_difference < 0.0;
}

std::optional<int> required_level(const model::CodeParameters& code, double p, int r,
                                  double target, int k_max) {
    code.validate();
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("error probability p must lie in (0, 1)");
    }
    if (!(target > 0.0 && target < 1.0)) {
        throw std::invalid_argument("target probability must lie in (0, 1)");
    }
    if (r < 1) throw std::invalid_argument("error-correction period r must be >= 1");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

    const double log_target = std::log(target);
    for (int k = 1; k <= k_max; ++k) {
        const model::ScheduleQuery query{k, static_cast<double>(r)};
        if (!model::regime_valid(p, code, query)) continue;
        if (model::log_top_level_failure_leading(p, code, query) <= log_target) {
            return k;
        }
    }
    return std::nullopt;
}

}  // namespace qthresh::optimize
