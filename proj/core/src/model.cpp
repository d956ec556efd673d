#include "qthresh/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qthresh::model {

namespace {

constexpr double kLogEqualityTolerance = 1e-12;  // relative, log domain

double pow2(int k) { return std::exp2(static_cast<double>(k)); }

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

}  // namespace

double CodeParameters::default_c(int m) {
    return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
}

CodeParameters CodeParameters::make(std::string name, int m, int alpha, int beta, double delta,
                                    std::optional<double> c) {
    CodeParameters params;
    params.name = std::move(name);
    params.m = m;
    params.alpha = alpha;
    params.beta = beta;
    params.delta = delta;
    params.c = c.value_or(default_c(m));
    params.validate();
    return params;
}

void CodeParameters::validate() const {
    if (name.empty()) throw std::invalid_argument("code name must be nonempty");
    if (m < 2) throw std::invalid_argument("block size m must be >= 2");
    if (m > 1024) throw std::invalid_argument("block size m must be <= 1024");
    if (alpha < 1) throw std::invalid_argument("encoding depth alpha must be an integer >= 1");
    if (beta < 1) throw std::invalid_argument("decoding depth beta must be an integer >= 1");
    if (!(delta >= 1.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("gate depth delta must be a finite real >= 1");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("failure constant c must be a finite real > 0");
    }
}

void ScheduleQuery::validate() const {
    if (k < 1) throw std::invalid_argument("concatenation level k must be >= 1");
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("error-correction period r must be a finite real > 0");
    }
}

bool ScheduleQuery::r_is_integer() const { return std::floor(r) == r; }

double period_depth(const CodeParameters& code, const ScheduleQuery& q) {
    code.validate();
    q.validate();
    return static_cast<double>((code.alpha + code.beta) * q.k) + q.r * code.delta;
}

double per_qubit_error(double p, double depth, ErrorModel mode) {
    require_probability(p, "error probability p");
    if (!(depth > 0.0) || !std::isfinite(depth)) {
        throw std::invalid_argument("depth must be a finite real > 0");
    }
    if (mode == ErrorModel::kLeading) {
        return std::min(1.0, depth * p);
    }
    // 1 - (1-p)^depth without cancellation for small p.
    return -std::expm1(depth * std::log1p(-p));
}

double block_failure_leading(double q, double c) {
    require_probability(q, "per-qubit error q");
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("failure constant c must be a finite real > 0");
    }
    return c * q * q;
}

double log_top_level_failure_leading(double p, const CodeParameters& code,
                                     const ScheduleQuery& q) {
    require_probability(p, "error probability p");
    if (p == 0.0) {
        throw std::domain_error("log of top-level failure diverges at p = 0");
    }
    const double depth = period_depth(code, q);
    return pow2(q.k) * std::log(code.c * depth * p) - std::log(code.c);
}

double top_level_failure_leading(double p, const CodeParameters& code, const ScheduleQuery& q) {
    require_probability(p, "error probability p");
    if (p == 0.0) {
        period_depth(code, q);  // still reject invalid code/query
        return 0.0;
    }
    return std::exp(log_top_level_failure_leading(p, code, q));
}

bool regime_valid(double p, const CodeParameters& code, const ScheduleQuery& q) {
    require_probability(p, "error probability p");
    return code.c * period_depth(code, q) * p < 1.0;
}

bool threshold_condition(double p, const CodeParameters& code, const ScheduleQuery& q) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("error probability p must lie in (0, 1]");
    }
    const double lhs = log_top_level_failure_leading(p, code, q);
    const double rhs = std::log(q.r * p);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    return lhs <= rhs + kLogEqualityTolerance * scale;
}

ThresholdPoint threshold_value(const CodeParameters& code, const ScheduleQuery& q) {
    const double depth = period_depth(code, q);
    const double two_k = pow2(q.k);
    const double log_p_th =
        (std::log(q.r) - two_k * std::log(depth)) / (two_k - 1.0) - std::log(code.c);
    return ThresholdPoint{q, depth, log_p_th, std::exp(log_p_th)};
}

ThresholdCurve scan_threshold_curve(const CodeParameters& code, int k,
                                    std::span<const double> r_values) {
    if (r_values.empty()) {
        throw std::invalid_argument("empty range: at least one r value is required");
    }
    ThresholdCurve curve;
    curve.code = code;
    curve.k = k;
    curve.points.reserve(r_values.size());
    double previous = 0.0;
    for (double r : r_values) {
        if (!(r > previous)) {
            throw std::invalid_argument("r values must be strictly increasing and > 0");
        }
        previous = r;
        curve.points.push_back(threshold_value(code, ScheduleQuery{k, r}));
    }
    return curve;
}

}  // namespace qthresh::model
