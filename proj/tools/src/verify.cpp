#include "qthresh/cli/verify.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "qthresh/model.hpp"
#include "qthresh/optimize.hpp"
#include "qthresh/oracle.hpp"

namespace qthresh::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Append `line` to a newline-separated detail blob.
void add_detail(std::string& detail, const std::string& line) {
    if (!detail.empty()) detail += '\n';
    detail += line;
}

CheckResult check_registry_valid(const std::vector<CodeRegistryEntry>& registry,
                                 std::vector<model::CodeParameters>& valid) {
    CheckResult result{"registry-valid", true, kNaN, kNaN, ""};
    for (const CodeRegistryEntry& entry : registry) {
        try {
            entry.params.validate();
            if (!entry.params.meets_model_minimum()) {
                add_detail(result.detail, entry.params.name +
                                              ": m < 3 accepted for the exact block oracle "
                                              "only; the analytic model needs m >= 3");
            }
            valid.push_back(entry.params);
        } catch (const std::exception& e) {
            result.passed = false;
            add_detail(result.detail, entry.params.name + ": " + e.what());
        }
    }
    return result;
}

// Top-level leading-order failure must equal the k-fold iterate of
// e -> c e^2 from e0 = L p, compared in log space.
CheckResult check_composition_law(const std::vector<model::CodeParameters>& codes) {
    CheckResult result{"composition-law", true, 0.0, 1e-12, ""};
    for (const model::CodeParameters& code : codes) {
        for (int k = 1; k <= 10; ++k) {
            const model::ScheduleQuery query{k, 3.0};
            const double depth = model::period_depth(code, query);
            const double p = 0.5 / (code.c * depth);  // keeps c L p = 1/2
            double log_eps = std::log(depth * p);
            for (int level = 0; level < k; ++level) {
                log_eps = std::log(code.c) + 2.0 * log_eps;
            }
            const double log_direct = model::log_top_level_failure_leading(p, code, query);
            const double deviation = std::fabs(log_eps - log_direct) / std::fabs(log_direct);
            result.deviation = std::max(result.deviation, deviation);
        }
    }
    result.passed = result.deviation <= result.tolerance;
    return result;
}

// Doubling c exactly halves the threshold: p_th scales as 1/c.
CheckResult check_c_scaling(const std::vector<model::CodeParameters>& codes) {
    CheckResult result{"c-scaling", true, 0.0, 1e-14, ""};
    for (const model::CodeParameters& code : codes) {
        model::CodeParameters doubled = code;
        doubled.c = 2.0 * code.c;
        for (int k = 1; k <= 10; ++k) {
            for (double r : {1.0, 2.0, 5.0, 10.0, 20.0}) {
                const model::ScheduleQuery query{k, r};
                const double base = model::threshold_value(code, query).p_th;
                const double halved = model::threshold_value(doubled, query).p_th;
                const double deviation = std::fabs(2.0 * halved / base - 1.0);
                result.deviation = std::max(result.deviation, deviation);
            }
        }
    }
    result.passed = result.deviation <= result.tolerance;
    return result;
}

// oracle::block_failure_exact(q, m) / (C(m,2) q^2) -> 1 as q -> 0. The probe q
// shrinks with m so the next-order term (~ m q) stays inside the tolerance.
CheckResult check_asymptotic_agreement(const std::vector<model::CodeParameters>& codes) {
    CheckResult result{"asymptotic-agreement", true, 0.0, 2e-3, ""};
    for (const model::CodeParameters& code : codes) {
        const double q = 1e-4 * 7.0 / code.m;
        const double ratio =
            oracle::block_failure_exact(q, code.m) /
            (model::CodeParameters::default_c(code.m) * q * q);
        result.deviation = std::max(result.deviation, std::fabs(ratio - 1.0));
    }
    result.passed = result.deviation <= result.tolerance;
    result.detail = "ratio to C(m,2) q^2 at q = 1e-4 * 7/m";
    return result;
}

// The exact recursion tracks the leading-order model to within 20 L p in
// relative terms while the perturbative regime holds. The reported deviation
// is normalized by that per-case bound, so the tolerance is 1.
CheckResult check_exact_vs_leading(const std::vector<model::CodeParameters>& codes) {
    CheckResult result{"exact-vs-leading", true, 0.0, 1.0, ""};
    for (const model::CodeParameters& code : codes) {
        for (int k = 1; k <= 3; ++k) {
            const model::ScheduleQuery query{k, 7.0};
            for (double p : {1e-5, 1e-4, 5e-4}) {
                if (!model::regime_valid(p, code, query)) continue;
                const double leading = model::top_level_failure_leading(p, code, query);
                if (leading <= 0.0) continue;
                const double exact = oracle::recursive_failure_exact(p, code, query);
                const double bound = 20.0 * model::period_depth(code, query) * p;
                const double normalized = std::fabs(exact / leading - 1.0) / bound;
                result.deviation = std::max(result.deviation, normalized);
            }
        }
    }
    result.passed = result.deviation <= result.tolerance;
    result.detail = "|exact/leading - 1| normalized by the 20*L*p bound";
    return result;
}

// d(log p_th)/dr vanishes at the closed-form optimum; measured as the
// dimensionless r* * derivative via a central difference.
CheckResult check_stationarity(const std::vector<model::CodeParameters>& codes) {
    CheckResult result{"stationarity", true, 0.0, 1e-6, ""};
    for (const model::CodeParameters& code : codes) {
        for (int k = 1; k <= 6; ++k) {
            const double r_star = optimize::optimal_period_closed_form(code, k).r_continuous;
            const double h = r_star * 1e-5;
            const double hi = model::threshold_value(code, {k, r_star + h}).log_p_th;
            const double lo = model::threshold_value(code, {k, r_star - h}).log_p_th;
            const double deviation = std::fabs((hi - lo) / (2.0 * h) * r_star);
            result.deviation = std::max(result.deviation, deviation);
        }
    }
    result.passed = result.deviation <= result.tolerance;
    return result;
}

CheckResult check_concavity(const std::vector<model::CodeParameters>& codes) {
    CheckResult result{"concavity", true, kNaN, kNaN, ""};
    for (const model::CodeParameters& code : codes) {
        for (int k = 1; k <= 6; ++k) {
            if (!optimize::verify_concavity(code, k)) {
                result.passed = false;
                add_detail(result.detail, code.name + ": second difference not negative at k=" +
                                              std::to_string(k));
            }
        }
    }
    return result;
}

// Identical configs must give identical failure counts, and the count must
// not depend on the thread split.
CheckResult check_mc_determinism(const std::vector<model::CodeParameters>& codes) {
    CheckResult result{"mc-determinism", true, 0.0, 0.0, ""};
    if (codes.empty()) return result;
    oracle::SimulationConfig cfg;
    cfg.p = 1e-2;
    cfg.code = codes.front();
    cfg.query = {1, 3.0};
    cfg.trials = 20000;
    cfg.seed = 7;
    cfg.bottom_mode = oracle::BottomLayerMode::kCollapsed;

    cfg.threads = 1;
    const std::uint64_t serial = oracle::simulate_failure(cfg).failures;
    const std::uint64_t repeat = oracle::simulate_failure(cfg).failures;
    cfg.threads = 4;
    const std::uint64_t parallel = oracle::simulate_failure(cfg).failures;

    const std::uint64_t diff = std::max(serial > repeat ? serial - repeat : repeat - serial,
                                        serial > parallel ? serial - parallel : parallel - serial);
    result.deviation = static_cast<double>(diff);
    result.passed = diff == 0;
    std::ostringstream detail;
    detail << "failure counts: serial " << serial << ", repeat " << repeat << ", 4 threads "
           << parallel;
    result.detail = detail.str();
    return result;
}

}  // namespace

std::vector<CheckResult> run_verification(const std::vector<CodeRegistryEntry>& registry,
                                          bool quick) {
    std::vector<CheckResult> results;
    std::vector<model::CodeParameters> valid;
    results.push_back(check_registry_valid(registry, valid));
    results.push_back(check_composition_law(valid));
    results.push_back(check_c_scaling(valid));
    results.push_back(check_asymptotic_agreement(valid));
    results.push_back(check_exact_vs_leading(valid));
    results.push_back(check_stationarity(valid));
    results.push_back(check_concavity(valid));
    if (!quick) {
        results.push_back(check_mc_determinism(valid));
    }
    return results;
}

}  // namespace qthresh::cli
