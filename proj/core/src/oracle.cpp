#include "qthresh/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qthresh/rng.hpp"

namespace qthresh::oracle {

namespace {

constexpr double kWilsonZ99 = 2.5758;

struct TrialSampler {
    double leaf_probability;  // collapsed mode
    long depth_draws;         // exact-depth mode
    double p;
    int m;
    BottomLayerMode mode;

    bool leaf_fails(Xoshiro256pp& rng) const {
        if (mode == BottomLayerMode::kCollapsed) {
            return rng.bernoulli(leaf_probability);
        }
        bool failed = false;
        for (long step = 0; step < depth_draws; ++step) {
            if (rng.bernoulli(p)) {
                failed = true;
                break;
            }
        }
        return failed;
    }

    bool block_fails(Xoshiro256pp& rng, int level) const {
        if (level == 0) return leaf_fails(rng);
        int failed_children = 0;
        for (int child = 0; child < m; ++child) {
            failed_children += block_fails(rng, level - 1) ? 1 : 0;
            if (failed_children >= 2) return true;
        }
        return false;
    }
};

}  // namespace

void SimulationConfig::validate() const {
    code.validate();
    query.validate();
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("error probability p must lie in [0, 1]");
    }
    if (!query.r_is_integer() || query.r < 1.0) {
        throw std::invalid_argument("simulation requires an integer period r >= 1");
    }
    if (trials < 1) {
        throw std::invalid_argument("trial count must be >= 1");
    }
    if (bottom_mode == BottomLayerMode::kExactDepth) {
        const double depth = model::period_depth(code, query);
        if (std::abs(depth - std::round(depth)) > 1e-9) {
            throw std::invalid_argument(
                "exact-depth sampling requires an integral period depth; "
                "use collapsed mode for fractional depths");
        }
    }
}

double block_failure_exact(double q, int m) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("per-qubit error q must lie in [0, 1]");
    }
    if (m < 2 || m > 1024) {
        throw std::invalid_argument("block size m must lie in [2, 1024]");
    }
    // P(X >= 2) for X ~ Binomial(m, q). Large q: the complement
    // 1 - P(0) - P(1) = 1 - (1-q)^(m-1) (1 + (m-1) q) subtracts a small
    // quantity from 1, so it is accurate and monotone there. Small q: that
    // difference cancels catastrophically, so sum the tail term by term
    // instead; every term is positive and relative accuracy is preserved.
    if (q >= 0.5) {
        const double head = std::pow(1.0 - q, m - 1) * (1.0 + (m - 1) * q);
        return 1.0 - std::min(head, 1.0);
    }
    double binom = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);  // C(m, 2)
    double sum = 0.0;
    for (int j = 2; j <= m; ++j) {
        sum += binom * std::pow(q, j) * std::pow(1.0 - q, m - j);
        binom = binom * static_cast<double>(m - j) / static_cast<double>(j + 1);
    }
    return std::min(sum, 1.0);
}

double recursive_failure_exact(double p, const model::CodeParameters& code,
                               const model::ScheduleQuery& q) {
    const double depth = model::period_depth(code, q);
    double eps = model::per_qubit_error(p, depth, model::ErrorModel::kExact);
    for (int level = 0; level < q.k; ++level) {
        eps = block_failure_exact(eps, code.m);
    }
    return eps;
}

std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials) {
    if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
    if (failures > trials) throw std::invalid_argument("failures must not exceed trials");
    const double z = kWilsonZ99;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(failures) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (phat + 0.5 * z2n) / denom;
    const double half =
        (z / denom) * std::sqrt(phat * (1.0 - phat) / n + 0.25 * z2n / n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

FailureEstimate simulate_failure(const SimulationConfig& cfg) {
    cfg.validate();
    const double depth = model::period_depth(cfg.code, cfg.query);

    TrialSampler sampler;
    sampler.mode = cfg.bottom_mode;
    sampler.m = cfg.code.m;
    sampler.p = cfg.p;
    sampler.depth_draws = std::lround(depth);
    sampler.leaf_probability = model::per_qubit_error(cfg.p, depth, model::ErrorModel::kExact);

    const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t failed = 0;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            Xoshiro256pp rng(cfg.seed, trial);
            failed += sampler.block_fails(rng, cfg.query.k) ? 1 : 0;
        }
        return failed;
    };

    std::uint64_t worker_count = cfg.threads == 0
                                     ? std::max(1u, std::thread::hardware_concurrency())
                                     : cfg.threads;
    worker_count = std::min<std::uint64_t>(worker_count, cfg.trials);

    std::uint64_t failures = 0;
    if (worker_count <= 1) {
        failures = run_range(0, cfg.trials);
    } else {
        std::vector<std::uint64_t> counts(worker_count, 0);
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        const std::uint64_t chunk = cfg.trials / worker_count;
        const std::uint64_t remainder = cfg.trials % worker_count;
        std::uint64_t begin = 0;
        for (std::uint64_t w = 0; w < worker_count; ++w) {
            const std::uint64_t end = begin + chunk + (w < remainder ? 1 : 0);
            workers.emplace_back(
                [&, w, begin, end]() { counts[w] = run_range(begin, end); });
            begin = end;
        }
        for (auto& worker : workers) worker.join();
        for (std::uint64_t count : counts) failures += count;
    }

    FailureEstimate estimate;
    estimate.failures = failures;
    estimate.trials = cfg.trials;
    estimate.estimate = static_cast<double>(failures) / static_cast<double>(cfg.trials);
    const auto [low, high] = wilson_interval(failures, cfg.trials);
    estimate.ci_low = low;
    estimate.ci_high = high;
    return estimate;
}

}  // namespace qthresh::oracle
