#include "qthresh/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qthresh/cli/csv.hpp"
#include "qthresh/cli/format.hpp"
#include "qthresh/cli/manifest.hpp"
#include "qthresh/cli/svg.hpp"
#include "qthresh/cli/verify.hpp"
#include "qthresh/optimize.hpp"
#include "qthresh/version.hpp"

namespace qthresh::cli {

namespace {

std::string code_summary(const model::CodeParameters& code) {
    std::ostringstream line;
    line << code.name << " (m=" << code.m << ", alpha=" << code.alpha << ", beta=" << code.beta
         << ", delta=" << code.delta << ", c=" << code.c << ")";
    return line.str();
}

const char* bottom_mode_name(oracle::BottomLayerMode mode) {
    return mode == oracle::BottomLayerMode::kCollapsed ? "collapsed" : "exact-depth";
}

oracle::BottomLayerMode bottom_mode_from_name(const std::string& name) {
    if (name == "collapsed") return oracle::BottomLayerMode::kCollapsed;
    if (name == "exact-depth") return oracle::BottomLayerMode::kExactDepth;
    throw std::invalid_argument("bottom mode must be 'collapsed' or 'exact-depth', got '" + name +
                                "'");
}

// The command surface follows circuit semantics, where at least one
// operation happens per period; the analytic library itself accepts any
// real r > 0 (the continuous optimum can fall below 1 at deep k).
void require_period_at_least_one(double r) {
    if (!(r >= 1.0)) {
        throw std::invalid_argument("error-correction period r must be >= 1");
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open output '" + path + "' for writing");
    }
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw IoError("failed writing output '" + path + "'");
    }
}

std::string deviation_cell(double value) {
    if (std::isnan(value)) return "-";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", value);
    return buf;
}

}  // namespace

int cmd_threshold(const model::CodeParameters& code, int k, double r, std::ostream& out) {
    code.validate();
    require_period_at_least_one(r);
    const model::ScheduleQuery query{k, r};
    query.validate();

    const model::ThresholdPoint point = model::threshold_value(code, query);
    const double budget = code.c * point.depth * point.p_th;  // c*L*p at p = p_th
    out << "code: " << code_summary(code) << '\n';
    out << "k: " << query.k << '\n';
    out << "r: " << format_sci(query.r) << '\n';
    out << "L: " << format_sci(point.depth) << '\n';
    out << "p_th: " << format_sci(point.p_th) << '\n';
    out << "log_p_th: " << format_sci(point.log_p_th) << '\n';
    if (budget < 1.0) {
        out << "regime: c*L*p_th = " << format_sci(budget)
            << " < 1, leading-order model self-consistent at threshold\n";
    } else {
        out << "regime: c*L*p_th = " << format_sci(budget)
            << " >= 1, leading-order model breaks down at threshold\n";
    }
    return 0;
}

int cmd_optimal_period(const model::CodeParameters& code, int k, std::ostream& out) {
    code.validate();
    const optimize::OptimalPeriod best = optimize::optimal_period_closed_form(code, k);
    out << "code: " << code_summary(code) << '\n';
    out << "k: " << best.k << '\n';
    out << "r_continuous: " << format_sci(best.r_continuous) << '\n';
    out << "r_integer: " << best.r_integer << '\n';
    out << "p_th_at_continuous: " << format_sci(best.p_th_at_continuous) << '\n';
    out << "p_th_at_integer: " << format_sci(best.p_th_at_integer) << '\n';
    out << "concavity_ok: " << (best.concavity_ok ? "true" : "false") << '\n';
    return 0;
}

int cmd_scan(const ScanRequest& request, std::ostream& out) {
    request.code.validate();
    if (request.k_list.empty()) {
        throw std::invalid_argument("at least one concatenation level k is required");
    }
    if (!(request.r_min > 0) || !std::isfinite(request.r_min)) {
        throw std::invalid_argument("r-min must be a finite real > 0");
    }
    if (!(request.r_step > 0) || !std::isfinite(request.r_step)) {
        throw std::invalid_argument("r-step must be a finite real > 0");
    }
    if (!(request.r_max >= request.r_min) || !std::isfinite(request.r_max)) {
        throw std::invalid_argument("r-max must be a finite real >= r-min");
    }

    // Rows are ordered by k then r; duplicate levels would repeat rows.
    std::vector<int> levels = request.k_list;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const double span = (request.r_max - request.r_min) / request.r_step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    if (count > 1000000) {
        throw std::invalid_argument("scan range produces more than 1000000 rows per level");
    }
    std::vector<double> r_values(count);
    for (std::size_t i = 0; i < count; ++i) {
        r_values[i] = request.r_min + static_cast<double>(i) * request.r_step;
    }

    std::vector<model::ThresholdCurve> curves;
    curves.reserve(levels.size());
    for (int k : levels) {
        curves.push_back(model::scan_threshold_curve(request.code, k, r_values));
    }

    std::ofstream csv = open_output(request.output);
    write_scan_csv(csv, curves);
    finish_output(csv, request.output);

    RunManifest manifest;
    manifest.subcommand = "scan";
    manifest.parameters = {{"code", code_to_json(request.code)}, {"k_list", levels},
                           {"r_min", request.r_min},             {"r_max", request.r_max},
                           {"r_step", request.r_step},           {"output", request.output},
                           {"svg", request.svg}};
    manifest.seed = 0;
    manifest.tool_version = kVersion;
    manifest.outputs = {request.output};

    if (!request.svg.empty()) {
        manifest.outputs.push_back(request.svg);
        std::ofstream svg = open_output(request.svg);
        write_scan_svg(svg, request.code.name, curves);
        finish_output(svg, request.svg);
    }
    for (const std::string& produced : manifest.outputs) {
        write_manifest(manifest, manifest_path_for(produced));
    }

    out << "wrote " << levels.size() * count << " rows (" << levels.size() << " levels x "
        << count << " periods) to " << request.output << '\n';
    if (!request.svg.empty()) {
        out << "wrote plot to " << request.svg << '\n';
    }
    out << "manifest: " << manifest_path_for(request.output) << '\n';
    return 0;
}

int cmd_simulate(const oracle::SimulationConfig& cfg, const std::string& output,
                 std::ostream& out) {
    cfg.validate();
    const oracle::FailureEstimate estimate = oracle::simulate_failure(cfg);
    const double exact = oracle::recursive_failure_exact(cfg.p, cfg.code, cfg.query);
    const bool in_ci = estimate.ci_low <= exact && exact <= estimate.ci_high;

    out << "code: " << code_summary(cfg.code) << '\n';
    out << "p: " << format_sci(cfg.p) << '\n';
    out << "k: " << cfg.query.k << '\n';
    out << "r: " << static_cast<long long>(std::llround(cfg.query.r)) << '\n';
    out << "trials: " << cfg.trials << '\n';
    out << "seed: " << cfg.seed << '\n';
    out << "bottom_mode: " << bottom_mode_name(cfg.bottom_mode) << '\n';
    out << "failures: " << estimate.failures << '\n';
    out << "estimate: " << format_sci(estimate.estimate) << '\n';
    out << "ci99: [" << format_sci(estimate.ci_low) << ", " << format_sci(estimate.ci_high)
        << "] (" << estimate.method << ")\n";
    out << "exact: " << format_sci(exact) << '\n';
    out << "exact_in_ci: " << (in_ci ? "true" : "false") << '\n';

    if (!output.empty()) {
        std::ofstream csv = open_output(output);
        write_simulate_csv(csv, cfg, estimate, exact);
        finish_output(csv, output);

        RunManifest manifest;
        manifest.subcommand = "simulate";
        manifest.parameters = {{"code", code_to_json(cfg.code)},
                               {"k", cfg.query.k},
                               {"r", cfg.query.r},
                               {"p", cfg.p},
                               {"trials", cfg.trials},
                               {"seed", cfg.seed},
                               {"bottom_mode", bottom_mode_name(cfg.bottom_mode)},
                               {"threads", cfg.threads},
                               {"output", output}};
        manifest.seed = cfg.seed;
        manifest.tool_version = kVersion;
        manifest.outputs = {output};
        write_manifest(manifest, manifest_path_for(output));
        out << "wrote " << output << '\n';
        out << "manifest: " << manifest_path_for(output) << '\n';
    }
    return 0;
}

int cmd_verify(const std::vector<CodeRegistryEntry>& registry, bool quick, std::ostream& out) {
    const std::vector<CheckResult> results = run_verification(registry, quick);

    out << "verification (" << (quick ? "quick" : "full") << "), codes:";
    for (const CodeRegistryEntry& entry : registry) out << ' ' << entry.params.name;
    out << '\n';
    out << std::left << std::setw(24) << "check" << std::setw(8) << "status" << std::setw(15)
        << "max_deviation" << std::setw(15) << "tolerance" << '\n';

    std::size_t passed = 0;
    for (const CheckResult& result : results) {
        out << std::left << std::setw(24) << result.name << std::setw(8)
            << (result.passed ? "PASS" : "FAIL") << std::setw(15)
            << deviation_cell(result.deviation) << std::setw(15)
            << deviation_cell(result.tolerance) << '\n';
        if (!result.detail.empty()) {
            std::istringstream lines(result.detail);
            std::string line;
            while (std::getline(lines, line)) {
                out << "    " << line << '\n';
            }
        }
        if (result.passed) ++passed;
    }
    out << "result: " << passed << '/' << results.size() << " checks passed\n";
    return passed == results.size() ? 0 : 1;
}

int cmd_codes_list(const std::vector<CodeRegistryEntry>& registry, std::ostream& out) {
    out << "registered codes:\n";
    for (const CodeRegistryEntry& entry : registry) {
        out << "  " << code_summary(entry.params) << '\n';
        if (!entry.note.empty()) {
            out << "    " << entry.note << '\n';
        }
        if (!entry.params.meets_model_minimum()) {
            out << "    note: m < 3 is outside the documented analytic-model range\n";
        }
    }
    return 0;
}

int cmd_rerun(const std::string& manifest_path, std::ostream& out) {
    const RunManifest manifest = load_manifest(manifest_path);
    try {
        if (manifest.subcommand == "scan") {
            ScanRequest request;
            request.code = code_from_json(manifest.parameters.at("code"));
            request.k_list = manifest.parameters.at("k_list").get<std::vector<int>>();
            request.r_min = manifest.parameters.at("r_min").get<double>();
            request.r_max = manifest.parameters.at("r_max").get<double>();
            request.r_step = manifest.parameters.at("r_step").get<double>();
            request.output = manifest.parameters.at("output").get<std::string>();
            request.svg = manifest.parameters.at("svg").get<std::string>();
            return cmd_scan(request, out);
        }
        if (manifest.subcommand == "simulate") {
            oracle::SimulationConfig cfg;
            cfg.code = code_from_json(manifest.parameters.at("code"));
            cfg.query.k = manifest.parameters.at("k").get<int>();
            cfg.query.r = manifest.parameters.at("r").get<double>();
            cfg.p = manifest.parameters.at("p").get<double>();
            cfg.trials = manifest.parameters.at("trials").get<std::uint64_t>();
            cfg.seed = manifest.parameters.at("seed").get<std::uint64_t>();
            cfg.bottom_mode =
                bottom_mode_from_name(manifest.parameters.at("bottom_mode").get<std::string>());
            cfg.threads = manifest.parameters.at("threads").get<unsigned>();
            const std::string output = manifest.parameters.at("output").get<std::string>();
            return cmd_simulate(cfg, output, out);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("manifest " + manifest_path + ": " + e.what());
    }
    throw std::invalid_argument("manifest subcommand '" + manifest.subcommand +
                                "' writes no files; nothing to rerun");
}

}  // namespace qthresh::cli
