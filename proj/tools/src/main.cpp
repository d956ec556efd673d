#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qthresh/cli/commands.hpp"
#include "qthresh/cli/registry.hpp"
#include "qthresh/oracle.hpp"
#include "qthresh/version.hpp"

namespace {

using qthresh::cli::CodeRegistryEntry;

struct CodeSelection {
    std::string name = "steane";
    std::string config;  // JSON file path; overrides --code when set
};

void add_code_flags(CLI::App* sub, CodeSelection& selection) {
    sub->add_option("--code", selection.name, "registered code name")
        ->default_str("steane");
    sub->add_option("--config", selection.config,
                    "JSON code config (keys: name, m, alpha, beta, delta, optional c); "
                    "overrides --code");
}

qthresh::model::CodeParameters resolve_code(const CodeSelection& selection) {
    if (!selection.config.empty()) {
        qthresh::model::CodeParameters code = qthresh::cli::load_code_config(selection.config);
        if (!code.meets_model_minimum()) {
            std::cerr << "warning: m = " << code.m
                      << " is below the documented analytic-model minimum (m >= 3); "
                         "exact-oracle results remain valid\n";
        }
        return code;
    }
    return qthresh::cli::find_code(selection.name).params;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"threshold analysis for concatenated quantum error-correcting codes"};
    app.set_version_flag("--version", qthresh::kVersion);
    app.require_subcommand(1);
    int rc = 0;

    // threshold
    CodeSelection threshold_code;
    int threshold_k = 0;
    double threshold_r = 0;
    CLI::App* threshold = app.add_subcommand("threshold", "threshold value p_th at (k, r)");
    add_code_flags(threshold, threshold_code);
    threshold->add_option("--k", threshold_k, "concatenation level (>= 1)")->required();
    threshold->add_option("--r", threshold_r, "error-correction period (real >= 1)")->required();
    threshold->callback([&] {
        rc = qthresh::cli::cmd_threshold(resolve_code(threshold_code), threshold_k, threshold_r,
                                         std::cout);
    });

    // optimal-period
    CodeSelection optimal_code;
    int optimal_k = 0;
    CLI::App* optimal =
        app.add_subcommand("optimal-period", "period maximizing p_th at fixed k");
    add_code_flags(optimal, optimal_code);
    optimal->add_option("--k", optimal_k, "concatenation level (>= 1)")->required();
    optimal->callback([&] {
        rc = qthresh::cli::cmd_optimal_period(resolve_code(optimal_code), optimal_k, std::cout);
    });

    // scan
    CodeSelection scan_code;
    qthresh::cli::ScanRequest scan_request;
    CLI::App* scan = app.add_subcommand("scan", "p_th curves over a period range, CSV out");
    add_code_flags(scan, scan_code);
    scan->add_option("--k", scan_request.k_list, "comma-separated concatenation levels")
        ->required()
        ->delimiter(',');
    scan->add_option("--r-min", scan_request.r_min, "first period")->capture_default_str();
    scan->add_option("--r-max", scan_request.r_max, "last period")->capture_default_str();
    scan->add_option("--r-step", scan_request.r_step, "period increment")->capture_default_str();
    scan->add_option("-o,--output", scan_request.output, "CSV output path")->required();
    scan->add_option("--svg", scan_request.svg, "optional SVG plot path");
    scan->callback([&] {
        scan_request.code = resolve_code(scan_code);
        rc = qthresh::cli::cmd_scan(scan_request, std::cout);
    });

    // simulate
    CodeSelection simulate_code;
    qthresh::oracle::SimulationConfig simulate_cfg;
    std::string simulate_mode = "collapsed";
    std::string simulate_output;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo failure estimate vs exact recursion");
    add_code_flags(simulate, simulate_code);
    simulate->add_option("--k", simulate_cfg.query.k, "concatenation level (>= 1)")->required();
    simulate->add_option("--r", simulate_cfg.query.r, "error-correction period (integer >= 1)")
        ->required();
    simulate->add_option("--p", simulate_cfg.p, "physical error probability in [0, 1]")
        ->required();
    simulate->add_option("--trials", simulate_cfg.trials, "Monte Carlo trials")
        ->capture_default_str();
    simulate->add_option("--seed", simulate_cfg.seed, "RNG seed")->capture_default_str();
    simulate
        ->add_option("--bottom-mode", simulate_mode, "leaf sampling: collapsed | exact-depth")
        ->check(CLI::IsMember({"collapsed", "exact-depth"}))
        ->capture_default_str();
    simulate->add_option("--threads", simulate_cfg.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    simulate->add_option("-o,--output", simulate_output, "optional CSV output path");
    simulate->callback([&] {
        simulate_cfg.code = resolve_code(simulate_code);
        simulate_cfg.bottom_mode = simulate_mode == "collapsed"
                                       ? qthresh::oracle::BottomLayerMode::kCollapsed
                                       : qthresh::oracle::BottomLayerMode::kExactDepth;
        rc = qthresh::cli::cmd_simulate(simulate_cfg, simulate_output, std::cout);
    });

    // verify
    CodeSelection verify_code;
    bool verify_quick = false;
    CLI::App* verify = app.add_subcommand("verify", "run the cross-check suite");
    verify->add_flag("--quick", verify_quick, "skip the Monte Carlo determinism check");
    verify->add_option("--config", verify_code.config,
                       "JSON code config to verify alongside the built-in registry; "
                       "validation failures are reported, not fatal");
    verify->callback([&] {
        std::vector<CodeRegistryEntry> registry = qthresh::cli::builtin_registry();
        if (!verify_code.config.empty()) {
            registry.push_back({qthresh::cli::load_code_config_raw(verify_code.config),
                                "loaded from " + verify_code.config});
        }
        rc = qthresh::cli::cmd_verify(registry, verify_quick, std::cout);
    });

    // codes list
    CLI::App* codes = app.add_subcommand("codes", "registry operations");
    codes->require_subcommand(1);
    CLI::App* codes_list = codes->add_subcommand("list", "print the registry");
    codes_list->callback(
        [&] { rc = qthresh::cli::cmd_codes_list(qthresh::cli::builtin_registry(), std::cout); });

    // rerun
    std::string rerun_manifest;
    CLI::App* rerun = app.add_subcommand("rerun", "replay a run from its manifest");
    rerun->add_option("manifest", rerun_manifest, "path to a .manifest.json file")->required();
    rerun->callback([&] { rc = qthresh::cli::cmd_rerun(rerun_manifest, std::cout); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; flag errors are usage errors
    } catch (const qthresh::cli::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
