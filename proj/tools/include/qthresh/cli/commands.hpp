#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qthresh/cli/registry.hpp"
#include "qthresh/model.hpp"
#include "qthresh/oracle.hpp"

namespace qthresh::cli {

/// Filesystem failure (unwritable output, unreadable input). Mapped to exit
/// code 3 by the executable; usage errors surface as std::invalid_argument
/// and map to exit code 2.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ScanRequest {
    model::CodeParameters code;
    std::vector<int> k_list;
    double r_min = 1;
    double r_max = 20;
    double r_step = 1;
    std::string output;  // CSV path, required
    std::string svg;     // optional plot path, empty = skip
};

/// Each command writes its report to `out`, returns the process exit code on
/// success, and throws (std::invalid_argument -> 2, IoError -> 3) on failure,
/// so they are callable in-process by tests without spawning the binary.
int cmd_threshold(const model::CodeParameters& code, int k, double r, std::ostream& out);
int cmd_optimal_period(const model::CodeParameters& code, int k, std::ostream& out);
int cmd_scan(const ScanRequest& request, std::ostream& out);
int cmd_simulate(const oracle::SimulationConfig& cfg, const std::string& output,
                 std::ostream& out);
int cmd_verify(const std::vector<CodeRegistryEntry>& registry, bool quick, std::ostream& out);
int cmd_codes_list(const std::vector<CodeRegistryEntry>& registry, std::ostream& out);
int cmd_rerun(const std::string& manifest_path, std::ostream& out);

}  // namespace qthresh::cli
