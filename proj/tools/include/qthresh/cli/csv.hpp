#pragma once

#include <iosfwd>
#include <vector>

#include "qthresh/model.hpp"
#include "qthresh/oracle.hpp"

namespace qthresh::cli {

struct ScanRow {
    int k = 0;
    double r = 0;
    double depth = 0;
    double p_th = 0;
};

/// Writes the scan CSV: header `k,r,depth,p_th`, one row per point, curves
/// in the given order (callers keep them sorted by k), rows within a curve
/// ordered by increasing r. UTF-8, '\n' line endings.
void write_scan_csv(std::ostream& out, const std::vector<model::ThresholdCurve>& curves);

/// Parses a CSV produced by write_scan_csv. Throws std::runtime_error naming
/// the offending line on any schema violation.
std::vector<ScanRow> parse_scan_csv(std::istream& in);

/// Writes the one-row simulate CSV with header
/// `p,k,r,trials,failures,estimate,ci_low,ci_high,exact,seed`.
void write_simulate_csv(std::ostream& out, const oracle::SimulationConfig& cfg,
                        const oracle::FailureEstimate& estimate, double exact);

}  // namespace qthresh::cli
