#include "qthresh/cli/csv.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qthresh/cli/format.hpp"

namespace qthresh::cli {

namespace {

constexpr const char* kScanHeader = "k,r,depth,p_th";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

[[noreturn]] void csv_error(std::size_t line_number, const std::string& what) {
    throw std::runtime_error("scan CSV line " + std::to_string(line_number) + ": " + what);
}

}  // namespace

void write_scan_csv(std::ostream& out, const std::vector<model::ThresholdCurve>& curves) {
    out << kScanHeader << '\n';
    for (const model::ThresholdCurve& curve : curves) {
        for (const model::ThresholdPoint& point : curve.points) {
            out << curve.k << ',' << format_sci(point.query.r) << ',' << format_sci(point.depth)
                << ',' << format_sci(point.p_th) << '\n';
        }
    }
}

std::vector<ScanRow> parse_scan_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("scan CSV is empty");
    }
    if (line != kScanHeader) {
        throw std::runtime_error(std::string("scan CSV header must be exactly '") + kScanHeader +
                                 "', got '" + line + "'");
    }
    std::vector<ScanRow> rows;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;  // tolerate a trailing blank line
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 4) {
            csv_error(line_number,
                      "expected 4 fields, got " + std::to_string(fields.size()));
        }
        try {
            ScanRow row;
            std::size_t used = 0;
            row.k = std::stoi(fields[0], &used);
            if (used != fields[0].size()) csv_error(line_number, "malformed k");
            row.r = std::stod(fields[1], &used);
            if (used != fields[1].size()) csv_error(line_number, "malformed r");
            row.depth = std::stod(fields[2], &used);
            if (used != fields[2].size()) csv_error(line_number, "malformed depth");
            row.p_th = std::stod(fields[3], &used);
            if (used != fields[3].size()) csv_error(line_number, "malformed p_th");
            rows.push_back(row);
        } catch (const std::invalid_argument&) {
            csv_error(line_number, "non-numeric field");
        } catch (const std::out_of_range&) {
            csv_error(line_number, "field out of numeric range");
        }
    }
    return rows;
}

void write_simulate_csv(std::ostream& out, const oracle::SimulationConfig& cfg,
                        const oracle::FailureEstimate& estimate, double exact) {
    out << "p,k,r,trials,failures,estimate,ci_low,ci_high,exact,seed\n";
    out << format_sci(cfg.p) << ',' << cfg.query.k << ','
        << static_cast<long long>(std::llround(cfg.query.r)) << ',' << cfg.trials << ','
        << estimate.failures << ',' << format_sci(estimate.estimate) << ','
        << format_sci(estimate.ci_low) << ',' << format_sci(estimate.ci_high) << ','
        << format_sci(exact) << ',' << cfg.seed << '\n';
}

}  // namespace qthresh::cli
