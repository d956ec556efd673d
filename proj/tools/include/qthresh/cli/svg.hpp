#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qthresh/model.hpp"

namespace qthresh::cli {

/// Renders the threshold curves as a self-contained SVG document: one
/// polyline per concatenation level, linear r on the horizontal axis,
/// log-scaled p_th on the vertical axis, axis labels and a per-k legend.
/// No external assets, fonts, or scripts.
void write_scan_svg(std::ostream& out, const std::string& code_name,
                    const std::vector<model::ThresholdCurve>& curves);

}  // namespace qthresh::cli
