#pragma once

#include <cstdio>
#include <string>

namespace qthresh::cli {

/// Fixed scientific form used for every floating-point value the tool emits:
/// 17 significant digits, enough to round-trip any IEEE double through text
/// exactly and stable across runs, which golden-file comparisons depend on.
inline std::string format_sci(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    return buf;
}

}  // namespace qthresh::cli
