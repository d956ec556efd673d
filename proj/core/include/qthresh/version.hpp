#pragma once

namespace qthresh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qthresh
