#pragma once

#include <string>
#include <vector>

#include "qthresh/model.hpp"

namespace qthresh::cli {

/// A named code known to the tool, with a note on where its constants come
/// from so `codes list` output is self-explanatory.
struct CodeRegistryEntry {
    model::CodeParameters params;
    std::string note;
};

/// Built-in registry. Ships the seven-qubit code ("steane") with the depth
/// constants used throughout: m=7, alpha=4, beta=10, delta=2, c=21.
const std::vector<CodeRegistryEntry>& builtin_registry();

/// Looks up a built-in code by name. Throws std::invalid_argument listing
/// the known names when the lookup fails.
const CodeRegistryEntry& find_code(const std::string& name);

/// Parses a JSON code config with keys name, m, alpha, beta, delta and
/// optional c (defaults to m(m-1)/2) without enforcing the parameter
/// invariants. Used by `verify`, which reports validation failures as check
/// results instead of refusing the input outright.
model::CodeParameters load_code_config_raw(const std::string& path);

/// load_code_config_raw plus validation. Parse errors carry the line/column
/// context reported by the JSON parser; validation errors name the violated
/// constraint. m = 2 passes validation (the exact block oracle supports it)
/// but callers should surface meets_model_minimum() as a warning.
model::CodeParameters load_code_config(const std::string& path);

}  // namespace qthresh::cli
