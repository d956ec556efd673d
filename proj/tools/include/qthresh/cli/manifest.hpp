#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qthresh/model.hpp"

namespace qthresh::cli {

/// Record of one file-writing invocation. A manifest is written next to
/// every output file (`<output>.manifest.json`), and `rerun <manifest>`
/// replays the invocation; replays reproduce the outputs byte-identically.
/// Deliberately carries no timestamp or host data: reproducibility of the
/// bytes outranks provenance trivia.
struct RunManifest {
    std::string subcommand;
    nlohmann::json parameters;  // resolved flag values, code parameters inlined
    std::uint64_t seed = 0;     // 0 when the subcommand draws no randomness
    std::string tool_version;
    std::vector<std::string> outputs;  // files the run wrote, manifests excluded
};

nlohmann::json code_to_json(const model::CodeParameters& code);
model::CodeParameters code_from_json(const nlohmann::json& j);

/// `<output_path>.manifest.json`.
std::string manifest_path_for(const std::string& output_path);

/// Serializes with sorted keys and stable number formatting so identical
/// runs write identical bytes. Throws IoError when the file cannot be
/// written.
void write_manifest(const RunManifest& manifest, const std::string& path);

/// Throws IoError when the file cannot be read and std::invalid_argument
/// when it does not hold a manifest.
RunManifest load_manifest(const std::string& path);

}  // namespace qthresh::cli
