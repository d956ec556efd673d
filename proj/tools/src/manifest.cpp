#include "qthresh/cli/manifest.hpp"

#include <fstream>

#include "qthresh/cli/commands.hpp"

namespace qthresh::cli {

nlohmann::json code_to_json(const model::CodeParameters& code) {
    return {{"name", code.name}, {"m", code.m},         {"alpha", code.alpha},
            {"beta", code.beta}, {"delta", code.delta}, {"c", code.c}};
}

model::CodeParameters code_from_json(const nlohmann::json& j) {
    model::CodeParameters code;
    code.name = j.at("name").get<std::string>();
    code.m = j.at("m").get<int>();
    code.alpha = j.at("alpha").get<int>();
    code.beta = j.at("beta").get<int>();
    code.delta = j.at("delta").get<double>();
    code.c = j.at("c").get<double>();
    return code;
}

std::string manifest_path_for(const std::string& output_path) {
    return output_path + ".manifest.json";
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    // nlohmann keeps object keys sorted and prints shortest round-trip
    // numbers, so identical runs serialize to identical bytes.
    const nlohmann::json doc = {{"subcommand", manifest.subcommand},
                                {"parameters", manifest.parameters},
                                {"seed", manifest.seed},
                                {"tool_version", manifest.tool_version},
                                {"outputs", manifest.outputs}};
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open manifest '" + path + "' for writing");
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw IoError("failed writing manifest '" + path + "'");
    }
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open manifest '" + path + "' for reading");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("manifest " + path + ": " + e.what());
    }
    try {
        RunManifest manifest;
        manifest.subcommand = doc.at("subcommand").get<std::string>();
        manifest.parameters = doc.at("parameters");
        manifest.seed = doc.at("seed").get<std::uint64_t>();
        manifest.tool_version = doc.at("tool_version").get<std::string>();
        manifest.outputs = doc.at("outputs").get<std::vector<std::string>>();
        return manifest;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("manifest " + path + ": " + e.what());
    }
}

}  // namespace qthresh::cli
