#include "qthresh/cli/registry.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qthresh/cli/commands.hpp"

namespace qthresh::cli {

const std::vector<CodeRegistryEntry>& builtin_registry() {
    static const std::vector<CodeRegistryEntry> registry = {
        {model::CodeParameters::make("steane", 7, 4, 10, 2.0),
         "built-in seven-qubit CSS code; depth constants for the standard "
         "fault-tolerant encode (4) / decode (10) circuits, c = C(7,2) = 21"},
    };
    return registry;
}

const CodeRegistryEntry& find_code(const std::string& name) {
    for (const CodeRegistryEntry& entry : builtin_registry()) {
        if (entry.params.name == name) return entry;
    }
    std::ostringstream msg;
    msg << "unknown code '" << name << "'; known codes:";
    for (const CodeRegistryEntry& entry : builtin_registry()) {
        msg << ' ' << entry.params.name;
    }
    throw std::invalid_argument(msg.str());
}

namespace {

// Pulls a required field, naming both the file and the key on failure.
const nlohmann::json& require_key(const nlohmann::json& doc, const std::string& key,
                                  const std::string& path) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw std::invalid_argument("code config " + path + ": missing required key '" + key +
                                    "'");
    }
    return *it;
}

}  // namespace

model::CodeParameters load_code_config_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open code config '" + path + "' for reading");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        // e.what() carries the parser's line/column context.
        throw std::invalid_argument("code config " + path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("code config " + path + ": top-level value must be an object");
    }
    try {
        model::CodeParameters code;
        code.name = require_key(doc, "name", path).get<std::string>();
        code.m = require_key(doc, "m", path).get<int>();
        code.alpha = require_key(doc, "alpha", path).get<int>();
        code.beta = require_key(doc, "beta", path).get<int>();
        code.delta = require_key(doc, "delta", path).get<double>();
        code.c = doc.contains("c") ? doc["c"].get<double>()
                                   : model::CodeParameters::default_c(code.m);
        return code;
    } catch (const nlohmann::json::type_error& e) {
        throw std::invalid_argument("code config " + path + ": " + e.what());
    }
}

model::CodeParameters load_code_config(const std::string& path) {
    model::CodeParameters code = load_code_config_raw(path);
    code.validate();
    return code;
}

}  // namespace qthresh::cli
