#include "mpcaps/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "mpcaps/errors.hpp"

namespace mpcaps {

void RunManifest::save(const std::string& path) const {
    nlohmann::json j;
    j["command"] = command;
    j["artifact_version"] = artifact_version;
    j["options"] = options;
    std::ofstream out(path);
    if (!out) throw FormatError("manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

RunManifest RunManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("manifest: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("manifest: parse failure: ") + e.what());
    }
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.artifact_version = j.value("artifact_version", std::string());
    for (auto& [k, v] : j.at("options").items()) m.options[k] = v.get<std::string>();
    return m;
}

}  // namespace mpcaps
