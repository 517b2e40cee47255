#pragma once

#include <map>
#include <string>

namespace mpcaps {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Record of one CLI invocation with every option materialized; written
/// alongside each command's outputs so the run can be reproduced exactly.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> options;  // resolved flags, defaults included
    std::string artifact_version = kArtifactVersion;

    void save(const std::string& path) const;
    static RunManifest load(const std::string& path);
};

}  // namespace mpcaps
