#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apnkit/digest.hpp"

namespace apn {

inline constexpr const char* kToolName = "apnkit";
inline constexpr const char* kToolVersion = "0.3.0";

/// Provenance record written next to every output. The digest covers every
/// field except the two timestamps, so reruns on the same inputs agree.
struct RunManifest {
    std::string command;
    std::string config_digest;
    std::vector<std::pair<std::string, std::string>> inputs;   // name, digest
    std::string started;
    std::string finished;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const;
    Digest digest() const;
};

/// UTC, second resolution, ISO 8601.
std::string utc_timestamp();

}  // namespace apn
