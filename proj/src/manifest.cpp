#include "apnkit/manifest.hpp"

#include <chrono>
#include <ctime>

namespace apn {

namespace {
nlohmann::ordered_json stable_part(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["digest_algorithm"] = std::string(kDigestAlgorithm);
    j["command"] = m.command;
    j["config_digest"] = m.config_digest;
    auto inputs = nlohmann::ordered_json::array();
    for (const auto& [name, d] : m.inputs) inputs.push_back({{"name", name}, {"digest", d}});
    j["inputs"] = inputs;
    j["stats"] = m.stats;
    return j;
}
}  // namespace

Digest RunManifest::digest() const { return digest_of(stable_part(*this).dump()); }

nlohmann::ordered_json RunManifest::to_json() const {
    auto j = stable_part(*this);
    j["started"] = started;
    j["finished"] = finished;
    j["manifest_digest"] = digest().hex();
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace apn
