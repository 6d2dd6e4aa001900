#include "depkit/cli/manifest.hpp"

#include <chrono>
#include <filesystem>

#include "depkit/util/hash.hpp"
#include "depkit/util/jsonl.hpp"
#include "depkit/util/time.hpp"

namespace depkit::cli {

namespace {

using nlohmann::json;

std::string now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    return util::format_iso8601_utc(static_cast<std::int64_t>(t));
}

}  // namespace

std::string RunManifest::derive_run_id(const std::string& command,
                                       const std::map<std::string, std::string>& config,
                                       const std::map<std::string, std::string>& input_hashes) {
    std::string material = command + "\n";
    for (const auto& [k, v] : config) material += k + "=" + v + "\n";
    for (const auto& [k, v] : input_hashes) material += k + ":" + v + "\n";
    return util::fnv1a64_hex(material);
}

ManifestWriter::ManifestWriter(std::string path, std::string command) : path_(std::move(path)) {
    manifest_.command = std::move(command);
}

void ManifestWriter::set_config(std::map<std::string, std::string> config) {
    manifest_.config = std::move(config);
}

void ManifestWriter::add_input(const std::string& path) {
    manifest_.input_hashes[path] = util::sha256_file_hex(path);
}

void ManifestWriter::add_artifact(const std::string& path) {
    manifest_.artifacts.push_back(path);
}

void ManifestWriter::set_output(const std::string& key, const std::string& value) {
    manifest_.outputs[key] = value;
}

void ManifestWriter::start() {
    manifest_.run_id = RunManifest::derive_run_id(manifest_.command, manifest_.config,
                                                  manifest_.input_hashes);
    manifest_.started_at = now_iso();
    manifest_.status = "running";
    write();
}

void ManifestWriter::finalize(const std::string& status) {
    manifest_.status = status;
    manifest_.finished_at = now_iso();
    write();
}

void ManifestWriter::write() const {
    json j{{"run_id", manifest_.run_id},
           {"command", manifest_.command},
           {"config", manifest_.config},
           {"input_hashes", manifest_.input_hashes},
           {"artifacts", manifest_.artifacts},
           {"outputs", manifest_.outputs},
           {"started_at", manifest_.started_at},
           {"finished_at", manifest_.finished_at},
           {"status", manifest_.status}};
    util::write_file_atomic(path_, j.dump(2) + "\n");
}

std::optional<RunManifest> load_manifest(const std::string& path) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    json j = json::parse(util::read_file(path), nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    RunManifest m;
    m.run_id = j.value("run_id", std::string{});
    m.command = j.value("command", std::string{});
    if (j.contains("config")) {
        m.config = j["config"].get<std::map<std::string, std::string>>();
    }
    if (j.contains("input_hashes")) {
        m.input_hashes = j["input_hashes"].get<std::map<std::string, std::string>>();
    }
    if (j.contains("artifacts")) m.artifacts = j["artifacts"].get<std::vector<std::string>>();
    if (j.contains("outputs")) {
        m.outputs = j["outputs"].get<std::map<std::string, std::string>>();
    }
    m.started_at = j.value("started_at", std::string{});
    m.finished_at = j.value("finished_at", std::string{});
    m.status = j.value("status", std::string{});
    return m;
}

}  // namespace depkit::cli
