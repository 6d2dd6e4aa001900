#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace depkit::cli {

// One manifest per subcommand invocation: config snapshot, input hashes,
// artifact paths. Written atomically when the run starts and finalized when
// it ends. The run id is derived from (command, config, input hashes), so
// identical inputs yield an identical id.
struct RunManifest {
    std::string run_id;
    std::string command;
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> input_hashes;  // path -> sha256
    std::vector<std::string> artifacts;
    std::map<std::string, std::string> outputs;  // e.g. fine_tuned_model_id
    std::string started_at;
    std::string finished_at;
    std::string status;  // running | ok | failed | timeout

    static std::string derive_run_id(const std::string& command,
                                     const std::map<std::string, std::string>& config,
                                     const std::map<std::string, std::string>& input_hashes);
};

class ManifestWriter {
public:
    ManifestWriter(std::string path, std::string command);

    void set_config(std::map<std::string, std::string> config);
    void add_input(const std::string& path);  // hashes the file
    void add_artifact(const std::string& path);
    void set_output(const std::string& key, const std::string& value);

    // Computes the run id and writes the manifest with status "running".
    void start();
    void finalize(const std::string& status);

    const RunManifest& manifest() const { return manifest_; }

private:
    void write() const;

    std::string path_;
    RunManifest manifest_;
};

std::optional<RunManifest> load_manifest(const std::string& path);

}  // namespace depkit::cli
