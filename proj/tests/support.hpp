#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    const char* root = std::getenv("DEPKIT_FIXTURES");
    std::filesystem::path base = root ? root : "tests/fixtures";
    return (base / name).string();
}

inline std::string depkit_bin() {
    const char* bin = std::getenv("DEPKIT_BIN");
    if (bin) return bin;
    // ctest sets DEPKIT_BIN; fall back to the build-tree location
    if (std::filesystem::exists("tools/depkit")) return "tools/depkit";
    return "build/tools/depkit";
}

// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::mt19937_64 gen(std::random_device{}());
        path = base / ("depkit-test-" + std::to_string(gen()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

// Runs the CLI binary through the shell, capturing combined output.
// `env_prefix` is prepended verbatim (e.g. "DEPKIT_API_KEY=sk-x" or
// "env -u DEPKIT_API_KEY").
inline CommandResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    TempDir scratch;
    const std::string out_file = scratch.file("cli_output.txt");
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += depkit_bin() + " " + args + " >" + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    result.output = slurp(out_file);
    return result;
}

}  // namespace testsupport
