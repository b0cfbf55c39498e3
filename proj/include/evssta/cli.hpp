#ifndef EVSSTA_CLI_HPP
#define EVSSTA_CLI_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

namespace evssta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitCap = 4;

inline constexpr std::string_view kToolVersion = "0.3.1";
// Environment variable overriding the directory relative outputs land in.
inline constexpr const char* kOutputDirEnv = "EVSSTA_OUTPUT_DIR";

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version{kToolVersion};
    std::string timestamp;  // UTC, ISO 8601
};

nlohmann::json to_json(const RunManifest& m);
std::string utc_timestamp();

// Resolves an output prefix against EVSSTA_OUTPUT_DIR and creates parent
// directories.
std::filesystem::path resolve_output(const std::filesystem::path& prefix);

// Writes <prefix>.manifest.json.
void write_manifest(const std::filesystem::path& prefix, const RunManifest& m);

int run(int argc, char** argv);

}  // namespace evssta::cli

#endif  // EVSSTA_CLI_HPP
