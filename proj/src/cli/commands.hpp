#ifndef EVSSTA_CLI_COMMANDS_HPP
#define EVSSTA_CLI_COMMANDS_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "evssta/cli.hpp"

namespace evssta::cli {

// Validation failure that maps to exit code 2. The message names the flag.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& flag, const std::string& what)
        : std::runtime_error(flag + ": " + what) {}
};

void register_dist(CLI::App& app);
void register_mc(CLI::App& app);
void register_graph(CLI::App& app);
void register_noniid(CLI::App& app);

// Every option of the subcommand as name -> value (given or default).
std::map<std::string, std::string> collect_parameters(const CLI::App& sub);

// A manifest for the subcommand, stamped with the current time.
RunManifest make_manifest(const CLI::App& sub, std::uint64_t seed);

// <prefix><suffix>, e.g. ("out/run", ".csv") -> out/run.csv
std::filesystem::path with_suffix(const std::filesystem::path& prefix, const std::string& suffix);

}  // namespace evssta::cli

#endif  // EVSSTA_CLI_COMMANDS_HPP
