#include <chrono>
#include <cstdlib>
#include <ctime>

#include "commands.hpp"
#include "evssta/io.hpp"

namespace evssta::cli {

nlohmann::json to_json(const RunManifest& m) {
    return {
        {"command", m.command},
        {"parameters", m.parameters},
        {"seed", m.seed},
        {"tool_version", m.tool_version},
        {"timestamp", m.timestamp},
    };
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path resolve_output(const std::filesystem::path& prefix) {
    std::filesystem::path out = prefix;
    const char* dir = std::getenv(kOutputDirEnv);
    if (prefix.is_relative() && dir != nullptr && *dir != '\0') {
        out = std::filesystem::path(dir) / prefix;
    }
    if (out.has_parent_path()) {
        std::filesystem::create_directories(out.parent_path());
    }
    return out;
}

void write_manifest(const std::filesystem::path& prefix, const RunManifest& m) {
    io::write_json(with_suffix(prefix, ".manifest.json"), to_json(m));
}

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const std::string& suffix) {
    return std::filesystem::path(prefix.string() + suffix);
}

std::map<std::string, std::string> collect_parameters(const CLI::App& sub) {
    std::map<std::string, std::string> params;
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help") {
            continue;
        }
        if (opt->count() > 0) {
            std::string joined;
            for (const auto& r : opt->results()) {
                joined += (joined.empty() ? "" : ",") + r;
            }
            params[name] = joined.empty() ? "true" : joined;
        } else {
            params[name] = opt->get_default_str();
        }
    }
    return params;
}

RunManifest make_manifest(const CLI::App& sub, std::uint64_t seed) {
    RunManifest m;
    const CLI::App* parent = sub.get_parent();
    m.command = (parent && parent->get_parent() ? parent->get_name() + " " : std::string()) + sub.get_name();
    m.parameters = collect_parameters(sub);
    m.seed = seed;
    m.timestamp = utc_timestamp();
    return m;
}

}  // namespace evssta::cli
