#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nodal {

enum class OutputFormat { json, csv, pretty };

enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 2,
    exit_inconsistent = 3,
};

/// One fully specified invocation. Serialized into every JSON document so a
/// run can be reproduced from its output.
struct RunConfig {
    static constexpr int schema_version = 1;

    std::string command;
    OutputFormat format = OutputFormat::json;
    bool timestamp = true;
    unsigned threads = 1; ///< 0 = hardware concurrency
    std::optional<std::string> cache_path;

    // severi / severi-table / validate
    int d = 1;
    int delta = 0;
    std::string alpha;
    std::optional<std::string> beta;
    int dmax = 1;
    int deltamax = 0;

    // fit / evaluate / validate / genus-series
    int order = 2;
    std::optional<std::pair<int, int>> degrees;
    std::optional<std::pair<long, long>> k3;
    bool unsafe = false;

    // evaluate / decompose
    long L2 = 0, LK = 0, c1sq = 0, c2 = 0;
    bool alt = false;

    // close-relation
    std::vector<long> v1, v2;
    long gD = 0, degLD = 0;

    // genus-series
    long r = 0, Ksq = 0, m = 0, chiO = 0;

    nlohmann::json to_json() const;
};

struct RunResult {
    int exit_code = exit_ok;
    std::string output;
};

/// Executes a command. Never throws: failures become an error document and a
/// nonzero exit code.
RunResult run(const RunConfig& config);

/// Parses argv (without the program name). Throws ValidationError on bad input;
/// returns nullopt and fills `help` when help was requested.
std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::string& help);

} // namespace nodal
