#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mslab::cli {

enum class Command { sum, scan, constants, moments, estermann, verify, report };

struct RunConfig {
    Command command = Command::sum;
    std::map<std::string, std::string> params;  // canonical echo of the flags
    std::string cache_dir;
    uint64_t seed = 0;
    unsigned threads = 1;
};

struct ReportArtifact {
    std::string csv_path;
    std::string json_summary_path;
    std::string svg_path;  // empty unless a plot was produced
};

// Builds a RunConfig from argv (without the program name). Precedence:
// command-line flag > config file entry (--config, JSON) > environment
// (MSLAB_CACHE_DIR, MSLAB_THREADS) > built-in default.
RunConfig parse_command_line(const std::vector<std::string>& args);

// Validates, computes, writes artifacts atomically, prints the primary
// result to `out` and diagnostics (including wall time) to `diag`.
ReportArtifact run(const RunConfig& config, std::ostream& out, std::ostream& diag);

// FNV-1a over the canonical (command, params, version) string; cache keys.
uint64_t config_key(const RunConfig& config);

const char* command_name(Command c);

}  // namespace mslab::cli
