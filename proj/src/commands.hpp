#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace arithdyn {

// Exit-code contract shared by the C API and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCap = 2;

struct CommandOutcome {
  int exit_code = kExitOk;
  std::string text;  // JSON report, or CSV for scans with format "csv"
};

std::vector<std::string> command_names();

// JSON description of the configuration keys a command accepts:
// {"command": ..., "summary": ..., "keys": [{"name", "kind", "required", "default", "help"}]}.
// Kinds: string, integer, number, boolean, map, bigint, rational, point.
// Throws InvalidArgument for an unknown command.
std::string command_schema(std::string_view command);

// Validates the JSON configuration (unknown keys and type mismatches are
// errors), fills defaults, runs the command and renders the report. The
// report carries the command, version, resolved config and result; a
// "metadata" object (timestamp, runtime) is added unless the config sets
// "metadata": false. Never throws.
CommandOutcome run_command(std::string_view command, const std::string& config_json);

}  // namespace arithdyn
