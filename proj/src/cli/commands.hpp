#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "job.hpp"

namespace isoflect::cli {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitConfig = 2 };

struct CommandInfo {
  std::string name;
  std::string summary;
};

const std::vector<CommandInfo>& commands();

/// Runs one subcommand. Writes meshes and the JSON report to the configured
/// paths (the report goes to `out` when no path is set). Throws ConfigError
/// and ValidationError for bad input; returns kExitFailure when a
/// verification step fails.
int run_command(const std::string& name, const JobConfig& cfg, std::ostream& out);

}  // namespace isoflect::cli
