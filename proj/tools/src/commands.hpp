#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace minlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedCheck = 1;
inline constexpr int kExitMissingInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitDegenerate = 4;
inline constexpr int kExitNumerical = 5;

const std::vector<std::string>& command_names();

/// Runs one subcommand. Reports go to
/// <output_dir>/<run name>-<command>.json, curves to matching .csv files,
/// and a short human summary to `log`. Returns the exit code for check
/// outcomes; library failures propagate as minlab::Error.
int run_command(const std::string& command, const RunConfig& config,
                std::ostream& log);

// Merges every report in dir into summary.csv and prints the comparison
// table. Throws Error(io) when dir holds no reports.
int run_report(const std::filesystem::path& dir, std::ostream& log);

// Maps a library error onto the exit-code contract.
int exit_code_for(const std::exception& e);

}  // namespace minlab::cli
