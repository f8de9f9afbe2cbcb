#pragma once

#include <filesystem>
#include <ostream>

#include "spartan/cli/experiment_config.hpp"

namespace spartan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitBadInput = 2;

/// Runs every configured method and writes
///   <out>/<objective>/<method>/run<r>.csv   (r = 0 .. repeats-1)
///   <out>/<objective>/aggregate.json
int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Reads per-run CSVs below `dir` and writes <dir>/<objective>/convergence.csv for every
/// objective found, then prints a final-gap summary.
int cmd_report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

}  // namespace spartan::cli
