#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "spartan/cli/experiment_config.hpp"
#include "spartan/driver.hpp"

namespace spartan::cli {

/// Shortest text that parses back to the same double.
std::string format_double(double v);

/// `iter,x_1,...,x_d,y,best` with native coordinates, LF line endings.
void write_run_csv(const std::filesystem::path& path, const RunRecord& rec, Eigen::Index dim);

struct RunTable {
  std::vector<int> iter;
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  std::vector<double> best;
};

/// Throws std::runtime_error on a malformed file.
RunTable read_run_csv(const std::filesystem::path& path);

nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct MethodResults {
  Method method;
  MethodConfig config;
  RepeatedRuns runs;
};

nlohmann::json aggregate_to_json(const ExperimentConfig& cfg, const Objective& objective,
                                 const std::vector<MethodResults>& results, double total_wall_ms);

}  // namespace spartan::cli
