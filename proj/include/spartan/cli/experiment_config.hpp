#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spartan/driver.hpp"

namespace spartan::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Declarative description of a benchmark experiment. Unset optionals take the driver
/// defaults for the chosen objective.
struct ExperimentConfig {
  std::string objective;
  std::vector<Method> methods{Method::BO, Method::SBO};
  std::optional<int> budget;
  std::optional<int> init_count;
  InitKind init_kind = InitKind::LHS;
  int repeats = 20;
  std::uint64_t seed = 0;
  McmcConfig mcmc;
  std::optional<double> noise;
  LocalVariancePolicy local_variance;
  int acquisition_budget = 0;
  int threads = 0;
  std::filesystem::path output_dir = "results";

  /// Throws ConfigError for inconsistent values or an unknown objective.
  void validate() const;
  MethodConfig method_config(const Objective& objective, Method method) const;
};

/// Sets one field from its textual form. Keys match the long CLI flags, e.g.
/// `objective`, `method`, `budget`, `init-count`, `init`, `repeats`, `seed`,
/// `mcmc-samples`, `burn-in`, `thin`, `step-width`, `max-stepout`, `noise`,
/// `sigma2-l`, `adaptive-k-loc`, `acq-budget`, `threads`, `out`.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// `key = value` lines; blank lines and `#` comments are ignored.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

std::vector<std::string> setting_keys();

}  // namespace spartan::cli
