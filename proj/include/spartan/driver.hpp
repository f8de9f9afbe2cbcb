#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spartan/acquisition.hpp"
#include "spartan/benchmarks.hpp"
#include "spartan/design.hpp"
#include "spartan/hyperlearn.hpp"
#include "spartan/slice_sampler.hpp"
#include "spartan/stats.hpp"

namespace spartan {

enum class Method { BO, SBO, WARP };

std::string to_string(Method m);
/// Accepts "bo", "sbo", "warp" in any case; throws std::invalid_argument otherwise.
Method parse_method(const std::string& s);

struct MethodConfig {
  Method method = Method::SBO;
  int budget = 40;      ///< total objective evaluations N
  int init_count = 10;  ///< initial design size p
  InitKind init_kind = InitKind::LHS;
  McmcConfig mcmc;
  double noise = kDefaultNoise;
  LocalVariancePolicy local_variance;
  std::uint64_t seed = 0;
  int acquisition_budget = 0;  ///< 0 selects 2000 d
  /// SBO only: tie the local kernel to the global one (reduces SBO to BO).
  bool pin_local_to_global = false;
  HyperPriors priors;

  void validate() const;
  ModelConfig model_config() const;
};

/// GP noise variance (standardized units) used by default for stochastic objectives.
inline constexpr double kDefaultStochasticNoise = 1e-2;

/// Evaluation budgets used for the standard benchmarks (40 for unknown names).
int default_budget(const std::string& objective_name);
/// 10 initial points up to d = 8, 2d beyond.
int default_init_count(Eigen::Index dim);
MethodConfig default_method_config(const Objective& objective, Method method);

struct IterationRow {
  int iter = 0;  ///< 1-based evaluation index
  Point x_native;
  double y = 0.0;
  double best = 0.0;  ///< best raw outcome up to and including this row
  double wall_ms = 0.0;
};

/// Mean local-region center of the hyperparameter samples used to choose evaluation `iter`.
struct LocalCenterTrace {
  int iter = 0;
  Point mean_theta_p;
};

struct RunRecord {
  Method method = Method::SBO;
  std::uint64_t seed = 0;
  std::vector<IterationRow> rows;
  Point x_best;
  double y_best = 0.0;
  double total_wall_ms = 0.0;
  std::vector<LocalCenterTrace> theta_p_trace;
  bool aborted = false;
  std::string diagnostic;

  std::vector<double> best_trace() const;
};

/// One Bayesian optimization run: initial design, then EI-driven queries until the
/// budget is spent. Deterministic for a fixed seed on deterministic objectives.
RunRecord run(const Objective& objective, const MethodConfig& cfg);

struct RepeatedRuns {
  std::vector<RunRecord> runs;
  stats::Summary aggregate;  ///< per-iteration statistics of best-so-far
};

/// Runs seeds cfg.seed + 0 .. cfg.seed + repeats - 1. Methods sharing a seed base share
/// initial designs and objective noise streams. `threads` = 0 uses worker_threads().
RepeatedRuns run_repeated(const Objective& objective, const MethodConfig& cfg, int repeats,
                          int threads = 0);

/// SPARTAN_OPT_THREADS when set to a positive integer, else the hardware concurrency.
int worker_threads();

/// Random stream identifiers for derive_seed.
namespace streams {
inline constexpr std::uint64_t kDesign = 1;
inline constexpr std::uint64_t kObjective = 2;
inline constexpr std::uint64_t kMcmc = 3;
inline constexpr std::uint64_t kAcquisition = 4;
}  // namespace streams

}  // namespace spartan
