#include "spartan/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace spartan {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

SurrogateKind surrogate_for(Method m) {
  switch (m) {
    case Method::BO:
      return SurrogateKind::Stationary;
    case Method::SBO:
      return SurrogateKind::Spartan;
    case Method::WARP:
      return SurrogateKind::Warped;
  }
  return SurrogateKind::Stationary;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::BO:
      return "bo";
    case Method::SBO:
      return "sbo";
    case Method::WARP:
      return "warp";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bo") return Method::BO;
  if (lower == "sbo") return Method::SBO;
  if (lower == "warp") return Method::WARP;
  throw std::invalid_argument("unknown method '" + s + "' (expected bo, sbo or warp)");
}

void MethodConfig::validate() const {
  if (init_count < 1) throw std::invalid_argument("init_count must be >= 1");
  if (budget < init_count) throw std::invalid_argument("budget must be >= init_count");
  if (!(noise >= 0.0)) throw std::invalid_argument("noise must be >= 0");
  if (acquisition_budget != 0 && acquisition_budget < 100) {
    throw std::invalid_argument("acquisition budget must be >= 100");
  }
  if (pin_local_to_global && method != Method::SBO) {
    throw std::invalid_argument("pin_local_to_global applies to SBO only");
  }
  mcmc.validate();
}

ModelConfig MethodConfig::model_config() const {
  ModelConfig m;
  m.kind = surrogate_for(method);
  m.noise = noise;
  m.local_variance = local_variance;
  m.pin_local_to_global = pin_local_to_global;
  m.priors = priors;
  return m;
}

int default_budget(const std::string& objective_name) {
  if (objective_name == "gramacy") return 60;
  if (objective_name == "branin") return 40;
  if (objective_name == "hartmann6") return 70;
  if (objective_name.rfind("michalewicz", 0) == 0) return 210;
  if (objective_name == "mountain-car") return 40;
  return 40;
}

int default_init_count(Eigen::Index dim) { return dim <= 8 ? 10 : static_cast<int>(2 * dim); }

MethodConfig default_method_config(const Objective& objective, Method method) {
  MethodConfig cfg;
  cfg.method = method;
  cfg.budget = default_budget(objective.name());
  cfg.init_count = default_init_count(objective.dimension());
  if (objective.stochastic()) cfg.noise = kDefaultStochasticNoise;
  return cfg;
}

std::vector<double> RunRecord::best_trace() const {
  std::vector<double> t;
  t.reserve(rows.size());
  for (const auto& r : rows) t.push_back(r.best);
  return t;
}

RunRecord run(const Objective& objective, const MethodConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  const auto d = static_cast<int>(objective.dimension());

  RunRecord rec;
  rec.method = cfg.method;
  rec.seed = cfg.seed;
  ObservationSet obs(d);
  double best = std::numeric_limits<double>::infinity();

  auto evaluate_and_record = [&](const Point& unit, Clock::time_point row_start) {
    const int iter = static_cast<int>(rec.rows.size()) + 1;
    Rng noise_rng(derive_seed(cfg.seed, streams::kObjective, static_cast<std::uint64_t>(iter)));
    const Point native = objective.to_native(unit);
    const double y = objective.evaluate_native(native, noise_rng);
    obs.add(unit, y);
    if (y < best) {
      best = y;
      rec.x_best = native;
      rec.y_best = y;
    }
    rec.rows.push_back(IterationRow{iter, native, y, best, elapsed_ms(row_start)});
  };

  {
    const auto t0 = Clock::now();
    Rng design_rng(derive_seed(cfg.seed, streams::kDesign));
    const PointSet design = cfg.init_kind == InitKind::LHS ? lhs(cfg.init_count, d, design_rng)
                                                           : sobol(cfg.init_count, d);
    for (int i = 0; i < cfg.init_count; ++i) {
      evaluate_and_record(design.col(i), i == 0 ? t0 : Clock::now());
    }
  }

  const HyperModel model(d, cfg.model_config());
  std::optional<HyperSample> warm;
  while (static_cast<int>(rec.rows.size()) < cfg.budget) {
    const auto t0 = Clock::now();
    const auto iter = static_cast<std::uint64_t>(rec.rows.size() + 1);

    std::vector<HyperSample> samples;
    try {
      Rng mcmc_rng(derive_seed(cfg.seed, streams::kMcmc, iter));
      samples = posterior_samples(obs, model, cfg.mcmc, warm, mcmc_rng);
    } catch (const DegeneratePosteriorError&) {
      try {
        Rng retry_rng(derive_seed(cfg.seed, streams::kMcmc, iter + (1ULL << 32)));
        samples = posterior_samples(obs, model, cfg.mcmc, std::nullopt, retry_rng);
      } catch (const DegeneratePosteriorError& e) {
        rec.aborted = true;
        rec.diagnostic = "iteration " + std::to_string(iter) + ": " + e.what();
        break;
      }
    }
    warm = samples.back();

    std::vector<PosteriorSnapshot> posteriors;
    posteriors.reserve(samples.size());
    for (const auto& s : samples) {
      try {
        posteriors.push_back(fit(obs, model.kernel_spec(s, obs), cfg.noise));
      } catch (const SingularModelError&) {
      }
    }
    if (posteriors.empty()) {
      rec.aborted = true;
      rec.diagnostic = "iteration " + std::to_string(iter) + ": every posterior sample was singular";
      break;
    }

    AcquisitionOptions opts;
    opts.budget = cfg.acquisition_budget;
    if (model.learns_local_center()) {
      Point mean_center = Point::Zero(d);
      for (const auto& s : samples) {
        opts.seeds.push_back(s.theta_p);
        mean_center += s.theta_p;
      }
      mean_center /= static_cast<double>(samples.size());
      rec.theta_p_trace.push_back(LocalCenterTrace{static_cast<int>(iter), mean_center});
    }

    Rng acq_rng(derive_seed(cfg.seed, streams::kAcquisition, iter));
    const Incumbent inc = Incumbent::from(obs);
    const AcquisitionResult acq = maximize_acquisition(posteriors, obs, inc, opts, acq_rng);
    Point next = acq.x_next;
    if (!(acq.ei_value > 0.0)) {
      const int scan = opts.budget > 0 ? opts.budget : 2000 * d;
      next = max_variance_point(posteriors, obs, scan, acq_rng);
    }
    evaluate_and_record(next, t0);
  }

  rec.total_wall_ms = elapsed_ms(start);
  return rec;
}

int worker_threads() {
  if (const char* env = std::getenv("SPARTAN_OPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RepeatedRuns run_repeated(const Objective& objective, const MethodConfig& cfg, int repeats,
                          int threads) {
  if (repeats < 1) throw std::invalid_argument("run_repeated: repeats must be >= 1");
  cfg.validate();
  const int workers = std::min(repeats, threads > 0 ? threads : worker_threads());

  RepeatedRuns out;
  out.runs.resize(static_cast<std::size_t>(repeats));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (int r = next++; r < repeats; r = next++) {
      try {
        MethodConfig c = cfg;
        c.seed = cfg.seed + static_cast<std::uint64_t>(r);
        out.runs[static_cast<std::size_t>(r)] = run(objective, c);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::vector<double>> traces;
  traces.reserve(out.runs.size());
  for (const auto& r : out.runs) traces.push_back(r.best_trace());
  out.aggregate = stats::summarize(traces);
  return out;
}

}  // namespace spartan
