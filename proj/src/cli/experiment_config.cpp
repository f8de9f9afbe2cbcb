#include "spartan/cli/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace spartan::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* begin = value.data();
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
  }
  return out;
}

std::vector<Method> parse_methods(std::string_view value) {
  std::vector<Method> methods;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const auto comma = value.find(',', pos);
    const auto item = trim(value.substr(pos, comma == std::string_view::npos ? value.npos : comma - pos));
    if (item.empty()) throw ConfigError("empty entry in method list");
    try {
      const Method m = parse_method(std::string(item));
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return methods;
}

}  // namespace

std::vector<std::string> setting_keys() {
  return {"objective", "method",   "budget",      "init-count", "init",           "repeats",
          "seed",      "mcmc-samples", "burn-in", "thin",       "step-width",     "max-stepout",
          "noise",     "sigma2-l", "adaptive-k-loc", "acq-budget", "threads",    "out"};
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "objective") {
    cfg.objective = std::string(value);
  } else if (key == "method" || key == "methods") {
    cfg.methods = parse_methods(value);
  } else if (key == "budget") {
    cfg.budget = parse_number<int>(key, value);
  } else if (key == "init-count") {
    cfg.init_count = parse_number<int>(key, value);
  } else if (key == "init") {
    if (value == "lhs") {
      cfg.init_kind = InitKind::LHS;
    } else if (value == "sobol") {
      cfg.init_kind = InitKind::Sobol;
    } else {
      throw ConfigError("init must be 'lhs' or 'sobol'");
    }
  } else if (key == "repeats") {
    cfg.repeats = parse_number<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "mcmc-samples") {
    cfg.mcmc.n_samples = parse_number<int>(key, value);
  } else if (key == "burn-in") {
    cfg.mcmc.burn_in = parse_number<int>(key, value);
  } else if (key == "thin") {
    cfg.mcmc.thin = parse_number<int>(key, value);
  } else if (key == "step-width") {
    cfg.mcmc.step_width = parse_number<double>(key, value);
  } else if (key == "max-stepout") {
    cfg.mcmc.max_stepout = parse_number<int>(key, value);
  } else if (key == "noise") {
    cfg.noise = parse_number<double>(key, value);
  } else if (key == "sigma2-l") {
    cfg.local_variance.adaptive = false;
    cfg.local_variance.sigma2 = parse_number<double>(key, value);
  } else if (key == "adaptive-k-loc") {
    cfg.local_variance.adaptive = true;
    cfg.local_variance.k_loc = parse_number<int>(key, value);
  } else if (key == "acq-budget") {
    cfg.acquisition_budget = parse_number<int>(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_number<int>(key, value);
  } else if (key == "out") {
    cfg.output_dir = std::string(value);
  } else {
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      apply_setting(cfg, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

void ExperimentConfig::validate() const {
  if (objective.empty()) throw ConfigError("no objective given");
  try {
    (void)make_objective(objective);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (methods.empty()) throw ConfigError("no methods given");
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  const Objective obj = make_objective(objective);
  for (const Method m : methods) {
    try {
      method_config(obj, m).validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

MethodConfig ExperimentConfig::method_config(const Objective& obj, Method method) const {
  MethodConfig c = default_method_config(obj, method);
  if (budget) c.budget = *budget;
  if (init_count) c.init_count = *init_count;
  c.init_kind = init_kind;
  c.mcmc = mcmc;
  if (noise) c.noise = *noise;
  c.local_variance = local_variance;
  c.seed = seed;
  c.acquisition_budget = acquisition_budget;
  return c;
}

}  // namespace spartan::cli
