#include "spartan/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <regex>

#include "spartan/cli/results_io.hpp"
#include "spartan/stats.hpp"

namespace spartan::cli {
namespace fs = std::filesystem;

namespace {

struct MethodRuns {
  std::string name;
  std::vector<RunTable> runs;
};

// Methods in the order recorded by `run`, falling back to directory order.
std::vector<std::string> method_order(const fs::path& objective_dir) {
  std::vector<std::string> names;
  const fs::path agg = objective_dir / "aggregate.json";
  if (fs::exists(agg)) {
    std::ifstream in(agg);
    const auto j = nlohmann::json::parse(in);
    for (const auto& m : j.at("methods")) names.push_back(m.get<std::string>());
    return names;
  }
  for (const auto& entry : fs::directory_iterator(objective_dir)) {
    if (entry.is_directory()) names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<RunTable> load_method_runs(const fs::path& method_dir) {
  static const std::regex run_name(R"(run([0-9]+)\.csv)");
  std::vector<std::pair<int, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(method_dir)) {
    std::smatch m;
    const std::string fname = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(fname, m, run_name)) {
      files.emplace_back(std::stoi(m[1].str()), entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RunTable> runs;
  for (const auto& [idx, path] : files) runs.push_back(read_run_csv(path));
  return runs;
}

bool is_objective_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) return false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    for (const auto& f : fs::directory_iterator(entry.path())) {
      if (f.path().extension() == ".csv") return true;
    }
  }
  return false;
}

void report_objective(const fs::path& objective_dir, std::ostream& out) {
  const std::string objective = objective_dir.filename().string();
  std::vector<MethodRuns> methods;
  for (const auto& name : method_order(objective_dir)) {
    const fs::path mdir = objective_dir / name;
    if (!fs::is_directory(mdir)) throw std::runtime_error("missing method directory " + mdir.string());
    auto runs = load_method_runs(mdir);
    if (runs.empty()) throw std::runtime_error("no run CSVs in " + mdir.string());
    methods.push_back(MethodRuns{name, std::move(runs)});
  }

  std::vector<stats::Summary> summaries;
  std::size_t len = 0;
  for (const auto& m : methods) {
    std::vector<std::vector<double>> traces;
    for (const auto& r : m.runs) traces.push_back(r.best);
    summaries.push_back(stats::summarize(traces));
    len = std::max(len, summaries.back().mean.size());
  }

  std::ofstream csv(objective_dir / "convergence.csv", std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write convergence.csv in " + objective_dir.string());
  csv << "iter";
  for (const auto& m : methods) csv << ',' << m.name << "_mean," << m.name << "_ci_lo," << m.name << "_ci_hi";
  csv << '\n';
  for (std::size_t i = 0; i < len; ++i) {
    csv << i + 1;
    for (const auto& s : summaries) {
      if (i < s.mean.size()) {
        csv << ',' << format_double(s.mean[i]) << ',' << format_double(s.mean[i] - s.ci95[i]) << ','
            << format_double(s.mean[i] + s.ci95[i]);
      } else {
        csv << ",,,";
      }
    }
    csv << '\n';
  }

  std::optional<double> optimum;
  try {
    optimum = make_objective(objective).known_optimum();
  } catch (const std::invalid_argument&) {
  }
  out << objective << '\n';
  out << "  " << std::left << std::setw(8) << "method" << std::right << std::setw(6) << "runs"
      << std::setw(16) << "final mean" << std::setw(16) << "final median" << std::setw(14) << "ci95"
      << std::setw(16) << "median gap" << '\n';
  for (std::size_t k = 0; k < methods.size(); ++k) {
    std::vector<double> finals;
    for (const auto& r : methods[k].runs) {
      if (!r.best.empty()) finals.push_back(r.best.back());
    }
    const double med = stats::median(finals);
    out << "  " << std::left << std::setw(8) << methods[k].name << std::right << std::setw(6)
        << finals.size() << std::setw(16) << std::setprecision(8) << stats::mean(finals)
        << std::setw(16) << med << std::setw(14) << stats::ci95_half_width(finals) << std::setw(16);
    if (optimum) {
      out << med - *optimum;
    } else {
      out << "n/a";
    }
    out << '\n';
  }
}

}  // namespace

int cmd_run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    const Objective objective = make_objective(cfg.objective);
    const fs::path objective_dir = cfg.output_dir / objective.name();
    std::vector<MethodResults> results;
    for (const Method method : cfg.methods) {
      const MethodConfig mc = cfg.method_config(objective, method);
      out << "running " << to_string(method) << " on " << objective.name() << " (" << cfg.repeats
          << " runs, budget " << mc.budget << ")\n";
      RepeatedRuns runs = run_repeated(objective, mc, cfg.repeats, cfg.threads);
      // Files are written here, after all workers finished, by this thread only.
      const fs::path method_dir = objective_dir / to_string(method);
      fs::create_directories(method_dir);
      for (std::size_t r = 0; r < runs.runs.size(); ++r) {
        const auto& rec = runs.runs[r];
        if (rec.aborted) err << "warning: run " << r << " aborted: " << rec.diagnostic << '\n';
        write_run_csv(method_dir / ("run" + std::to_string(r) + ".csv"), rec, objective.dimension());
      }
      results.push_back(MethodResults{method, mc, std::move(runs)});
    }
    const double total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::ofstream json(objective_dir / "aggregate.json", std::ios::binary);
    json << aggregate_to_json(cfg, objective, results, total_ms).dump(2) << '\n';
    if (!json) throw std::runtime_error("cannot write aggregate.json");
    out << "wrote results to " << objective_dir.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRunFailure;
  }
  return kExitOk;
}

int cmd_report(const fs::path& dir, std::ostream& out, std::ostream& err) {
  try {
    if (!fs::is_directory(dir)) {
      err << "error: '" << dir.string() << "' is not a directory\n";
      return kExitBadInput;
    }
    std::vector<fs::path> objective_dirs;
    if (is_objective_dir(dir)) {
      objective_dirs.push_back(dir);
    } else {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (is_objective_dir(entry.path())) objective_dirs.push_back(entry.path());
      }
      std::sort(objective_dirs.begin(), objective_dirs.end());
    }
    if (objective_dirs.empty()) {
      err << "error: no run results found below '" << dir.string() << "'\n";
      return kExitBadInput;
    }
    for (const auto& od : objective_dirs) report_objective(od, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}

}  // namespace spartan::cli
