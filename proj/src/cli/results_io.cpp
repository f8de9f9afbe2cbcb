#include "spartan/cli/results_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spartan::cli {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& s, const std::filesystem::path& path) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error(path.string() + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

void write_run_csv(const std::filesystem::path& path, const RunRecord& rec, Eigen::Index dim) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "iter";
  for (Eigen::Index j = 1; j <= dim; ++j) out << ",x_" << j;
  out << ",y,best\n";
  for (const auto& row : rec.rows) {
    out << row.iter;
    for (Eigen::Index j = 0; j < dim; ++j) out << ',' << format_double(row.x_native[j]);
    out << ',' << format_double(row.y) << ',' << format_double(row.best) << '\n';
  }
  if (!out) throw std::runtime_error("error writing " + path.string());
}

RunTable read_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header.front() != "iter" || header[header.size() - 2] != "y" ||
      header.back() != "best") {
    throw std::runtime_error(path.string() + ": unexpected header");
  }
  const std::size_t dim = header.size() - 3;
  for (std::size_t j = 0; j < dim; ++j) {
    if (header[j + 1] != "x_" + std::to_string(j + 1)) {
      throw std::runtime_error(path.string() + ": unexpected header");
    }
  }
  RunTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error(path.string() + ": wrong number of columns");
    }
    table.iter.push_back(static_cast<int>(parse_cell(cells[0], path)));
    std::vector<double> x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = parse_cell(cells[j + 1], path);
    table.x.push_back(std::move(x));
    table.y.push_back(parse_cell(cells[dim + 1], path));
    table.best.push_back(parse_cell(cells[dim + 2], path));
  }
  return table;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["objective"] = cfg.objective;
  std::vector<std::string> methods;
  for (const Method m : cfg.methods) methods.push_back(to_string(m));
  j["method"] = methods;
  j["budget"] = cfg.budget ? nlohmann::json(*cfg.budget) : nlohmann::json(nullptr);
  j["init-count"] = cfg.init_count ? nlohmann::json(*cfg.init_count) : nlohmann::json(nullptr);
  j["init"] = cfg.init_kind == InitKind::LHS ? "lhs" : "sobol";
  j["repeats"] = cfg.repeats;
  j["seed"] = cfg.seed;
  j["mcmc-samples"] = cfg.mcmc.n_samples;
  j["burn-in"] = cfg.mcmc.burn_in;
  j["thin"] = cfg.mcmc.thin;
  j["step-width"] = cfg.mcmc.step_width;
  j["max-stepout"] = cfg.mcmc.max_stepout;
  j["noise"] = cfg.noise ? nlohmann::json(*cfg.noise) : nlohmann::json(nullptr);
  if (cfg.local_variance.adaptive) {
    j["adaptive-k-loc"] = cfg.local_variance.k_loc;
  } else {
    j["sigma2-l"] = cfg.local_variance.sigma2;
  }
  j["acq-budget"] = cfg.acquisition_budget;
  j["threads"] = cfg.threads;
  j["out"] = cfg.output_dir.string();
  return j;
}

nlohmann::json aggregate_to_json(const ExperimentConfig& cfg, const Objective& objective,
                                 const std::vector<MethodResults>& results, double total_wall_ms) {
  nlohmann::json j;
  j["objective"] = objective.name();
  j["dimension"] = objective.dimension();
  j["known_optimum"] = objective.known_optimum() ? nlohmann::json(*objective.known_optimum())
                                                 : nlohmann::json(nullptr);
  j["config"] = config_to_json(cfg);
  j["methods"] = nlohmann::json::array();
  j["results"] = nlohmann::json::object();
  for (const auto& mr : results) {
    const std::string name = to_string(mr.method);
    j["methods"].push_back(name);
    nlohmann::json m;
    m["budget"] = mr.config.budget;
    m["init_count"] = mr.config.init_count;
    m["noise"] = mr.config.noise;
    std::vector<std::uint64_t> seeds;
    std::vector<double> wall;
    std::vector<double> finals;
    std::vector<std::string> diagnostics;
    for (const auto& r : mr.runs.runs) {
      seeds.push_back(r.seed);
      wall.push_back(r.total_wall_ms);
      finals.push_back(r.rows.empty() ? std::numeric_limits<double>::quiet_NaN() : r.rows.back().best);
      diagnostics.push_back(r.aborted ? r.diagnostic : "");
    }
    m["seeds"] = seeds;
    m["wall_ms"] = wall;
    m["final_best"] = finals;
    m["diagnostics"] = diagnostics;
    m["mean"] = mr.runs.aggregate.mean;
    m["median"] = mr.runs.aggregate.median;
    m["ci95"] = mr.runs.aggregate.ci95;
    j["results"][name] = m;
  }
  j["total_wall_ms"] = total_wall_ms;
  return j;
}

}  // namespace spartan::cli
