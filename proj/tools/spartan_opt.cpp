// Command-line harness for benchmark experiments.
//
//   spartan-opt run --objective branin --method bo,sbo --budget 40 --repeats 20 --seed 7
//   spartan-opt run --config experiment.cfg --out results
//   spartan-opt report results

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "spartan/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace spartan::cli;

  CLI::App app{"Bayesian optimization benchmark harness (BO, SBO, WARP)"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run repeated optimizations and write per-run CSVs");
  std::string config_path;
  run->add_option("--config", config_path, "key = value config file; flags override it");
  std::map<std::string, std::string> flags;
  const std::map<std::string, std::string> help{
      {"objective", "gramacy, branin, hartmann6, michalewicz-d<k>-m<j>, mountain-car"},
      {"method", "comma-separated list of bo, sbo, warp"},
      {"budget", "total objective evaluations per run"},
      {"init-count", "initial design size"},
      {"init", "initial design: lhs or sobol"},
      {"repeats", "number of seeded runs per method"},
      {"seed", "seed base; run r uses seed + r"},
      {"mcmc-samples", "hyperparameter samples per iteration"},
      {"burn-in", "MCMC burn-in sweeps"},
      {"thin", "MCMC sweeps between retained samples"},
      {"step-width", "slice sampler bracket width"},
      {"max-stepout", "slice sampler step-out limit"},
      {"noise", "GP noise variance"},
      {"sigma2-l", "fixed local-region variance"},
      {"adaptive-k-loc", "adapt the local-region variance to keep k points inside"},
      {"acq-budget", "EI evaluations per iteration (0 = 2000 d)"},
      {"threads", "worker threads (0 = SPARTAN_OPT_THREADS or all cores)"},
      {"out", "output directory"},
  };
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const auto& key : setting_keys()) {
    options.emplace_back(key, run->add_option("--" + key, flags[key], help.at(key)));
  }

  auto* report = app.add_subcommand("report", "summarize a result directory");
  std::string report_dir;
  report->add_option("dir", report_dir, "directory written by `run`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  if (run->parsed()) {
    ExperimentConfig cfg;
    try {
      if (!config_path.empty()) apply_config_file(cfg, config_path);
      for (const auto& [key, opt] : options) {
        if (opt->count() > 0) apply_setting(cfg, key, flags[key]);
      }
    } catch (const ConfigError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitBadInput;
    }
    return cmd_run(cfg, std::cout, std::cerr);
  }
  return cmd_report(report_dir, std::cout, std::cerr);
}
