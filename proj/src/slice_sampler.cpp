#include "spartan/slice_sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace spartan {
namespace {

// Neal (2003), stepping out followed by shrinkage, for coordinate i of x.
// On return x[i] holds the new value and the function returns its log density.
double update_coordinate(const LogDensity& target, Eigen::VectorXd& x, Eigen::Index i,
                         double current_logp, const McmcConfig& cfg, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double x0 = x[i];
  const double level = current_logp + std::log(unif(rng));

  auto eval_at = [&](double v) {
    x[i] = v;
    return target(x);
  };

  double left = x0 - cfg.step_width * unif(rng);
  double right = left + cfg.step_width;
  int j = static_cast<int>(std::floor(cfg.max_stepout * unif(rng)));
  int k = cfg.max_stepout - 1 - j;
  while (j > 0 && eval_at(left) > level) {
    left -= cfg.step_width;
    --j;
  }
  while (k > 0 && eval_at(right) > level) {
    right += cfg.step_width;
    --k;
  }

  for (;;) {
    const double proposal = left + unif(rng) * (right - left);
    const double logp = eval_at(proposal);
    if (logp > level) return logp;
    if (proposal < x0) {
      left = proposal;
    } else {
      right = proposal;
    }
    if (right - left < 1e-14 * (1.0 + std::abs(x0))) {
      // The bracket collapsed onto the current point.
      x[i] = x0;
      return current_logp;
    }
  }
}

}  // namespace

void McmcConfig::validate() const {
  if (n_samples < 1) throw std::invalid_argument("mcmc: n_samples must be >= 1");
  if (burn_in < 0) throw std::invalid_argument("mcmc: burn_in must be >= 0");
  if (thin < 1) throw std::invalid_argument("mcmc: thin must be >= 1");
  if (!(step_width > 0.0)) throw std::invalid_argument("mcmc: step_width must be positive");
  if (max_stepout < 1) throw std::invalid_argument("mcmc: max_stepout must be >= 1");
}

std::vector<Eigen::VectorXd> slice_sample(const LogDensity& target, const Eigen::VectorXd& start,
                                          const McmcConfig& cfg, Rng& rng) {
  cfg.validate();
  Eigen::VectorXd x = start;
  double logp = target(x);
  if (!std::isfinite(logp)) {
    throw std::invalid_argument("slice_sample: target is not finite at the start point");
  }

  auto sweep = [&] {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      logp = update_coordinate(target, x, i, logp, cfg, rng);
    }
  };

  for (int s = 0; s < cfg.burn_in; ++s) sweep();
  std::vector<Eigen::VectorXd> samples;
  samples.reserve(static_cast<std::size_t>(cfg.n_samples));
  while (static_cast<int>(samples.size()) < cfg.n_samples) {
    for (int t = 0; t < cfg.thin; ++t) sweep();
    samples.push_back(x);
  }
  return samples;
}

}  // namespace spartan
