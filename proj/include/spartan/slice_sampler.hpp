#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "spartan/types.hpp"

namespace spartan {

struct McmcConfig {
  int n_samples = 10;       ///< retained samples
  int burn_in = 100;        ///< sweeps discarded before the first retained sample
  int thin = 10;            ///< sweeps between retained samples
  double step_width = 1.0;  ///< initial bracket width per coordinate
  int max_stepout = 10;

  void validate() const;
};

using LogDensity = std::function<double(const Eigen::VectorXd&)>;

/// Coordinate-wise univariate slice sampling with stepping out and shrinkage.
///
/// One sweep updates every coordinate once, in order. After `burn_in` sweeps, the
/// state is recorded after every `thin`-th sweep until `n_samples` states are kept.
/// The target may return -infinity outside its support. Throws std::invalid_argument
/// if the target is not finite at `start`.
std::vector<Eigen::VectorXd> slice_sample(const LogDensity& target, const Eigen::VectorXd& start,
                                          const McmcConfig& cfg, Rng& rng);

}  // namespace spartan
