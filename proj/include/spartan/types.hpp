#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace spartan {

/// A point in input space. Optimization-side code works in the unit hypercube.
using Point = Eigen::VectorXd;
using PointRef = Eigen::Ref<const Eigen::VectorXd>;

/// A set of points stored column-wise (d x n), one point per column.
using PointSet = Eigen::MatrixXd;

using Rng = std::mt19937_64;

/// Raised when a covariance matrix cannot be factorized even after jitter.
class SingularModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when no hyperparameter state with finite posterior density is found.
class DegeneratePosteriorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Derives an independent 64-bit seed for a named stream (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0);

}  // namespace spartan
