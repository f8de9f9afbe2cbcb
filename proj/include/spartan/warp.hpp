#pragma once

#include <Eigen/Core>

#include "spartan/length_scales.hpp"
#include "spartan/types.hpp"

namespace spartan {

/// Per-dimension Beta CDF shape parameters for input warping.
struct WarpParams {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;

  static WarpParams identity(Eigen::Index dim);
  /// Throws std::invalid_argument on size mismatch or non-positive entries.
  void validate() const;
};

/// Regularized incomplete beta function I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

/// CDF of Beta(a, b) at x; x is clamped to [0, 1].
double beta_cdf(double x, double a, double b);

/// Coordinate-wise Beta CDF transform. Throws std::invalid_argument if x leaves [0,1]^d.
Point warp_point(const PointRef& x, const WarpParams& w);

/// Matern 5/2 ARD kernel evaluated on warped inputs.
double warped_kernel(const PointRef& x, const PointRef& xp, const LengthScales& scales,
                     const WarpParams& w);

namespace detail {
double warped_kernel_unchecked(const PointRef& x, const PointRef& xp, const LengthScales& scales,
                               const WarpParams& w);
}

}  // namespace spartan
