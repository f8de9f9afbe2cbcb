#pragma once

#include <optional>

#include <Eigen/Core>

#include "spartan/length_scales.hpp"
#include "spartan/types.hpp"
#include "spartan/warp.hpp"

namespace spartan {

inline constexpr double kDefaultSigma2Global = 10.0;
inline constexpr double kDefaultSigma2Local = 0.05;
inline constexpr double kDefaultPsi = 0.5;

/// Gaussian region weights of the Spartan kernel.
///
/// The global region is centered at psi with variance sigma2_g, the local region
/// at theta_p with variance sigma2_l. Both use isotropic normal densities.
struct SpartanWeightConfig {
  Eigen::VectorXd psi;
  double sigma2_g = kDefaultSigma2Global;
  double sigma2_l = kDefaultSigma2Local;
  Eigen::VectorXd theta_p;

  /// psi = [0.5]^d, sigma2_g = 10, sigma2_l = 0.05.
  static SpartanWeightConfig with_defaults(const Eigen::VectorXd& theta_p);

  void validate() const;
};

struct RegionWeights {
  double global = 0.0;  ///< lambda_g
  double local = 0.0;   ///< lambda_l
};

enum class KernelKind { SquaredExponential, Matern52, Spartan, WarpedMatern52 };

/// Immutable kernel configuration. All kernels are unit-variance correlation functions.
class KernelSpec {
 public:
  static KernelSpec squared_exponential(LengthScales scales);
  static KernelSpec matern52(LengthScales scales);
  /// Global and local Matern 5/2 ARD kernels blended by region weights (one local region).
  static KernelSpec spartan(LengthScales global_scales, LengthScales local_scales,
                            SpartanWeightConfig weights);
  static KernelSpec warped_matern52(LengthScales scales, WarpParams warp);

  KernelKind kind() const { return kind_; }
  Eigen::Index dimension() const { return global_.size(); }
  /// d for plain kernels, 3d for Spartan and warped kernels.
  Eigen::Index hyperparameter_count() const;

  const LengthScales& global_scales() const { return global_; }
  const LengthScales& local_scales() const;
  const SpartanWeightConfig& weights() const;
  const WarpParams& warp() const;

  /// Kernel value with argument validation.
  double operator()(const PointRef& x, const PointRef& xp) const;

 private:
  KernelSpec(KernelKind kind, LengthScales global) : kind_(kind), global_(std::move(global)) {}

  KernelKind kind_;
  LengthScales global_;
  std::optional<LengthScales> local_;
  std::optional<SpartanWeightConfig> weights_;
  std::optional<WarpParams> warp_;
};

double matern52(const PointRef& x, const PointRef& xp, const LengthScales& scales);
double squared_exponential(const PointRef& x, const PointRef& xp, const LengthScales& scales);

/// Matern 5/2 as a function of the scaled distance r.
inline double matern52_from_distance(double r) {
  constexpr double kSqrt5 = 2.23606797749978969640917366873128;
  const double s = kSqrt5 * r;
  return std::exp(-s) * (1.0 + s + s * s / 3.0);
}

/// Normalized weights; lambda_g^2 + lambda_l^2 = 1.
RegionWeights spartan_weights(const PointRef& x, const SpartanWeightConfig& cfg);

/// Spartan composite kernel; throws std::invalid_argument unless spec.kind() is Spartan.
double spartan_kernel(const PointRef& x, const PointRef& xp, const KernelSpec& spec);

/// K[i][j] = k(x_i, x_j) + noise * [i == j]; points are the columns of X.
Eigen::MatrixXd gram_matrix(const PointSet& X, const KernelSpec& spec, double noise);

/// k(x_q, X) as an n-vector.
Eigen::VectorXd cross_covariance(const PointSet& X, const PointRef& xq, const KernelSpec& spec);

/// Local-region variance chosen so that `k_loc` observed points lie within 2 sigma_l of
/// theta_p. sigma_l is clamped to [0.01, 0.25]; returns sigma_l^2.
double adaptive_local_variance(const PointSet& X, const PointRef& theta_p, int k_loc);

namespace detail {

/// Squared weights (w_g, w_l) = (lambda_g^2, lambda_l^2), computed in log space.
std::pair<double, double> squared_region_weights(const PointRef& x, const SpartanWeightConfig& cfg);

double kernel_unchecked(const PointRef& x, const PointRef& xp, const KernelSpec& spec);

}  // namespace detail
}  // namespace spartan
