#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "spartan/kernels.hpp"
#include "spartan/slice_sampler.hpp"
#include "spartan/surrogate.hpp"
#include "spartan/types.hpp"

namespace spartan {

enum class SurrogateKind {
  Stationary,  ///< one Matern 5/2 ARD kernel
  Spartan,     ///< global + local Matern 5/2 ARD with a learned local center
  Warped,      ///< Matern 5/2 ARD on Beta-CDF warped inputs
};

/// How sigma2_l of the local region is chosen.
struct LocalVariancePolicy {
  bool adaptive = false;
  double sigma2 = kDefaultSigma2Local;  ///< used when !adaptive
  int k_loc = 8;                        ///< points kept within 2 sigma_l when adaptive
};

struct HyperPriors {
  double log_scale_mean = std::log(0.3);
  double log_scale_sd = 1.0;
  double log_warp_mean = 0.0;
  double log_warp_sd = 0.75;
};

struct ModelConfig {
  SurrogateKind kind = SurrogateKind::Spartan;
  double noise = kDefaultNoise;
  LocalVariancePolicy local_variance;
  double psi = kDefaultPsi;
  double sigma2_g = kDefaultSigma2Global;
  /// Spartan only: local scales tied to the global ones, theta_p = psi, sigma2_l = sigma2_g.
  /// The kernel then reduces exactly to a single Matern kernel.
  bool pin_local_to_global = false;
  HyperPriors priors;
};

/// One draw of the kernel hyperparameters. Length-scales and warp shapes are in log space.
struct HyperSample {
  Eigen::VectorXd global_log_scales;
  Eigen::VectorXd local_log_scales;  ///< Spartan only
  Eigen::VectorXd theta_p;           ///< Spartan only, in [0,1]^d
  Eigen::VectorXd warp_log_params;   ///< Warped only: log alpha (d) then log beta (d)

  Eigen::Index coordinate_count() const;
  /// Blocks concatenated in declaration order.
  Eigen::VectorXd flatten() const;
};

/// Maps flat sampler states to kernels and scores them under the prior.
class HyperModel {
 public:
  HyperModel(Eigen::Index dim, ModelConfig cfg);

  Eigen::Index dimension() const { return dim_; }
  const ModelConfig& config() const { return cfg_; }
  Eigen::Index parameter_count() const;
  bool learns_local_center() const;

  HyperSample unflatten(const Eigen::VectorXd& flat) const;
  HyperSample prior_median() const;
  HyperSample draw_prior(Rng& rng) const;
  double log_prior(const HyperSample& s) const;

  /// Kernel induced by a sample; the observations are only consulted for adaptive sigma2_l.
  KernelSpec kernel_spec(const HyperSample& s, const ObservationSet& obs) const;

 private:
  Eigen::Index dim_;
  ModelConfig cfg_;
};

/// Log marginal likelihood of the fitted GP plus log prior; -inf when the model is singular
/// or the sample leaves the prior support. With no observations this is the log prior.
double log_posterior(const HyperSample& s, const ObservationSet& obs, const HyperModel& model);

/// Draws cfg.n_samples hyperparameter samples by slice sampling the posterior.
///
/// The chain starts from `warm_start` when given and finite there, otherwise from the
/// prior median. theta_p coordinates are reflected into [0,1] before evaluation.
/// Throws DegeneratePosteriorError when no finite starting state can be found.
std::vector<HyperSample> posterior_samples(const ObservationSet& obs, const HyperModel& model,
                                           const McmcConfig& cfg,
                                           const std::optional<HyperSample>& warm_start, Rng& rng);

/// Folds a real number into [0,1] by reflection at the boundaries.
double reflect_unit(double u);

}  // namespace spartan
