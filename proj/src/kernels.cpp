#include "spartan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace spartan {
namespace {

void require_finite(const PointRef& x, const char* what) {
  if (!x.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite input");
  }
}

void require_dims(const PointRef& x, const PointRef& xp, Eigen::Index d, const char* what) {
  if (x.size() != d || xp.size() != d) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
  require_finite(x, what);
  require_finite(xp, what);
}

// Log of the isotropic normal density N(center, sigma2 I) at x.
double log_isotropic_normal(const PointRef& x, const Eigen::VectorXd& center, double sigma2) {
  double sq = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double t = x[i] - center[i];
    sq += t * t;
  }
  const double d = static_cast<double>(x.size());
  return -0.5 * d * std::log(2.0 * std::numbers::pi * sigma2) - 0.5 * sq / sigma2;
}

// w and wp hold the squared weights (w_g, w_l) of x and xp.
double spartan_from_weights(const PointRef& x, const PointRef& xp, const Eigen::Vector2d& w,
                            const Eigen::Vector2d& wp, const KernelSpec& spec) {
  const double kg =
      matern52_from_distance(detail::scaled_distance(x, xp, spec.global_scales().inverse()));
  const double kl =
      matern52_from_distance(detail::scaled_distance(x, xp, spec.local_scales().inverse()));
  // lambda(x) lambda(x') = sqrt(w(x) w(x')).
  return std::sqrt(w[0] * wp[0]) * kg + std::sqrt(w[1] * wp[1]) * kl;
}

double spartan_unchecked(const PointRef& x, const PointRef& xp, const KernelSpec& spec) {
  const auto& cfg = spec.weights();
  const auto [wg, wl] = detail::squared_region_weights(x, cfg);
  const auto [wgp, wlp] = detail::squared_region_weights(xp, cfg);
  return spartan_from_weights(x, xp, Eigen::Vector2d(wg, wl), Eigen::Vector2d(wgp, wlp), spec);
}

Eigen::Matrix2Xd point_weights(const PointSet& X, const SpartanWeightConfig& cfg) {
  Eigen::Matrix2Xd w(2, X.cols());
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    const auto [wg, wl] = detail::squared_region_weights(X.col(i), cfg);
    w(0, i) = wg;
    w(1, i) = wl;
  }
  return w;
}

}  // namespace

SpartanWeightConfig SpartanWeightConfig::with_defaults(const Eigen::VectorXd& theta_p) {
  SpartanWeightConfig cfg;
  cfg.psi = Eigen::VectorXd::Constant(theta_p.size(), kDefaultPsi);
  cfg.theta_p = theta_p;
  return cfg;
}

void SpartanWeightConfig::validate() const {
  if (psi.size() == 0 || psi.size() != theta_p.size()) {
    throw std::invalid_argument("spartan weights: psi and theta_p must share dimension");
  }
  if (!(sigma2_g > 0.0) || !(sigma2_l > 0.0) || !std::isfinite(sigma2_g) ||
      !std::isfinite(sigma2_l)) {
    throw std::invalid_argument("spartan weights: variances must be finite and positive");
  }
  if (!psi.allFinite() || !theta_p.allFinite()) {
    throw std::invalid_argument("spartan weights: centers must be finite");
  }
}

KernelSpec KernelSpec::squared_exponential(LengthScales scales) {
  return KernelSpec(KernelKind::SquaredExponential, std::move(scales));
}

KernelSpec KernelSpec::matern52(LengthScales scales) {
  return KernelSpec(KernelKind::Matern52, std::move(scales));
}

KernelSpec KernelSpec::spartan(LengthScales global_scales, LengthScales local_scales,
                               SpartanWeightConfig weights) {
  weights.validate();
  if (global_scales.size() != local_scales.size() || global_scales.size() != weights.psi.size()) {
    throw std::invalid_argument("spartan kernel: dimension mismatch between blocks");
  }
  KernelSpec spec(KernelKind::Spartan, std::move(global_scales));
  spec.local_ = std::move(local_scales);
  spec.weights_ = std::move(weights);
  return spec;
}

KernelSpec KernelSpec::warped_matern52(LengthScales scales, WarpParams warp) {
  warp.validate();
  if (warp.alpha.size() != scales.size()) {
    throw std::invalid_argument("warped kernel: dimension mismatch");
  }
  KernelSpec spec(KernelKind::WarpedMatern52, std::move(scales));
  spec.warp_ = std::move(warp);
  return spec;
}

Eigen::Index KernelSpec::hyperparameter_count() const {
  switch (kind_) {
    case KernelKind::Spartan:
    case KernelKind::WarpedMatern52:
      return 3 * dimension();
    default:
      return dimension();
  }
}

const LengthScales& KernelSpec::local_scales() const {
  if (!local_) throw std::logic_error("kernel spec has no local scales");
  return *local_;
}

const SpartanWeightConfig& KernelSpec::weights() const {
  if (!weights_) throw std::logic_error("kernel spec has no region weights");
  return *weights_;
}

const WarpParams& KernelSpec::warp() const {
  if (!warp_) throw std::logic_error("kernel spec has no warp parameters");
  return *warp_;
}

double KernelSpec::operator()(const PointRef& x, const PointRef& xp) const {
  require_dims(x, xp, dimension(), "kernel");
  if (kind_ == KernelKind::WarpedMatern52) {
    return warped_kernel(x, xp, global_, *warp_);
  }
  return detail::kernel_unchecked(x, xp, *this);
}

double matern52(const PointRef& x, const PointRef& xp, const LengthScales& scales) {
  require_dims(x, xp, scales.size(), "matern52");
  return matern52_from_distance(detail::scaled_distance(x, xp, scales.inverse()));
}

double squared_exponential(const PointRef& x, const PointRef& xp, const LengthScales& scales) {
  require_dims(x, xp, scales.size(), "squared_exponential");
  const double r = detail::scaled_distance(x, xp, scales.inverse());
  return std::exp(-0.5 * r * r);
}

RegionWeights spartan_weights(const PointRef& x, const SpartanWeightConfig& cfg) {
  cfg.validate();
  if (x.size() != cfg.psi.size()) {
    throw std::invalid_argument("spartan_weights: dimension mismatch");
  }
  require_finite(x, "spartan_weights");
  const auto [wg, wl] = detail::squared_region_weights(x, cfg);
  return RegionWeights{std::sqrt(wg), std::sqrt(wl)};
}

double spartan_kernel(const PointRef& x, const PointRef& xp, const KernelSpec& spec) {
  if (spec.kind() != KernelKind::Spartan) {
    throw std::invalid_argument("spartan_kernel: spec is not a Spartan kernel");
  }
  require_dims(x, xp, spec.dimension(), "spartan_kernel");
  return spartan_unchecked(x, xp, spec);
}

Eigen::MatrixXd gram_matrix(const PointSet& X, const KernelSpec& spec, double noise) {
  if (X.rows() != spec.dimension()) {
    throw std::invalid_argument("gram_matrix: dimension mismatch");
  }
  if (!(noise >= 0.0)) {
    throw std::invalid_argument("gram_matrix: noise must be non-negative");
  }
  if (!X.allFinite()) {
    throw std::invalid_argument("gram_matrix: non-finite input");
  }
  const Eigen::Index n = X.cols();
  Eigen::MatrixXd K(n, n);
  if (spec.kind() == KernelKind::Spartan) {
    const auto w = point_weights(X, spec.weights());
    for (Eigen::Index j = 0; j < n; ++j) {
      K(j, j) = spartan_from_weights(X.col(j), X.col(j), w.col(j), w.col(j), spec) + noise;
      for (Eigen::Index i = j + 1; i < n; ++i) {
        const double v = spartan_from_weights(X.col(i), X.col(j), w.col(i), w.col(j), spec);
        K(i, j) = v;
        K(j, i) = v;
      }
    }
    return K;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    K(j, j) = detail::kernel_unchecked(X.col(j), X.col(j), spec) + noise;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = detail::kernel_unchecked(X.col(i), X.col(j), spec);
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

Eigen::VectorXd cross_covariance(const PointSet& X, const PointRef& xq, const KernelSpec& spec) {
  if (X.rows() != spec.dimension() || xq.size() != spec.dimension()) {
    throw std::invalid_argument("cross_covariance: dimension mismatch");
  }
  Eigen::VectorXd k(X.cols());
  if (spec.kind() == KernelKind::Spartan) {
    const auto [wg, wl] = detail::squared_region_weights(xq, spec.weights());
    const Eigen::Vector2d wq(wg, wl);
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
      const auto [g, l] = detail::squared_region_weights(X.col(i), spec.weights());
      k[i] = spartan_from_weights(xq, X.col(i), wq, Eigen::Vector2d(g, l), spec);
    }
    return k;
  }
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    k[i] = detail::kernel_unchecked(xq, X.col(i), spec);
  }
  return k;
}

double adaptive_local_variance(const PointSet& X, const PointRef& theta_p, int k_loc) {
  constexpr double kMinSigma = 0.01;
  constexpr double kMaxSigma = 0.25;
  if (k_loc < 1) throw std::invalid_argument("adaptive_local_variance: k_loc must be >= 1");
  if (X.cols() == 0) return kMaxSigma * kMaxSigma;
  std::vector<double> dist(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    dist[static_cast<std::size_t>(i)] = (X.col(i) - theta_p).norm();
  }
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(k_loc), dist.size()) - 1;
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  const double sigma = std::clamp(0.5 * dist[k], kMinSigma, kMaxSigma);
  return sigma * sigma;
}

namespace detail {

std::pair<double, double> squared_region_weights(const PointRef& x,
                                                 const SpartanWeightConfig& cfg) {
  const double log_g = log_isotropic_normal(x, cfg.psi, cfg.sigma2_g);
  const double log_l = log_isotropic_normal(x, cfg.theta_p, cfg.sigma2_l);
  const double delta = log_g - log_l;
  // Logistic forms of the normalized densities.
  return {1.0 / (1.0 + std::exp(-delta)), 1.0 / (1.0 + std::exp(delta))};
}

double kernel_unchecked(const PointRef& x, const PointRef& xp, const KernelSpec& spec) {
  switch (spec.kind()) {
    case KernelKind::Matern52:
      return matern52_from_distance(scaled_distance(x, xp, spec.global_scales().inverse()));
    case KernelKind::SquaredExponential: {
      const double r = scaled_distance(x, xp, spec.global_scales().inverse());
      return std::exp(-0.5 * r * r);
    }
    case KernelKind::Spartan:
      return spartan_unchecked(x, xp, spec);
    case KernelKind::WarpedMatern52:
      return warped_kernel_unchecked(x, xp, spec.global_scales(), spec.warp());
  }
  return 0.0;
}

}  // namespace detail
}  // namespace spartan
