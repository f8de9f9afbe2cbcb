#include "spartan/hyperlearn.hpp"

#include <limits>
#include <numbers>
#include <stdexcept>

namespace spartan {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kPriorRestarts = 20;

double normal_logpdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double block_logpdf(const Eigen::VectorXd& v, double mean, double sd) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += normal_logpdf(v[i], mean, sd);
  return sum;
}

}  // namespace

double reflect_unit(double u) {
  double r = std::fmod(u, 2.0);
  if (r < 0.0) r += 2.0;
  return r <= 1.0 ? r : 2.0 - r;
}

Eigen::Index HyperSample::coordinate_count() const {
  return global_log_scales.size() + local_log_scales.size() + theta_p.size() +
         warp_log_params.size();
}

Eigen::VectorXd HyperSample::flatten() const {
  Eigen::VectorXd flat(coordinate_count());
  flat << global_log_scales, local_log_scales, theta_p, warp_log_params;
  return flat;
}

HyperModel::HyperModel(Eigen::Index dim, ModelConfig cfg) : dim_(dim), cfg_(std::move(cfg)) {
  if (dim < 1) throw std::invalid_argument("HyperModel: dimension must be >= 1");
  if (!(cfg_.noise >= 0.0)) throw std::invalid_argument("HyperModel: noise must be >= 0");
  if (!cfg_.local_variance.adaptive && !(cfg_.local_variance.sigma2 > 0.0)) {
    throw std::invalid_argument("HyperModel: sigma2_l must be positive");
  }
  if (!(cfg_.sigma2_g > 0.0)) throw std::invalid_argument("HyperModel: sigma2_g must be positive");
  if (!(cfg_.priors.log_scale_sd > 0.0) || !(cfg_.priors.log_warp_sd > 0.0)) {
    throw std::invalid_argument("HyperModel: prior spreads must be positive");
  }
}

bool HyperModel::learns_local_center() const {
  return cfg_.kind == SurrogateKind::Spartan && !cfg_.pin_local_to_global;
}

Eigen::Index HyperModel::parameter_count() const {
  switch (cfg_.kind) {
    case SurrogateKind::Stationary:
      return dim_;
    case SurrogateKind::Spartan:
      return cfg_.pin_local_to_global ? dim_ : 3 * dim_;
    case SurrogateKind::Warped:
      return 3 * dim_;
  }
  return dim_;
}

HyperSample HyperModel::unflatten(const Eigen::VectorXd& flat) const {
  if (flat.size() != parameter_count()) {
    throw std::invalid_argument("HyperModel::unflatten: wrong number of coordinates");
  }
  HyperSample s;
  s.global_log_scales = flat.head(dim_);
  if (cfg_.kind == SurrogateKind::Spartan && !cfg_.pin_local_to_global) {
    s.local_log_scales = flat.segment(dim_, dim_);
    s.theta_p = flat.segment(2 * dim_, dim_);
  } else if (cfg_.kind == SurrogateKind::Warped) {
    s.warp_log_params = flat.segment(dim_, 2 * dim_);
  }
  return s;
}

HyperSample HyperModel::prior_median() const {
  Eigen::VectorXd flat(parameter_count());
  flat.head(dim_).setConstant(cfg_.priors.log_scale_mean);
  if (learns_local_center()) {
    flat.segment(dim_, dim_).setConstant(cfg_.priors.log_scale_mean);
    flat.segment(2 * dim_, dim_).setConstant(cfg_.psi);
  } else if (cfg_.kind == SurrogateKind::Warped) {
    flat.segment(dim_, 2 * dim_).setConstant(cfg_.priors.log_warp_mean);
  }
  return unflatten(flat);
}

HyperSample HyperModel::draw_prior(Rng& rng) const {
  std::normal_distribution<double> scale(cfg_.priors.log_scale_mean, cfg_.priors.log_scale_sd);
  std::normal_distribution<double> warp(cfg_.priors.log_warp_mean, cfg_.priors.log_warp_sd);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd flat(parameter_count());
  for (Eigen::Index i = 0; i < dim_; ++i) flat[i] = scale(rng);
  if (learns_local_center()) {
    for (Eigen::Index i = 0; i < dim_; ++i) flat[dim_ + i] = scale(rng);
    for (Eigen::Index i = 0; i < dim_; ++i) flat[2 * dim_ + i] = unit(rng);
  } else if (cfg_.kind == SurrogateKind::Warped) {
    for (Eigen::Index i = 0; i < 2 * dim_; ++i) flat[dim_ + i] = warp(rng);
  }
  return unflatten(flat);
}

double HyperModel::log_prior(const HyperSample& s) const {
  const auto& p = cfg_.priors;
  double lp = block_logpdf(s.global_log_scales, p.log_scale_mean, p.log_scale_sd);
  lp += block_logpdf(s.local_log_scales, p.log_scale_mean, p.log_scale_sd);
  for (Eigen::Index i = 0; i < s.theta_p.size(); ++i) {
    if (!(s.theta_p[i] >= 0.0 && s.theta_p[i] <= 1.0)) return kNegInf;
  }
  lp += block_logpdf(s.warp_log_params, p.log_warp_mean, p.log_warp_sd);
  return lp;
}

KernelSpec HyperModel::kernel_spec(const HyperSample& s, const ObservationSet& obs) const {
  LengthScales global = LengthScales::from_log(s.global_log_scales);
  switch (cfg_.kind) {
    case SurrogateKind::Stationary:
      return KernelSpec::matern52(std::move(global));
    case SurrogateKind::Warped: {
      WarpParams w{s.warp_log_params.head(dim_).array().exp().matrix(),
                   s.warp_log_params.tail(dim_).array().exp().matrix()};
      return KernelSpec::warped_matern52(std::move(global), std::move(w));
    }
    case SurrogateKind::Spartan:
      break;
  }
  SpartanWeightConfig weights;
  weights.psi = Eigen::VectorXd::Constant(dim_, cfg_.psi);
  weights.sigma2_g = cfg_.sigma2_g;
  if (cfg_.pin_local_to_global) {
    weights.theta_p = weights.psi;
    weights.sigma2_l = cfg_.sigma2_g;
    LengthScales local = global;
    return KernelSpec::spartan(std::move(global), std::move(local), std::move(weights));
  }
  weights.theta_p = s.theta_p;
  weights.sigma2_l = cfg_.local_variance.adaptive
                         ? adaptive_local_variance(obs.points(), s.theta_p, cfg_.local_variance.k_loc)
                         : cfg_.local_variance.sigma2;
  return KernelSpec::spartan(std::move(global), LengthScales::from_log(s.local_log_scales),
                             std::move(weights));
}

double log_posterior(const HyperSample& s, const ObservationSet& obs, const HyperModel& model) {
  const double lp = model.log_prior(s);
  if (!std::isfinite(lp)) return kNegInf;
  if (obs.empty()) return lp;
  try {
    const auto post = fit(obs, model.kernel_spec(s, obs), model.config().noise);
    const double ll = log_marginal_likelihood(post, obs);
    return std::isfinite(ll) ? ll + lp : kNegInf;
  } catch (const SingularModelError&) {
    return kNegInf;
  } catch (const std::invalid_argument&) {
    // Length-scales overflowing to inf or underflowing to 0 after exponentiation.
    return kNegInf;
  }
}

std::vector<HyperSample> posterior_samples(const ObservationSet& obs, const HyperModel& model,
                                           const McmcConfig& cfg,
                                           const std::optional<HyperSample>& warm_start, Rng& rng) {
  if (obs.empty()) throw std::invalid_argument("posterior_samples: no observations");
  const Eigen::Index d = model.dimension();
  const bool reflect = model.learns_local_center();

  auto fold = [&](Eigen::VectorXd v) {
    if (reflect) {
      for (Eigen::Index i = 2 * d; i < 3 * d; ++i) v[i] = reflect_unit(v[i]);
    }
    return v;
  };
  const LogDensity target = [&](const Eigen::VectorXd& u) {
    return log_posterior(model.unflatten(fold(u)), obs, model);
  };

  std::optional<Eigen::VectorXd> start;
  auto try_start = [&](const HyperSample& s) {
    if (s.coordinate_count() != model.parameter_count()) return;
    Eigen::VectorXd flat = s.flatten();
    if (std::isfinite(target(flat))) start = std::move(flat);
  };
  if (warm_start) try_start(*warm_start);
  if (!start) try_start(model.prior_median());
  for (int attempt = 0; !start && attempt < kPriorRestarts; ++attempt) {
    try_start(model.draw_prior(rng));
  }
  if (!start) {
    throw DegeneratePosteriorError("posterior_samples: no hyperparameter state with finite density");
  }

  const auto states = slice_sample(target, *start, cfg, rng);
  std::vector<HyperSample> samples;
  samples.reserve(states.size());
  for (const auto& u : states) samples.push_back(model.unflatten(fold(u)));
  return samples;
}

}  // namespace spartan
