#include "spartan/surrogate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace spartan {

ObservationSet::ObservationSet(Eigen::Index dim) : dim_(dim), X_(dim, 0) {
  if (dim < 1) throw std::invalid_argument("ObservationSet: dimension must be >= 1");
}

void ObservationSet::add(const PointRef& x, double y_raw) {
  if (x.size() != dim_) throw std::invalid_argument("ObservationSet::add: dimension mismatch");
  for (Eigen::Index i = 0; i < dim_; ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw std::invalid_argument("ObservationSet::add: point outside the unit hypercube");
    }
  }
  if (!std::isfinite(y_raw)) throw std::invalid_argument("ObservationSet::add: non-finite outcome");
  const Eigen::Index n = size();
  X_.conservativeResize(Eigen::NoChange, n + 1);
  X_.col(n) = x;
  y_raw_.conservativeResize(n + 1);
  y_raw_[n] = y_raw;
  restandardize();
}

void ObservationSet::restandardize() {
  const double n = static_cast<double>(y_raw_.size());
  mean_ = y_raw_.sum() / n;
  const double var = (y_raw_.array() - mean_).square().sum() / n;
  scale_ = std::max(std::sqrt(var), kStdFloor);
  y_ = (y_raw_.array() - mean_) / scale_;
}

Eigen::Index ObservationSet::best_index() const {
  if (empty()) throw std::logic_error("ObservationSet::best_index: no observations");
  Eigen::Index idx = 0;
  y_raw_.minCoeff(&idx);
  return idx;
}

PosteriorSnapshot fit(const ObservationSet& obs, const KernelSpec& spec, double noise) {
  if (obs.empty()) throw std::invalid_argument("fit: at least one observation required");
  if (!(noise >= 0.0)) throw std::invalid_argument("fit: noise must be non-negative");

  Eigen::MatrixXd K = gram_matrix(obs.points(), spec, noise);
  const Eigen::Index n = K.rows();
  constexpr std::array<double, 4> kJitterLadder{0.0, 1e-10, 1e-6, 1e-4};
  constexpr double kMinPivot = 16.0 * std::numeric_limits<double>::epsilon();

  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  bool ok = false;
  for (const double j : kJitterLadder) {
    jitter = j;
    if (j > 0.0) {
      llt.compute(K + Eigen::MatrixXd::Identity(n, n) * j);
    } else {
      llt.compute(K);
    }
    // Pivots at round-off level mean the factor is numerically rank deficient.
    if (llt.info() == Eigen::Success &&
        llt.matrixLLT().diagonal().array().square().minCoeff() > kMinPivot * K.diagonal().maxCoeff()) {
      ok = true;
      break;
    }
  }
  if (!ok) throw SingularModelError("fit: covariance not positive definite after jitter 1e-4");

  Eigen::MatrixXd L = llt.matrixL();
  const auto lower = L.triangularView<Eigen::Lower>();
  const Eigen::VectorXd& y = obs.standardized();
  const Eigen::VectorXd u = lower.solve(Eigen::VectorXd::Ones(n));
  const Eigen::VectorXd v = lower.solve(y);
  const double m_hat = u.dot(v) / u.squaredNorm();
  Eigen::VectorXd alpha = v - m_hat * u;
  L.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha);
  return PosteriorSnapshot(spec, std::move(L), std::move(alpha), m_hat, noise, jitter);
}

Prediction predict(const PosteriorSnapshot& post, const ObservationSet& obs, const PointRef& xq) {
  const Eigen::VectorXd k = cross_covariance(obs.points(), xq, post.spec());
  const double prior = detail::kernel_unchecked(xq, xq, post.spec());
  Prediction p;
  p.mean = post.m_hat() + k.dot(post.alpha());
  const Eigen::VectorXd w = post.chol().triangularView<Eigen::Lower>().solve(k);
  p.variance = std::clamp(prior - w.squaredNorm(), 0.0, prior + post.noise());
  return p;
}

double log_marginal_likelihood(const PosteriorSnapshot& post, const ObservationSet& obs) {
  const Eigen::Index n = obs.size();
  const Eigen::VectorXd residual = obs.standardized().array() - post.m_hat();
  const double quad = residual.dot(post.alpha());
  const double log_det_half = post.chol().diagonal().array().log().sum();
  return -0.5 * quad - log_det_half - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

}  // namespace spartan
