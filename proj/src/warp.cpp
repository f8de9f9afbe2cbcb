#include "spartan/warp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spartan/kernels.hpp"

namespace spartan {
namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

WarpParams WarpParams::identity(Eigen::Index dim) {
  return WarpParams{Eigen::VectorXd::Ones(dim), Eigen::VectorXd::Ones(dim)};
}

void WarpParams::validate() const {
  if (alpha.size() != beta.size() || alpha.size() == 0) {
    throw std::invalid_argument("warp alpha/beta must be non-empty and equally sized");
  }
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0) || !(beta[i] > 0.0) || !std::isfinite(alpha[i]) ||
        !std::isfinite(beta[i])) {
      throw std::invalid_argument("warp parameters must be finite and positive");
    }
  }
}

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete beta requires a, b > 0");
  }
  if (std::isnan(x)) {
    throw std::invalid_argument("incomplete beta requires finite x");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges quickly only on the side of the mean; use symmetry otherwise.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double beta_cdf(double x, double a, double b) {
  return regularized_incomplete_beta(x, a, b);
}

Point warp_point(const PointRef& x, const WarpParams& w) {
  w.validate();
  if (x.size() != w.alpha.size()) {
    throw std::invalid_argument("warp_point: dimension mismatch");
  }
  Point z(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!(x[j] >= 0.0 && x[j] <= 1.0)) {
      throw std::invalid_argument("warp_point: input outside the unit hypercube");
    }
    z[j] = regularized_incomplete_beta(x[j], w.alpha[j], w.beta[j]);
  }
  return z;
}

double warped_kernel(const PointRef& x, const PointRef& xp, const LengthScales& scales,
                     const WarpParams& w) {
  return matern52(warp_point(x, w), warp_point(xp, w), scales);
}

namespace detail {

double warped_kernel_unchecked(const PointRef& x, const PointRef& xp, const LengthScales& scales,
                               const WarpParams& w) {
  const Eigen::Index d = x.size();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double zj = regularized_incomplete_beta(x[j], w.alpha[j], w.beta[j]);
    const double zpj = regularized_incomplete_beta(xp[j], w.alpha[j], w.beta[j]);
    const double t = (zj - zpj) * scales.inverse()[j];
    sum += t * t;
  }
  return matern52_from_distance(std::sqrt(sum));
}

}  // namespace detail
}  // namespace spartan
