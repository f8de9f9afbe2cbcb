#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "spartan/slice_sampler.hpp"
#include "spartan/surrogate.hpp"

using namespace spartan;

namespace {

ObservationSet random_observations(Rng& rng, int d, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ObservationSet obs(d);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) x[j] = u(rng);
    obs.add(x, std::sin(6.0 * x.sum()) + 0.3 * u(rng));
  }
  return obs;
}

// Dense-inverse reference for the GLS constant-mean GP.
struct DenseReference {
  double mean;
  double variance;
  double lml;
};

DenseReference dense_reference(const ObservationSet& obs, const KernelSpec& spec, double noise,
                               const Eigen::VectorXd& xq) {
  const Eigen::Index n = obs.size();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      K(i, j) = spec(obs.points().col(i), obs.points().col(j)) + (i == j ? noise : 0.0);
  const Eigen::MatrixXd Kinv = K.inverse();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd& y = obs.standardized();
  const double m = ones.dot(Kinv * y) / ones.dot(Kinv * ones);
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) k[i] = spec(xq, obs.points().col(i));
  const Eigen::VectorXd r = y - m * ones;
  DenseReference out;
  out.mean = m + k.dot(Kinv * r);
  out.variance = spec(xq, xq) - k.dot(Kinv * k);
  out.lml = -0.5 * r.dot(Kinv * r) - 0.5 * std::log(K.determinant()) -
            0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return out;
}

}  // namespace

TEST_CASE("observation set") {
  ObservationSet obs(2);
  CHECK(obs.empty());
  obs.add(Eigen::Vector2d(0.1, 0.2), 3.0);
  obs.add(Eigen::Vector2d(0.3, 0.4), 5.0);
  obs.add(Eigen::Vector2d(0.5, 0.6), 1.0);
  CHECK(obs.size() == 3);
  CHECK(obs.best_index() == 2);
  CHECK(std::abs(obs.standardized().mean()) < 1e-15);
  CHECK(std::abs(std::sqrt(obs.standardized().squaredNorm() / 3.0) - 1.0) < 1e-14);

  CHECK_THROWS_AS(obs.add(Eigen::Vector2d(1.1, 0.2), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(obs.add(Eigen::Vector2d(0.1, 0.2), std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(obs.add(Eigen::Vector3d(0.1, 0.2, 0.3), 0.0), std::invalid_argument);

  ObservationSet flat(1);
  Eigen::VectorXd x(1);
  x << 0.5;
  flat.add(x, 7.0);
  x << 0.6;
  flat.add(x, 7.0);
  CHECK(flat.standardized().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("posterior agrees with a dense-inverse oracle") {
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 24; ++trial) {
    const int d = 1 + trial % 3;
    const int n = 2 + trial % 11;
    const auto obs = random_observations(rng, d, n);
    Eigen::VectorXd g(d), l(d);
    for (int j = 0; j < d; ++j) {
      g[j] = 0.2 + u(rng);
      l[j] = 0.05 + 0.2 * u(rng);
    }
    Eigen::VectorXd c(d);
    for (int j = 0; j < d; ++j) c[j] = u(rng);
    const KernelSpec spec = trial % 2 == 0
                                ? KernelSpec::matern52(LengthScales(g))
                                : KernelSpec::spartan(LengthScales(g), LengthScales(l),
                                                      SpartanWeightConfig::with_defaults(c));
    const double noise = 1e-3;
    const auto post = fit(obs, spec, noise);
    CHECK(post.jitter() == 0.0);
    for (int q = 0; q < 5; ++q) {
      Eigen::VectorXd xq(d);
      for (int j = 0; j < d; ++j) xq[j] = u(rng);
      const auto ref = dense_reference(obs, spec, noise, xq);
      const auto p = predict(post, obs, xq);
      CHECK(std::abs(p.mean - ref.mean) < 1e-8);
      CHECK(std::abs(p.variance - std::max(ref.variance, 0.0)) < 1e-8);
    }
    CHECK(std::abs(log_marginal_likelihood(post, obs) - dense_reference(obs, spec, noise, c).lml) < 1e-8);
  }
}

TEST_CASE("single observation") {
  ObservationSet obs(1);
  Eigen::VectorXd x(1);
  x << 0.4;
  obs.add(x, 2.5);
  const auto post = fit(obs, KernelSpec::matern52(LengthScales::constant(1, 0.3)), 0.0);
  CHECK(std::abs(log_marginal_likelihood(post, obs) - (-0.9189385332046727)) < 1e-12);
  const auto p = predict(post, obs, x);
  CHECK(std::abs(p.mean) < 1e-15);
  CHECK(p.variance < 1e-12);
}

TEST_CASE("variance is non-negative and bounded by the prior") {
  Rng rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto obs = random_observations(rng, 2, 12);
    const auto spec = KernelSpec::matern52(LengthScales::constant(2, 0.05 + u(rng)));
    const auto post = fit(obs, spec, kDefaultNoise);
    for (int i = 0; i < obs.size(); ++i) {
      const auto p = predict(post, obs, obs.points().col(i));
      CHECK(p.variance >= 0.0);
      CHECK(p.variance < 1e-3);
    }
    for (int q = 0; q < 20; ++q) {
      const Eigen::Vector2d xq(u(rng), u(rng));
      const auto p = predict(post, obs, xq);
      CHECK(p.variance >= 0.0);
      CHECK(p.variance <= 1.0 + kDefaultNoise);
    }
  }
}

TEST_CASE("duplicate points engage the jitter ladder") {
  ObservationSet obs(1);
  Eigen::VectorXd x(1);
  x << 0.3;
  obs.add(x, 1.0);
  obs.add(x, 2.0);
  x << 0.8;
  obs.add(x, 0.0);
  const auto post = fit(obs, KernelSpec::matern52(LengthScales::constant(1, 0.4)), 0.0);
  CHECK(post.jitter() > 0.0);
  const auto p = predict(post, obs, x);
  CHECK(std::isfinite(p.mean));
}

TEST_CASE("fit rejects mismatched input") {
  ObservationSet obs(2);
  CHECK_THROWS_AS(fit(obs, KernelSpec::matern52(LengthScales::constant(2, 1.0)), 0.0), std::invalid_argument);
  obs.add(Eigen::Vector2d(0.2, 0.2), 1.0);
  CHECK_THROWS_AS(fit(obs, KernelSpec::matern52(LengthScales::constant(3, 1.0)), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fit(obs, KernelSpec::matern52(LengthScales::constant(2, 1.0)), -1.0), std::invalid_argument);
}

TEST_CASE("slice sampler: standard normal moments") {
  Rng rng(123);
  McmcConfig cfg;
  cfg.n_samples = 4000;
  cfg.burn_in = 50;
  cfg.thin = 1;
  const auto target = [](const Eigen::VectorXd& v) { return -0.5 * v.squaredNorm(); };
  const auto samples = slice_sample(target, Eigen::Vector2d(3.0, -3.0), cfg, rng);
  REQUIRE(samples.size() == 4000);
  for (int j = 0; j < 2; ++j) {
    double m = 0.0, m2 = 0.0;
    for (const auto& s : samples) {
      m += s[j];
      m2 += s[j] * s[j];
    }
    m /= 4000.0;
    m2 /= 4000.0;
    CHECK(std::abs(m) < 0.1);
    CHECK(std::abs(m2 - 1.0) < 0.1);
  }
}

TEST_CASE("slice sampler: uniform target passes a KS test") {
  Rng rng(7);
  McmcConfig cfg;
  cfg.n_samples = 10000;
  cfg.burn_in = 20;
  cfg.thin = 1;
  const auto target = [](const Eigen::VectorXd& v) {
    return (v[0] >= 0.0 && v[0] <= 1.0) ? 0.0 : -std::numeric_limits<double>::infinity();
  };
  Eigen::VectorXd start(1);
  start << 0.5;
  const auto samples = slice_sample(target, start, cfg, rng);
  std::vector<double> v;
  for (const auto& s : samples) {
    CHECK(s[0] >= 0.0);
    CHECK(s[0] <= 1.0);
    v.push_back(s[0]);
  }
  std::sort(v.begin(), v.end());
  double ks = 0.0;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    ks = std::max({ks, (i + 1) / n - v[i], v[i] - i / n});
  CHECK(ks < 0.02);
}

TEST_CASE("slice sampler: 1D normal at 10k samples") {
  Rng rng(321);
  McmcConfig cfg;
  cfg.n_samples = 10000;
  cfg.thin = 1;
  const auto target = [](const Eigen::VectorXd& v) { return -0.5 * v[0] * v[0]; };
  Eigen::VectorXd start(1);
  start << 0.0;
  const auto samples = slice_sample(target, start, cfg, rng);
  double m = 0.0, m2 = 0.0;
  for (const auto& s : samples) m += s[0];
  m /= 10000.0;
  for (const auto& s : samples) m2 += (s[0] - m) * (s[0] - m);
  const double var = m2 / 9999.0;
  CHECK(std::abs(m) <= 0.05);
  CHECK(var >= 0.9);
  CHECK(var <= 1.1);
}

TEST_CASE("slice sampler: 2D uniform square") {
  Rng rng(5);
  McmcConfig cfg;
  cfg.n_samples = 10000;
  cfg.burn_in = 10;
  cfg.thin = 1;
  cfg.step_width = 0.5;
  const auto target = [](const Eigen::VectorXd& v) {
    return (v.array() >= 0.0).all() && (v.array() <= 1.0).all() ? 0.0 : -std::numeric_limits<double>::infinity();
  };
  const auto samples = slice_sample(target, Eigen::Vector2d(0.5, 0.5), cfg, rng);
  for (int j = 0; j < 2; ++j) {
    double m = 0.0, m2 = 0.0;
    for (const auto& s : samples) m += s[j];
    m /= 10000.0;
    for (const auto& s : samples) m2 += (s[j] - m) * (s[j] - m);
    CHECK(std::abs(m - 0.5) < 0.02);
    CHECK(std::abs(m2 / 9999.0 - 1.0 / 12.0) < 0.005);
  }
}

TEST_CASE("slice sampler: argument checks") {
  Rng rng(1);
  const auto target = [](const Eigen::VectorXd& v) {
    return v[0] > 0.0 ? -v[0] : -std::numeric_limits<double>::infinity();
  };
  Eigen::VectorXd start(1);
  start << -1.0;
  CHECK_THROWS_AS(slice_sample(target, start, McmcConfig{}, rng), std::invalid_argument);
  McmcConfig bad;
  bad.thin = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = McmcConfig{};
  bad.step_width = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("slice sampler is deterministic for a fixed seed") {
  const auto target = [](const Eigen::VectorXd& v) { return -0.5 * v.squaredNorm(); };
  McmcConfig cfg;
  Rng a(55), b(55);
  const auto s1 = slice_sample(target, Eigen::Vector2d(0.0, 0.0), cfg, a);
  const auto s2 = slice_sample(target, Eigen::Vector2d(0.0, 0.0), cfg, b);
  REQUIRE(s1.size() == s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == s2[i]);
}

TEST_CASE("fit examples") {
  const auto spec = KernelSpec::matern52(LengthScales::constant(2, 0.3));
  SUBCASE("single observation with y = 0") {
    ObservationSet obs(2);
    obs.add(Eigen::Vector2d(0.4, 0.6), 0.0);
    const auto post = fit(obs, spec, 0.0);
    CHECK(post.m_hat() == 0.0);
    CHECK(post.alpha().size() == 1);
    CHECK(post.alpha()[0] == 0.0);
  }
  SUBCASE("two points against an explicit 2x2 inverse") {
    ObservationSet obs(2);
    obs.add(Eigen::Vector2d(0.2, 0.3), 1.5);
    obs.add(Eigen::Vector2d(0.7, 0.6), -0.5);
    const double noise = 1e-4;
    const auto post = fit(obs, spec, noise);
    const double a = 1.0 + noise, b = spec(obs.points().col(0), obs.points().col(1));
    const double det = a * a - b * b;
    Eigen::Matrix2d Kinv;
    Kinv << a / det, -b / det, -b / det, a / det;
    const Eigen::Vector2d one(1.0, 1.0);
    const Eigen::Vector2d y = obs.standardized();
    const double m = one.dot(Kinv * y) / one.dot(Kinv * one);
    for (int q = 0; q < 20; ++q) {
      const Eigen::Vector2d xq(q / 19.0, 1.0 - q / 19.0);
      const Eigen::Vector2d k(spec(xq, obs.points().col(0)), spec(xq, obs.points().col(1)));
      const auto p = predict(post, obs, xq);
      CHECK(std::abs(p.mean - (m + k.dot(Kinv * (y - m * one)))) < 1e-8);
      CHECK(std::abs(p.variance - std::max(0.0, 1.0 - k.dot(Kinv * k))) < 1e-8);
    }
  }
  SUBCASE("cholesky reconstructs K") {
    Rng rng(31);
    const auto obs = random_observations(rng, 2, 12);
    const auto post = fit(obs, spec, kDefaultNoise);
    const Eigen::MatrixXd K = gram_matrix(obs.points(), spec, kDefaultNoise);
    const Eigen::MatrixXd L = post.chol().triangularView<Eigen::Lower>();
    CHECK((L * L.transpose() - K).norm() / K.norm() < 1e-8);
  }
  SUBCASE("duplicates need at most 1e-4 jitter") {
    ObservationSet obs(2);
    obs.add(Eigen::Vector2d(0.5, 0.5), 1.0);
    obs.add(Eigen::Vector2d(0.5, 0.5), 1.0);
    const auto post = fit(obs, spec, 0.0);
    CHECK(post.jitter() > 0.0);
    CHECK(post.jitter() <= 1e-4);
  }
}

TEST_CASE("predict examples") {
  const auto spec = KernelSpec::matern52(LengthScales::constant(2, 0.01));
  ObservationSet obs(2);
  obs.add(Eigen::Vector2d(0.0, 0.0), 3.0);
  obs.add(Eigen::Vector2d(0.05, 0.0), 1.0);
  obs.add(Eigen::Vector2d(0.0, 0.05), 2.0);
  SUBCASE("prior recovery far from data") {
    const auto post = fit(obs, spec, kDefaultNoise);
    const Eigen::Vector2d far(1.0, 1.0);
    CHECK(cross_covariance(obs.points(), far, spec).maxCoeff() < 1e-12);
    const auto p = predict(post, obs, far);
    CHECK(std::abs(p.mean - post.m_hat()) < 1e-6);
    CHECK(std::abs(p.variance - 1.0) < 1e-6);
  }
  SUBCASE("interpolation with tiny noise") {
    const auto wide = KernelSpec::matern52(LengthScales::constant(2, 0.3));
    const auto post = fit(obs, wide, 1e-10);
    for (int i = 0; i < obs.size(); ++i) {
      const auto p = predict(post, obs, obs.points().col(i));
      CHECK(std::abs(p.mean - obs.standardized()[i]) <= 1e-4);
      CHECK(p.variance <= 1e-4);
    }
  }
  SUBCASE("ten-point model at 50 query points") {
    Rng rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto data = random_observations(rng, 2, 10);
    const auto m = KernelSpec::matern52(LengthScales(Eigen::Vector2d(0.25, 0.6)));
    const auto post = fit(data, m, kDefaultNoise);
    for (int q = 0; q < 50; ++q) {
      const Eigen::Vector2d xq(u(rng), u(rng));
      const auto ref = dense_reference(data, m, kDefaultNoise, xq);
      const auto p = predict(post, data, xq);
      CHECK(std::abs(p.mean - ref.mean) < 1e-8);
      CHECK(std::abs(p.variance - std::max(0.0, ref.variance)) < 1e-8);
    }
  }
}

TEST_CASE("six-point likelihood against explicit determinant and inverse") {
  Rng rng(43);
  const auto obs = random_observations(rng, 3, 6);
  const auto spec = KernelSpec::matern52(LengthScales(Eigen::Vector3d(0.3, 0.5, 0.8)));
  const auto post = fit(obs, spec, 1e-3);
  const auto ref = dense_reference(obs, spec, 1e-3, obs.points().col(0));
  CHECK(std::abs(log_marginal_likelihood(post, obs) - ref.lml) < 1e-8);
}

TEST_CASE("standardization is invariant under affine maps of the outcomes") {
  Rng rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ObservationSet a(2), b(2);
  for (int i = 0; i < 9; ++i) {
    const Eigen::Vector2d x(u(rng), u(rng));
    const double y = std::sin(7.0 * x[0]) * x[1];
    a.add(x, y);
    b.add(x, 250.0 * y - 13.0);
  }
  CHECK((a.standardized() - b.standardized()).cwiseAbs().maxCoeff() < 1e-12);
  const auto spec = KernelSpec::matern52(LengthScales::constant(2, 0.3));
  const auto pa = fit(a, spec, kDefaultNoise);
  const auto pb = fit(b, spec, kDefaultNoise);
  CHECK((pa.alpha() - pb.alpha()).cwiseAbs().maxCoeff() < 1e-8);
}
