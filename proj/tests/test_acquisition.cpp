#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "spartan/acquisition.hpp"

using namespace spartan;

namespace {

ObservationSet quadratic_observations(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ObservationSet obs(2);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d x(u(rng), u(rng));
    obs.add(x, (x - Eigen::Vector2d(0.3, 0.6)).squaredNorm());
  }
  return obs;
}

}  // namespace

TEST_CASE("ei closed form") {
  CHECK(std::abs(expected_improvement_term(0.0, 1.0, 0.0) - 0.3989422804014327) < 1e-15);
  CHECK(expected_improvement_term(0.0, 0.0, 1.0) == 1.0);
  CHECK(expected_improvement_term(2.0, 1e-12, 1.0) == 0.0);
  CHECK(expected_improvement_term(5.0, 1.0, 0.0) >= 0.0);
  CHECK(expected_improvement_term(40.0, 1.0, 0.0) == 0.0);
}

TEST_CASE("ei agrees with Monte Carlo") {
  Rng rng(77);
  std::normal_distribution<double> z(0.0, 1.0);
  const double cases[][3] = {{0.3, 0.8, 0.1}, {-1.0, 0.5, 0.0}, {0.0, 2.0, 1.5}, {1.0, 0.2, 1.1}};
  for (const auto& c : cases) {
    const double mu = c[0], sigma = c[1], rho = c[2];
    double acc = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) acc += std::max(0.0, rho - (mu + sigma * z(rng)));
    const double mc = acc / n;
    // Standard error is below sigma / sqrt(n); 5 sigma band.
    CHECK(std::abs(expected_improvement_term(mu, sigma, rho) - mc) < 5.0 * sigma / std::sqrt(n));
  }
}

TEST_CASE("ei properties") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 1000; ++t) {
    const double mu = u(rng), sigma = std::abs(u(rng)), rho = u(rng);
    const double ei = expected_improvement_term(mu, sigma, rho);
    CHECK(ei >= 0.0);
    CHECK(ei >= std::max(0.0, rho - mu) - 1e-12);
    // Monotone in the incumbent and in sigma.
    CHECK(expected_improvement_term(mu, sigma, rho + 0.1) >= ei);
    CHECK(expected_improvement_term(mu, sigma + 0.1, rho) >= ei);
  }
}

TEST_CASE("mixture ei sums the components") {
  const auto obs = quadratic_observations(8, 3);
  const auto inc = Incumbent::from(obs);
  CHECK(inc.x_best == obs.points().col(obs.best_index()));
  CHECK(inc.rho == obs.standardized()[obs.best_index()]);
  std::vector<PosteriorSnapshot> posts;
  for (double l : {0.1, 0.3, 0.9}) posts.push_back(fit(obs, KernelSpec::matern52(LengthScales::constant(2, l)), 1e-6));
  const Eigen::Vector2d x(0.41, 0.57);
  double sum = 0.0;
  for (const auto& p : posts) {
    const auto pr = predict(p, obs, x);
    sum += expected_improvement_term(pr.mean, std::sqrt(pr.variance), inc.rho);
  }
  CHECK(std::abs(expected_improvement(x, posts, obs, inc) - sum) < 1e-15);
  // EI vanishes at an observed point with negligible noise and zero improvement.
  CHECK(expected_improvement(inc.x_best, std::span(posts).first(1), obs, inc) < 1e-3);
}

TEST_CASE("maximizer returns a point in the box that beats the scan") {
  const auto obs = quadratic_observations(10, 5);
  const auto inc = Incumbent::from(obs);
  std::vector<PosteriorSnapshot> posts{fit(obs, KernelSpec::matern52(LengthScales::constant(2, 0.3)), 1e-6)};
  AcquisitionOptions opts;
  opts.budget = 500;
  Rng rng(4);
  const auto res = maximize_acquisition(posts, obs, inc, opts, rng);
  CHECK(res.x_next.size() == 2);
  CHECK(res.x_next.minCoeff() >= 0.0);
  CHECK(res.x_next.maxCoeff() <= 1.0);
  CHECK(std::abs(res.ei_value - expected_improvement(res.x_next, posts, obs, inc)) < 1e-12);
  // Compare against a dense grid scan.
  double grid_best = 0.0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j)
      grid_best = std::max(grid_best, expected_improvement(Eigen::Vector2d(i / 100.0, j / 100.0), posts, obs, inc));
  CHECK(res.ei_value >= 0.95 * grid_best);

  Rng again(4);
  CHECK(maximize_acquisition(posts, obs, inc, opts, again).x_next == res.x_next);
}

TEST_CASE("max variance point") {
  ObservationSet obs(1);
  Eigen::VectorXd x(1);
  x << 0.0;
  obs.add(x, 1.0);
  x << 0.1;
  obs.add(x, 2.0);
  std::vector<PosteriorSnapshot> posts{fit(obs, KernelSpec::matern52(LengthScales::constant(1, 0.1)), 1e-6)};
  Rng rng(1);
  const auto p = max_variance_point(posts, obs, 200, rng);
  CHECK(p[0] > 0.9);
}

TEST_CASE("nelder mead in the unit box") {
  const auto f = [](const Point& x) { return (x - Eigen::Vector2d(0.3, 0.7)).squaredNorm(); };
  const auto r = nelder_mead_unit_box(f, Eigen::Vector2d(0.9, 0.1), 400);
  CHECK((r.x - Eigen::Vector2d(0.3, 0.7)).norm() < 1e-4);
  CHECK(r.evaluations <= 400);

  const auto edge = [](const Point& x) { return x[0] + x[1]; };
  const auto e = nelder_mead_unit_box(edge, Eigen::Vector2d(0.5, 0.5), 400);
  CHECK(e.x.minCoeff() >= 0.0);
  CHECK(e.value < 1e-3);
}

TEST_CASE("ei degenerate limits") {
  CHECK(expected_improvement_term(1.0 + 0.0, 1e-12, 0.0) == 0.0);
  CHECK(expected_improvement_term(-1.0, 1e-12, 0.0) == 1.0);
}

TEST_CASE("mixture ei agrees with Monte Carlo over the mixture") {
  const auto obs = quadratic_observations(7, 9);
  const auto inc = Incumbent::from(obs);
  std::vector<PosteriorSnapshot> posts;
  for (double l : {0.15, 0.4}) posts.push_back(fit(obs, KernelSpec::matern52(LengthScales::constant(2, l)), 1e-6));
  const Eigen::Vector2d x(0.3, 0.6);
  Rng rng(10);
  std::normal_distribution<double> z(0.0, 1.0);
  double total = 0.0;
  for (const auto& p : posts) {
    const auto pr = predict(p, obs, x);
    const double sd = std::sqrt(pr.variance);
    const int n = 1000000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double imp = std::max(0.0, inc.rho - (pr.mean + sd * z(rng)));
      s1 += imp;
      s2 += imp * imp;
    }
    const double mc = s1 / n;
    const double se = std::sqrt((s2 / n - mc * mc) / (n - 1));
    REQUIRE(mc > 1e-6);
    CHECK(std::abs(expected_improvement_term(pr.mean, sd, inc.rho) - mc) <= 3.0 * se);
    total += expected_improvement_term(pr.mean, sd, inc.rho);
  }
  CHECK(std::abs(expected_improvement(x, posts, obs, inc) - total) < 1e-15);
}

TEST_CASE("single interior peak in 1D matches a dense grid argmax") {
  ObservationSet obs(1);
  Eigen::VectorXd x(1);
  x << 0.2;
  obs.add(x, 0.0);
  x << 0.8;
  obs.add(x, 1.0);
  std::vector<PosteriorSnapshot> posts{fit(obs, KernelSpec::matern52(LengthScales::constant(1, 0.3)), 1e-6)};
  const auto inc = Incumbent::from(obs);
  double best = -1.0, arg = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    x << i / 100000.0;
    const double v = expected_improvement(x, posts, obs, inc);
    if (v > best) {
      best = v;
      arg = x[0];
    }
  }
  AcquisitionOptions opts;
  opts.budget = 200;
  Rng rng(3);
  const auto res = maximize_acquisition(posts, obs, inc, opts, rng);
  CHECK(std::abs(res.x_next[0] - arg) < 1e-2);
}

TEST_CASE("flat ei returns a scan point with zero value") {
  ObservationSet obs(1);
  Eigen::VectorXd x(1);
  for (int i = 0; i <= 20; ++i) {
    x << i / 20.0;
    obs.add(x, i == 0 ? -1e6 : 1.0);
  }
  std::vector<PosteriorSnapshot> posts{fit(obs, KernelSpec::matern52(LengthScales::constant(1, 5.0)), 1e-6)};
  auto inc = Incumbent::from(obs);
  inc.rho = -1e3;  // far below every achievable mu - 5 sigma
  AcquisitionOptions opts;
  opts.budget = 200;
  Rng rng(1);
  const auto res = maximize_acquisition(posts, obs, inc, opts, rng);
  CHECK(res.ei_value == 0.0);
  CHECK(res.x_next.size() == 1);
}

TEST_CASE("argmax is invariant under affine maps of the outcomes") {
  Rng data_rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ObservationSet a(2), b(2);
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector2d x(u(data_rng), u(data_rng));
    const double y = (x - Eigen::Vector2d(0.3, 0.6)).squaredNorm();
    a.add(x, y);
    b.add(x, 4.0 * y + 100.0);
  }
  const auto spec = KernelSpec::matern52(LengthScales::constant(2, 0.3));
  std::vector<PosteriorSnapshot> pa{fit(a, spec, 1e-6)}, pb{fit(b, spec, 1e-6)};
  AcquisitionOptions opts;
  opts.budget = 400;
  Rng ra(8), rb(8);
  const auto xa = maximize_acquisition(pa, a, Incumbent::from(a), opts, ra).x_next;
  const auto xb = maximize_acquisition(pb, b, Incumbent::from(b), opts, rb).x_next;
  CHECK((xa - xb).cwiseAbs().maxCoeff() < 1e-6);
}
