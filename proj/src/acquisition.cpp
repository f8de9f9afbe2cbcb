#include "spartan/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spartan/design.hpp"

namespace spartan {
namespace {

constexpr double kMinSigma = 1e-10;

bool lexicographically_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

// Better = larger value; equal values prefer the lexicographically smaller point.
bool better(double va, const Point& a, double vb, const Point& b) {
  if (va != vb) return va > vb;
  return lexicographically_less(a, b);
}

Point clamp_unit(Point x) { return x.cwiseMax(0.0).cwiseMin(1.0); }

}  // namespace

Incumbent Incumbent::from(const ObservationSet& obs) {
  const Eigen::Index i = obs.best_index();
  Incumbent inc;
  inc.y_best_raw = obs.raw()[i];
  inc.rho = obs.standardized()[i];
  inc.x_best = obs.points().col(i);
  return inc;
}

double expected_improvement_term(double mu, double sigma, double rho) {
  const double diff = rho - mu;
  if (sigma < kMinSigma) return std::max(0.0, diff);
  const double z = diff / sigma;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return std::max(0.0, diff * cdf + sigma * pdf);
}

double expected_improvement(const PointRef& x, std::span<const PosteriorSnapshot> posteriors,
                            const ObservationSet& obs, const Incumbent& inc) {
  double ei = 0.0;
  for (const auto& post : posteriors) {
    const Prediction p = predict(post, obs, x);
    ei += expected_improvement_term(p.mean, std::sqrt(p.variance), inc.rho);
  }
  return ei;
}

AcquisitionResult maximize_acquisition(std::span<const PosteriorSnapshot> posteriors,
                                       const ObservationSet& obs, const Incumbent& inc,
                                       const AcquisitionOptions& opts, Rng& rng) {
  if (posteriors.empty()) throw std::invalid_argument("maximize_acquisition: no posteriors");
  const auto d = static_cast<int>(obs.dimension());
  const int budget = opts.budget > 0 ? opts.budget : 2000 * d;
  if (budget < 100) throw std::invalid_argument("maximize_acquisition: budget must be >= 100");

  auto ei = [&](const Point& x) { return expected_improvement(x, posteriors, obs, inc); };

  Point best_x = clamp_unit(inc.x_best);
  double best_v = ei(best_x);
  auto consider = [&](const Point& x) {
    const double v = ei(x);
    if (better(v, x, best_v, best_x)) {
      best_v = v;
      best_x = x;
    }
  };
  for (const auto& s : opts.seeds) consider(clamp_unit(s));

  const int scan = static_cast<int>(std::ceil(0.9 * budget));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Point shift(d);
  for (int j = 0; j < d; ++j) shift[j] = unif(rng);
  SobolSequence seq(d);
  Point x(d);
  for (int i = 0; i < scan; ++i) {
    seq.next(x);
    for (int j = 0; j < d; ++j) {
      const double v = x[j] + shift[j];
      x[j] = v >= 1.0 ? v - 1.0 : v;
    }
    consider(x);
  }

  const int local_budget = budget - scan;
  if (local_budget > d + 1) {
    const auto nm = nelder_mead_unit_box([&](const Point& p) { return -ei(p); }, best_x,
                                         local_budget);
    if (better(-nm.value, nm.x, best_v, best_x)) {
      best_v = -nm.value;
      best_x = nm.x;
    }
  }
  return AcquisitionResult{best_x, best_v};
}

Point max_variance_point(std::span<const PosteriorSnapshot> posteriors, const ObservationSet& obs,
                         int budget, Rng& rng) {
  if (posteriors.empty()) throw std::invalid_argument("max_variance_point: no posteriors");
  const auto d = static_cast<int>(obs.dimension());
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Point shift(d);
  for (int j = 0; j < d; ++j) shift[j] = unif(rng);
  SobolSequence seq(d);
  Point x(d);
  Point best_x;
  double best_v = -1.0;
  for (int i = 0; i < std::max(budget, 1); ++i) {
    seq.next(x);
    for (int j = 0; j < d; ++j) {
      const double v = x[j] + shift[j];
      x[j] = v >= 1.0 ? v - 1.0 : v;
    }
    double var = 0.0;
    for (const auto& post : posteriors) var += predict(post, obs, x).variance;
    var /= static_cast<double>(posteriors.size());
    if (best_x.size() == 0 || better(var, x, best_v, best_x)) {
      best_v = var;
      best_x = x;
    }
  }
  return best_x;
}

NelderMeadResult nelder_mead_unit_box(const std::function<double(const Point&)>& f,
                                      const Point& start, int max_evaluations,
                                      double initial_step) {
  const Eigen::Index d = start.size();
  const auto n = static_cast<std::size_t>(d + 1);
  std::vector<Point> simplex(n);
  std::vector<double> values(n);
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  simplex[0] = clamp_unit(start);
  values[0] = eval(simplex[0]);
  for (Eigen::Index i = 0; i < d; ++i) {
    Point v = simplex[0];
    v[i] += v[i] + initial_step <= 1.0 ? initial_step : -initial_step;
    simplex[static_cast<std::size_t>(i + 1)] = clamp_unit(v);
    values[static_cast<std::size_t>(i + 1)] = eval(simplex[static_cast<std::size_t>(i + 1)]);
  }

  std::vector<std::size_t> order(n);
  while (evals + 2 <= max_evaluations) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 2];
    if (std::abs(values[worst] - values[best]) <= 1e-14 * (1.0 + std::abs(values[best])) &&
        (simplex[worst] - simplex[best]).norm() < 1e-10) {
      break;
    }

    Point centroid = Point::Zero(d);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(d);

    const Point reflected = clamp_unit(centroid + (centroid - simplex[worst]));
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Point expanded = clamp_unit(centroid + 2.0 * (centroid - simplex[worst]));
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      const Point contracted = outside ? Point(clamp_unit(centroid + 0.5 * (reflected - centroid)))
                                       : Point(clamp_unit(centroid + 0.5 * (simplex[worst] - centroid)));
      const double fc = eval(contracted);
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        if (evals + static_cast<int>(d) > max_evaluations) break;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          values[i] = eval(simplex[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (values[i] < values[best] ||
        (values[i] == values[best] && lexicographically_less(simplex[i], simplex[best]))) {
      best = i;
    }
  }
  return NelderMeadResult{simplex[best], values[best], evals};
}

}  // namespace spartan
