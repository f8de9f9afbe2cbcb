#include "spartan/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>
#include <stdexcept>

namespace spartan {
namespace {

constexpr double kPi = std::numbers::pi;

void check_box(const PointRef& x, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
               const char* what) {
  if (x.size() != lo.size()) throw std::invalid_argument(std::string(what) + ": wrong dimension");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lo[i] && x[i] <= hi[i])) {
      throw std::invalid_argument(std::string(what) + ": point outside the domain");
    }
  }
}

Box uniform_box(Eigen::Index d, double lo, double hi) {
  return Box{Eigen::VectorXd::Constant(d, lo), Eigen::VectorXd::Constant(d, hi)};
}

const Box& gramacy_box() {
  static const Box box = uniform_box(2, -2.0, 6.0);
  return box;
}

const Box& branin_box() {
  static const Box box{Eigen::Vector2d(-5.0, 0.0), Eigen::Vector2d(10.0, 15.0)};
  return box;
}

const Box& hartmann_box() {
  static const Box box = uniform_box(6, 0.0, 1.0);
  return box;
}

// Published minima for the common m = 10 settings.
std::optional<double> michalewicz_reference_optimum(int d, int m) {
  if (m != 10) return std::nullopt;
  switch (d) {
    case 2:
      return -1.8013034;
    case 5:
      return -4.687658;
    case 10:
      return -9.66015;
    default:
      return std::nullopt;
  }
}

}  // namespace

Objective::Objective(std::string name, Box bounds, Function fn, bool stochastic,
                     std::optional<double> known_optimum)
    : name_(std::move(name)),
      bounds_(std::move(bounds)),
      fn_(std::move(fn)),
      stochastic_(stochastic),
      known_optimum_(known_optimum) {
  if (bounds_.lower.size() == 0 || bounds_.lower.size() != bounds_.upper.size() ||
      !(bounds_.upper.array() > bounds_.lower.array()).all()) {
    throw std::invalid_argument("Objective: invalid bounds");
  }
}

Point Objective::to_native(const PointRef& unit) const {
  Point x = bounds_.lower.array() + unit.array() * (bounds_.upper - bounds_.lower).array();
  return x.cwiseMax(bounds_.lower).cwiseMin(bounds_.upper);
}

Point Objective::to_unit(const PointRef& native) const {
  return ((native - bounds_.lower).array() / (bounds_.upper - bounds_.lower).array()).matrix();
}

double Objective::evaluate_native(const PointRef& native, Rng& rng) const {
  if (native.size() != dimension()) {
    throw std::invalid_argument("Objective " + name_ + ": wrong dimension");
  }
  return fn_(native, rng);
}

double Objective::evaluate_unit(const PointRef& unit, Rng& rng) const {
  return evaluate_native(to_native(unit), rng);
}

double gramacy(const PointRef& x) {
  check_box(x, gramacy_box().lower, gramacy_box().upper, "gramacy");
  return x[0] * std::exp(-x[0] * x[0] - x[1] * x[1]);
}

double branin(const PointRef& x) {
  check_box(x, branin_box().lower, branin_box().upper, "branin");
  constexpr double a = 1.0;
  constexpr double b = 5.1 / (4.0 * kPi * kPi);
  constexpr double c = 5.0 / kPi;
  constexpr double r = 6.0;
  constexpr double s = 10.0;
  constexpr double t = 1.0 / (8.0 * kPi);
  const double q = x[1] - b * x[0] * x[0] + c * x[0] - r;
  return a * q * q + s * (1.0 - t) * std::cos(x[0]) + s;
}

double hartmann6(const PointRef& x) {
  check_box(x, hartmann_box().lower, hartmann_box().upper, "hartmann6");
  static constexpr double alpha[4] = {1.0, 1.2, 3.0, 3.2};
  static constexpr double A[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                     {0.05, 10, 17, 0.1, 8, 14},
                                     {3, 3.5, 1.7, 10, 17, 8},
                                     {17, 8, 0.05, 10, 0.1, 14}};
  static constexpr double P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                     {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                     {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                     {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double t = x[j] - P[i][j];
      inner += A[i][j] * t * t;
    }
    sum += alpha[i] * std::exp(-inner);
  }
  return -sum;
}

double michalewicz(const PointRef& x, int m) {
  if (m < 1) throw std::invalid_argument("michalewicz: m must be >= 1");
  if (x.size() < 1) throw std::invalid_argument("michalewicz: empty point");
  check_box(x, Eigen::VectorXd::Zero(x.size()), Eigen::VectorXd::Constant(x.size(), kPi),
            "michalewicz");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double s = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / kPi);
    sum += std::sin(x[i]) * std::pow(s, 2 * m);
  }
  return -sum;
}

MountainCarState MountainCarDynamics::step(MountainCarState s, double action) {
  const double a = std::clamp(action, -1.0, 1.0);
  s.velocity += kPower * a - kGravity * std::cos(3.0 * s.position);
  s.velocity = std::clamp(s.velocity, -kMaxSpeed, kMaxSpeed);
  s.position += s.velocity;
  s.position = std::clamp(s.position, kMinPosition, kMaxPosition);
  if (s.position <= kMinPosition && s.velocity < 0.0) s.velocity = 0.0;
  return s;
}

int run_episode(const CarPolicy& policy, MountainCarState start, int horizon) {
  MountainCarState s = start;
  for (int t = 1; t <= horizon; ++t) {
    s = MountainCarDynamics::step(s, policy(s));
    if (MountainCarDynamics::at_goal(s)) return t;
  }
  return horizon;
}

Eigen::Matrix<double, 7, 1> car_features(const MountainCarState& s) {
  const double p = s.position;
  const double v = s.velocity;
  Eigen::Matrix<double, 7, 1> phi;
  phi << 1.0, p, v, p * p, v * v, p * v, std::abs(v);
  return phi;
}

Eigen::Matrix<double, 7, 1> unbounded_policy_weights(const PointRef& w01, double epsilon_pi) {
  if (w01.size() != 7) throw std::invalid_argument("mountain car policy needs 7 weights");
  Eigen::Matrix<double, 7, 1> w;
  for (int i = 0; i < 7; ++i) w[i] = std::tan((kPi - epsilon_pi) * w01[i] - kPi / 2.0);
  return w;
}

double mountain_car_objective(const PointRef& w01, const MountainCarTask& task, Rng& rng) {
  if (task.horizon < 1 || task.episodes_per_eval < 1 || !(task.epsilon_pi > 0.0)) {
    throw std::invalid_argument("mountain car: invalid task configuration");
  }
  check_box(w01, Eigen::VectorXd::Zero(7), Eigen::VectorXd::Ones(7), "mountain car");
  const auto w = unbounded_policy_weights(w01, task.epsilon_pi);
  const CarPolicy policy = [&w](const MountainCarState& s) {
    return std::tanh(w.dot(car_features(s)));
  };
  std::uniform_real_distribution<double> start_dist(-0.6, -0.4);
  double total = 0.0;
  for (int e = 0; e < task.episodes_per_eval; ++e) {
    const MountainCarState start{start_dist(rng), 0.0};
    total += run_episode(policy, start, task.horizon);
  }
  return total / task.episodes_per_eval;
}

Objective make_objective(const std::string& name) {
  auto deterministic = [](double (*f)(const PointRef&)) {
    return [f](const PointRef& x, Rng&) { return f(x); };
  };
  if (name == "gramacy") {
    return Objective(name, gramacy_box(), deterministic(&gramacy), false, kGramacyOptimum);
  }
  if (name == "branin") {
    return Objective(name, branin_box(), deterministic(&branin), false, kBraninOptimum);
  }
  if (name == "hartmann6") {
    return Objective(name, hartmann_box(), deterministic(&hartmann6), false, kHartmann6Optimum);
  }
  if (name == "mountain-car") {
    const MountainCarTask task;
    return Objective(
        name, uniform_box(7, 0.0, 1.0),
        [task](const PointRef& x, Rng& rng) { return mountain_car_objective(x, task, rng); },
        true, std::nullopt);
  }
  static const std::regex michalewicz_name(R"(michalewicz-d([0-9]+)-m([0-9]+))");
  std::smatch match;
  if (std::regex_match(name, match, michalewicz_name)) {
    const int d = std::stoi(match[1].str());
    const int m = std::stoi(match[2].str());
    if (d < 1 || d > 64 || m < 1) {
      throw std::invalid_argument("michalewicz: unsupported parameters in '" + name + "'");
    }
    return Objective(
        name, uniform_box(d, 0.0, kPi), [m](const PointRef& x, Rng&) { return michalewicz(x, m); },
        false, michalewicz_reference_optimum(d, m));
  }
  throw std::invalid_argument("unknown objective '" + name + "'");
}

std::vector<std::string> registered_objective_names() {
  return {"gramacy", "branin", "hartmann6", "michalewicz-d<k>-m<j>", "mountain-car"};
}

}  // namespace spartan
