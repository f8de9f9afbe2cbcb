#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spartan/types.hpp"

namespace spartan {

/// Axis-aligned native search box.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

/// Black-box cost to minimize. The harness works in [0,1]^d and maps affinely to `bounds`.
class Objective {
 public:
  /// `rng` is only used by stochastic objectives.
  using Function = std::function<double(const PointRef& native, Rng& rng)>;

  Objective(std::string name, Box bounds, Function fn, bool stochastic,
            std::optional<double> known_optimum);

  const std::string& name() const { return name_; }
  Eigen::Index dimension() const { return bounds_.lower.size(); }
  const Box& bounds() const { return bounds_; }
  bool stochastic() const { return stochastic_; }
  const std::optional<double>& known_optimum() const { return known_optimum_; }

  Point to_native(const PointRef& unit) const;
  Point to_unit(const PointRef& native) const;

  double evaluate_native(const PointRef& native, Rng& rng) const;
  double evaluate_unit(const PointRef& unit, Rng& rng) const;

 private:
  std::string name_;
  Box bounds_;
  Function fn_;
  bool stochastic_;
  std::optional<double> known_optimum_;
};

/// x1 exp(-x1^2 - x2^2) on [-2, 6]^2.
double gramacy(const PointRef& x);
/// Branin-Hoo on [-5, 10] x [0, 15].
double branin(const PointRef& x);
/// Hartmann 6D on [0, 1]^6.
double hartmann6(const PointRef& x);
/// Michalewicz on [0, pi]^d with steepness m.
double michalewicz(const PointRef& x, int m);

inline constexpr double kGramacyOptimum = -0.42888194248035300;
inline constexpr double kBraninOptimum = 0.39788735772973816;
inline constexpr double kHartmann6Optimum = -3.32236801141551;

struct MountainCarTask {
  int horizon = 500;
  int episodes_per_eval = 5;
  double epsilon_pi = 1e-2;
};

struct MountainCarState {
  double position = -0.5;
  double velocity = 0.0;
};

/// Continuous mountain car (Sutton and Barto); actions are clipped to [-1, 1].
struct MountainCarDynamics {
  static constexpr double kMinPosition = -1.2;
  static constexpr double kMaxPosition = 0.6;
  static constexpr double kMaxSpeed = 0.07;
  static constexpr double kGoalPosition = 0.5;
  static constexpr double kPower = 0.001;
  static constexpr double kGravity = 0.0025;

  static MountainCarState step(MountainCarState s, double action);
  static bool at_goal(const MountainCarState& s) { return s.position >= kGoalPosition; }
};

using CarPolicy = std::function<double(const MountainCarState&)>;

/// Steps until the goal is reached, or `horizon` when it is not.
int run_episode(const CarPolicy& policy, MountainCarState start, int horizon);

/// Perceptron features (1, p, v, p^2, v^2, p v, |v|).
Eigen::Matrix<double, 7, 1> car_features(const MountainCarState& s);

/// w = tan((pi - eps) w01 - pi/2).
Eigen::Matrix<double, 7, 1> unbounded_policy_weights(const PointRef& w01, double epsilon_pi);

/// Mean steps-to-goal (horizon when not reached) over episodes with start p ~ U(-0.6, -0.4).
double mountain_car_objective(const PointRef& w01, const MountainCarTask& task, Rng& rng);

/// Registered names: gramacy, branin, hartmann6, michalewicz-d<k>-m<j>, mountain-car.
/// Throws std::invalid_argument for unknown names.
Objective make_objective(const std::string& name);

std::vector<std::string> registered_objective_names();

}  // namespace spartan
