#pragma once

#include <cmath>

#include <Eigen/Core>

#include "spartan/types.hpp"

namespace spartan {

/// Per-dimension ARD length-scales in normalized input space.
class LengthScales {
 public:
  /// Throws std::invalid_argument unless every entry is finite and strictly positive.
  explicit LengthScales(Eigen::VectorXd values);

  static LengthScales constant(Eigen::Index dim, double value);
  static LengthScales from_log(const Eigen::Ref<const Eigen::VectorXd>& log_values);

  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& inverse() const { return inverse_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }

 private:
  Eigen::VectorXd values_;
  Eigen::VectorXd inverse_;
};

namespace detail {

/// ARD distance r = || diag(1/theta) (a - b) ||, no validation.
inline double scaled_distance(const PointRef& a, const PointRef& b, const Eigen::VectorXd& inverse) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double t = (a[i] - b[i]) * inverse[i];
    sum += t * t;
  }
  return std::sqrt(sum);
}

}  // namespace detail
}  // namespace spartan
