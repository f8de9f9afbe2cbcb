#pragma once

#include <Eigen/Core>

#include "spartan/kernels.hpp"
#include "spartan/types.hpp"

namespace spartan {

inline constexpr double kDefaultNoise = 1e-6;
inline constexpr double kStdFloor = 1e-8;

/// Query points in [0,1]^d with raw and standardized outcomes.
///
/// Standardized outcomes are recomputed from the raw values on every insertion:
/// y = (y_raw - mean) / max(std, 1e-8), using the population standard deviation.
class ObservationSet {
 public:
  explicit ObservationSet(Eigen::Index dim);

  /// Throws std::invalid_argument if x has the wrong size, leaves [0,1]^d, or y is not finite.
  void add(const PointRef& x, double y_raw);

  Eigen::Index dimension() const { return dim_; }
  Eigen::Index size() const { return X_.cols(); }
  bool empty() const { return size() == 0; }

  const PointSet& points() const { return X_; }
  const Eigen::VectorXd& raw() const { return y_raw_; }
  const Eigen::VectorXd& standardized() const { return y_; }

  double raw_mean() const { return mean_; }
  double raw_scale() const { return scale_; }
  double standardize(double y_raw) const { return (y_raw - mean_) / scale_; }

  /// Index of the smallest raw outcome (first on ties).
  Eigen::Index best_index() const;

 private:
  void restandardize();

  Eigen::Index dim_;
  PointSet X_;
  Eigen::VectorXd y_raw_;
  Eigen::VectorXd y_;
  double mean_ = 0.0;
  double scale_ = 1.0;
};

/// Fitted GP for one hyperparameter sample. Immutable once built by `fit`.
class PosteriorSnapshot {
 public:
  const KernelSpec& spec() const { return spec_; }
  const Eigen::MatrixXd& chol() const { return chol_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  double m_hat() const { return m_hat_; }
  double noise() const { return noise_; }
  /// Diagonal jitter added on top of the noise (0 when the first factorization succeeded).
  double jitter() const { return jitter_; }

 private:
  friend PosteriorSnapshot fit(const ObservationSet&, const KernelSpec&, double);
  PosteriorSnapshot(KernelSpec spec, Eigen::MatrixXd chol, Eigen::VectorXd alpha, double m_hat,
                    double noise, double jitter)
      : spec_(std::move(spec)),
        chol_(std::move(chol)),
        alpha_(std::move(alpha)),
        m_hat_(m_hat),
        noise_(noise),
        jitter_(jitter) {}

  KernelSpec spec_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
  double m_hat_;
  double noise_;
  double jitter_;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

/// Constant-mean GP fit on the standardized outcomes.
///
/// The mean is the generalized least-squares estimate
/// m = (1' K^-1 y) / (1' K^-1 1). If K = Gram + noise I is not numerically positive
/// definite, jitter 1e-10, 1e-6 and 1e-4 is tried in turn before SingularModelError.
PosteriorSnapshot fit(const ObservationSet& obs, const KernelSpec& spec, double noise);

Prediction predict(const PosteriorSnapshot& post, const ObservationSet& obs, const PointRef& xq);

double log_marginal_likelihood(const PosteriorSnapshot& post, const ObservationSet& obs);

}  // namespace spartan
