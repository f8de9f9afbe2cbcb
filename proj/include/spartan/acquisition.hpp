#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spartan/surrogate.hpp"
#include "spartan/types.hpp"

namespace spartan {

/// EI reference level. rho is the standardized best outcome.
struct Incumbent {
  double rho = 0.0;
  Point x_best;
  double y_best_raw = 0.0;

  static Incumbent from(const ObservationSet& obs);
};

struct AcquisitionResult {
  Point x_next;
  double ei_value = 0.0;
};

/// Single-component improvement term (rho - mu) Phi(z) + sigma phi(z).
/// For sigma < 1e-10 this is max(0, rho - mu).
double expected_improvement_term(double mu, double sigma, double rho);

/// Sum of per-sample EI terms over the hyperparameter mixture.
double expected_improvement(const PointRef& x, std::span<const PosteriorSnapshot> posteriors,
                            const ObservationSet& obs, const Incumbent& inc);

struct AcquisitionOptions {
  int budget = 0;             ///< EI evaluations; 0 selects 2000 d
  std::vector<Point> seeds;   ///< extra scan candidates (e.g. local-region centers)
};

/// Sobol scan of ceil(0.9 budget) points (randomly shifted per call), plus x_best and the
/// seeds, followed by Nelder-Mead refinement from the best scan point with the rest of the
/// budget. Ties resolve to the lexicographically smallest point.
AcquisitionResult maximize_acquisition(std::span<const PosteriorSnapshot> posteriors,
                                       const ObservationSet& obs, const Incumbent& inc,
                                       const AcquisitionOptions& opts, Rng& rng);

/// Scan point with the largest mean predictive variance; used when EI is flat.
Point max_variance_point(std::span<const PosteriorSnapshot> posteriors, const ObservationSet& obs,
                         int budget, Rng& rng);

/// Bounded Nelder-Mead minimization over [0,1]^d; returns the best point and its value.
struct NelderMeadResult {
  Point x;
  double value = 0.0;
  int evaluations = 0;
};
NelderMeadResult nelder_mead_unit_box(const std::function<double(const Point&)>& f,
                                      const Point& start, int max_evaluations,
                                      double initial_step = 0.05);

}  // namespace spartan
