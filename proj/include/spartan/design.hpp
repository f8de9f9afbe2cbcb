#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spartan/types.hpp"

namespace spartan {

enum class InitKind { LHS, Sobol };

inline constexpr int kMaxSobolDimension = 32;

/// Latin hypercube of p points in [0,1)^d, one point per stratum in every coordinate.
PointSet lhs(int p, int d, Rng& rng);

/// Points 1..p of the Joe-Kuo Sobol sequence (the all-zero point 0 is skipped).
/// Throws UnsupportedDimensionError for d > 32.
PointSet sobol(int p, int d);

/// Incremental Gray-code Sobol generator (Antonov-Saleev), 32-bit resolution.
class SobolSequence {
 public:
  explicit SobolSequence(int d);

  /// Next point; the first call returns point 1 of the sequence.
  Point next();
  void next(Eigen::Ref<Eigen::VectorXd> out);
  int dimension() const { return dim_; }

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<std::array<std::uint32_t, 32>> directions_;
  std::vector<std::uint32_t> state_;
};

}  // namespace spartan
