#include "spartan/design.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spartan {
namespace {

struct DirectionInit {
  unsigned degree;
  unsigned poly;  // interior coefficients a of the primitive polynomial
  std::array<std::uint32_t, 7> m;
};

// new-joe-kuo-6.21201, dimensions 2..32. Dimension 1 is the van der Corput sequence.
constexpr std::array<DirectionInit, 31> kJoeKuo{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
    {7, 7, {1, 1, 3, 13, 7, 35, 63}},
    {7, 8, {1, 3, 5, 9, 1, 25, 53}},
    {7, 14, {1, 3, 1, 13, 9, 35, 107}},
    {7, 19, {1, 3, 1, 5, 27, 61, 31}},
    {7, 21, {1, 1, 5, 11, 19, 41, 61}},
    {7, 28, {1, 3, 5, 3, 3, 13, 69}},
    {7, 31, {1, 1, 7, 13, 1, 19, 1}},
    {7, 32, {1, 3, 7, 5, 13, 19, 59}},
    {7, 37, {1, 1, 3, 9, 25, 29, 41}},
    {7, 41, {1, 3, 5, 13, 23, 1, 55}},
    {7, 42, {1, 3, 7, 3, 13, 59, 17}},
}};

constexpr int kBits = 32;
constexpr double kScale = 1.0 / 4294967296.0;  // 2^-32

}  // namespace

PointSet lhs(int p, int d, Rng& rng) {
  if (p < 1 || d < 1) throw std::invalid_argument("lhs: p and d must be >= 1");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PointSet pts(d, p);
  std::vector<int> perm(static_cast<std::size_t>(p));
  for (int j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates with explicit draws keeps designs identical across standard libraries.
    for (int i = p - 1; i > 0; --i) {
      const auto k = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(k)]);
    }
    for (int i = 0; i < p; ++i) {
      const double v = (perm[static_cast<std::size_t>(i)] + unif(rng)) / p;
      // Guard the open upper end of the stratum against rounding.
      pts(j, i) = std::min(v, std::nextafter((perm[static_cast<std::size_t>(i)] + 1.0) / p, 0.0));
    }
  }
  return pts;
}

SobolSequence::SobolSequence(int d) : dim_(d) {
  if (d < 1) throw std::invalid_argument("sobol: dimension must be >= 1");
  if (d > kMaxSobolDimension) {
    throw UnsupportedDimensionError("sobol: dimension " + std::to_string(d) +
                                    " exceeds the supported maximum of 32");
  }
  directions_.resize(static_cast<std::size_t>(d));
  state_.assign(static_cast<std::size_t>(d), 0u);

  auto& first = directions_[0];
  for (int b = 0; b < kBits; ++b) first[static_cast<std::size_t>(b)] = 1u << (kBits - 1 - b);

  for (int j = 1; j < d; ++j) {
    const auto& init = kJoeKuo[static_cast<std::size_t>(j - 1)];
    auto& v = directions_[static_cast<std::size_t>(j)];
    const unsigned s = init.degree;
    for (unsigned b = 0; b < s && b < static_cast<unsigned>(kBits); ++b) {
      v[b] = init.m[b] << (kBits - 1 - b);
    }
    for (unsigned b = s; b < static_cast<unsigned>(kBits); ++b) {
      std::uint32_t val = v[b - s] ^ (v[b - s] >> s);
      for (unsigned k = 1; k < s; ++k) {
        if ((init.poly >> (s - 1 - k)) & 1u) val ^= v[b - k];
      }
      v[b] = val;
    }
  }
}

void SobolSequence::next(Eigen::Ref<Eigen::VectorXd> out) {
  // Gray code: point i+1 flips the direction number at the lowest zero bit of i.
  const int c = std::countr_one(index_);
  if (c >= kBits) throw std::out_of_range("sobol: sequence exhausted");
  ++index_;
  for (int j = 0; j < dim_; ++j) {
    auto& st = state_[static_cast<std::size_t>(j)];
    st ^= directions_[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    out[j] = st * kScale;
  }
}

Point SobolSequence::next() {
  Point x(dim_);
  next(x);
  return x;
}

PointSet sobol(int p, int d) {
  if (p < 1) throw std::invalid_argument("sobol: p must be >= 1");
  SobolSequence seq(d);
  PointSet pts(d, p);
  for (int i = 0; i < p; ++i) seq.next(pts.col(i));
  return pts;
}

}  // namespace spartan
