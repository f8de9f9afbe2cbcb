#include "spartan/length_scales.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spartan {

LengthScales::LengthScales(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() == 0) {
    throw std::invalid_argument("length-scales must have at least one entry");
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw std::invalid_argument("length-scale " + std::to_string(i) +
                                  " must be finite and positive");
    }
  }
  inverse_ = values_.cwiseInverse();
}

LengthScales LengthScales::constant(Eigen::Index dim, double value) {
  return LengthScales(Eigen::VectorXd::Constant(dim, value));
}

LengthScales LengthScales::from_log(const Eigen::Ref<const Eigen::VectorXd>& log_values) {
  return LengthScales(log_values.array().exp().matrix());
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ stream) ^ index);
}

}  // namespace spartan
