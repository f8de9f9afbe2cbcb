#pragma once

#include <span>
#include <vector>

namespace spartan::stats {

double mean(std::span<const double> v);
double median(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_stddev(std::span<const double> v);
/// Two-sided 95% Student-t half-width t_{0.975, n-1} s / sqrt(n); 0 for n < 2.
double ci95_half_width(std::span<const double> v);

/// Per-iteration summary over several traces of equal or unequal length.
struct Summary {
  std::vector<double> mean;
  std::vector<double> median;
  std::vector<double> ci95;
  std::vector<int> count;
};

/// Column-wise summary; entry i covers every trace longer than i.
Summary summarize(const std::vector<std::vector<double>>& traces);

}  // namespace spartan::stats
