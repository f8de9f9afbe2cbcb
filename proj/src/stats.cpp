#include "spartan/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace spartan::stats {

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("median of an empty sample");
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

double sample_stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double ci95_half_width(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const boost::math::students_t dist(static_cast<double>(v.size() - 1));
  const double t = boost::math::quantile(dist, 0.975);
  return t * sample_stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

Summary summarize(const std::vector<std::vector<double>>& traces) {
  std::size_t len = 0;
  for (const auto& t : traces) len = std::max(len, t.size());
  Summary s;
  std::vector<double> column;
  for (std::size_t i = 0; i < len; ++i) {
    column.clear();
    for (const auto& t : traces) {
      if (i < t.size()) column.push_back(t[i]);
    }
    s.mean.push_back(mean(column));
    s.median.push_back(median(column));
    s.ci95.push_back(ci95_half_width(column));
    s.count.push_back(static_cast<int>(column.size()));
  }
  return s;
}

}  // namespace spartan::stats
