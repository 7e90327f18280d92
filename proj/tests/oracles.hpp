// Test-only reference computations, written independently of the library
// solvers they check.
#ifndef SHELFOPT_TESTS_ORACLES_HPP
#define SHELFOPT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace oracle {

/// Best knapsack value by recursive include/exclude enumeration.
inline double knapsack_value(const std::vector<std::int64_t> &w,
                             const std::vector<double> &v, std::int64_t cap,
                             std::size_t i = 0) {
  if (i == w.size())
    return 0.0;
  double best = knapsack_value(w, v, cap, i + 1);
  if (w[i] <= cap)
    best = std::max(best, v[i] + knapsack_value(w, v, cap - w[i], i + 1));
  return best;
}

/// Best separable allocation by recursion over POGs. Sizes are in integer
/// grid units; returns -inf when no allocation fits.
inline double allocation_value(const std::vector<std::vector<std::int64_t>> &sizes,
                               const std::vector<std::vector<double>> &values,
                               std::int64_t budget, std::size_t p = 0) {
  if (p == sizes.size())
    return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sizes[p].size(); ++k)
    if (sizes[p][k] <= budget)
      best = std::max(best, values[p][k] +
                                allocation_value(sizes, values, budget - sizes[p][k], p + 1));
  return best;
}

/// Closed-form simple regression of v on ln(y).
inline std::pair<double, double> log_fit(const std::vector<std::pair<double, double>> &pts) {
  double mx = 0, mv = 0;
  for (const auto &[y, v] : pts) {
    mx += std::log(y);
    mv += v;
  }
  mx /= static_cast<double>(pts.size());
  mv /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (const auto &[y, v] : pts) {
    sxy += (std::log(y) - mx) * (v - mv);
    sxx += (std::log(y) - mx) * (std::log(y) - mx);
  }
  const double b = sxy / sxx;
  return {mv - b * mx, b};
}

} // namespace oracle

#endif
