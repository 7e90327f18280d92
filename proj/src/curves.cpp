#include "shelfopt/curves.hpp"

#include <cmath>
#include <set>

#include <Eigen/QR>

#include "shelfopt/error.hpp"

namespace shelfopt {

BayValueFunction BayValueFunction::tabulated(std::map<Bays, double> table) {
  BayValueFunction f;
  f.kind_ = Kind::Tabulated;
  f.table_ = std::move(table);
  return f;
}

BayValueFunction BayValueFunction::logarithmic(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InvalidInput("logarithmic value function: non-finite coefficient");
  BayValueFunction f;
  f.kind_ = Kind::Logarithmic;
  f.a_ = a;
  f.b_ = b;
  return f;
}

bool BayValueFunction::defined_at(const Bays &y) const {
  if (kind_ == Kind::Logarithmic)
    return y > 0;
  return table_.count(y) != 0;
}

double BayValueFunction::operator()(const Bays &y) const {
  if (kind_ == Kind::Logarithmic) {
    if (y <= 0)
      throw InvalidInput("logarithmic value function undefined at y = " +
                         to_string(y));
    return a_ + b_ * std::log(to_double(y));
  }
  const auto it = table_.find(y);
  if (it == table_.end())
    throw InvalidInput("tabulated value function undefined at y = " +
                       to_string(y));
  return it->second;
}

std::vector<Bays> allocation_grid(const Bays &min, const Bays &max,
                                  const Bays &step) {
  if (step <= 0)
    throw InvalidInput("allocation grid: step must be positive");
  if (min > max)
    throw InvalidInput("allocation grid: min " + to_string(min) +
                       " exceeds max " + to_string(max));
  if (!is_multiple_of(max - min, step))
    throw InvalidInput("allocation grid: max - min is not a multiple of " +
                       to_string(step));
  std::vector<Bays> grid;
  for (Bays y = min; y <= max; y += step)
    grid.push_back(y);
  return grid;
}

std::int64_t bays_to_capacity(const Bays &y, std::int64_t units_per_bay) {
  const Bays exact = y * units_per_bay;
  std::int64_t cap = exact.numerator() / exact.denominator();
  if (exact - cap > Bays(1, 2))
    ++cap;
  return cap;
}

BayValueFunction curve_from_pog(const ValueCurve<double> &curve,
                                std::int64_t units_per_bay, const Bays &min,
                                const Bays &max, const Bays &multiple,
                                SolveLog *log) {
  if (units_per_bay < 1)
    throw InvalidInput("curve_from_pog: units_per_bay must be positive");
  if (min < 0)
    throw InvalidInput("curve_from_pog: min must be non-negative");
  const auto grid = allocation_grid(min, max, multiple);

  std::map<Bays, double> table;
  for (const Bays &y : grid) {
    const Bays exact = y * units_per_bay;
    const std::int64_t cap = bays_to_capacity(y, units_per_bay);
    if (exact.denominator() != 1) {
      if (log)
        log->push_back("pog " + curve.pog_id + ": capacity " + to_string(exact) +
                       " units at " + to_string(y) + " bays rounded to " +
                       std::to_string(cap));
    }
    if (cap > curve.max_capacity())
      throw InvalidInput("curve_from_pog: pog " + curve.pog_id +
                         " curve ends at capacity " +
                         std::to_string(curve.max_capacity()) + " but " +
                         to_string(y) + " bays needs " + std::to_string(cap));
    table.emplace(y, curve.values(cap));
  }
  return BayValueFunction::tabulated(std::move(table));
}

BayValueFunction fit_log(const std::vector<std::pair<double, double>> &points) {
  std::set<double> distinct;
  for (const auto &[y, v] : points) {
    if (!(y > 0.0) || !std::isfinite(y))
      throw InvalidInput("fit_log: allocation must be positive, got " +
                         std::to_string(y));
    if (!std::isfinite(v))
      throw InvalidInput("fit_log: non-finite value");
    distinct.insert(y);
  }
  if (distinct.size() < 2)
    throw InvalidInput("fit_log: need at least two distinct allocations");

  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(points[static_cast<std::size_t>(i)].first);
    rhs(i) = points[static_cast<std::size_t>(i)].second;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  if (coef(1) < 0.0)
    throw DiminishingReturnsViolation(
        "fit_log: fitted slope " + std::to_string(coef(1)) +
            " is negative; value decreases with space",
        coef(0), coef(1));
  return BayValueFunction::logarithmic(coef(0), coef(1));
}

ConcavityReport check_concavity(const std::vector<Bays> &grid,
                                const std::vector<double> &values) {
  if (grid.size() != values.size())
    throw InvalidInput("check_concavity: grid and values differ in length");
  ConcavityReport report;
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    const Bays &y1 = grid[k - 1], &y2 = grid[k], &y3 = grid[k + 1];
    const double t = to_double((y2 - y1) / (y3 - y1));
    const double chord = values[k - 1] + t * (values[k + 1] - values[k - 1]);
    const double tol = 1e-9 * std::abs(values[k + 1]);
    if (values[k] < chord - tol)
      report.violations.push_back(
          {y1, y2, y3, values[k - 1], values[k], values[k + 1]});
  }
  return report;
}

ConcavityReport check_concavity(const BayValueFunction &f,
                                const std::vector<Bays> &grid) {
  if (f.kind() == BayValueFunction::Kind::Logarithmic && f.slope() >= 0.0)
    return {};
  std::vector<double> values;
  values.reserve(grid.size());
  for (const Bays &y : grid)
    values.push_back(f(y));
  return check_concavity(grid, values);
}

BayValueFunction concave_majorant(const BayValueFunction &f,
                                  const std::vector<Bays> &grid) {
  std::vector<double> values;
  for (const Bays &y : grid)
    values.push_back(f(y));

  // Upper hull by monotone chain; x-coordinates are already sorted.
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2], b = hull.back();
      const double xa = to_double(grid[a]), xb = to_double(grid[b]),
                   xk = to_double(grid[k]);
      const double cross = (xb - xa) * (values[k] - values[a]) -
                           (values[b] - values[a]) * (xk - xa);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  std::map<Bays, double> table;
  std::size_t seg = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    while (seg + 1 < hull.size() && hull[seg + 1] < k)
      ++seg;
    if (hull[seg] == k || seg + 1 >= hull.size()) {
      table.emplace(grid[k], values[k]);
      continue;
    }
    const std::size_t a = hull[seg], b = hull[seg + 1];
    const double t = to_double((grid[k] - grid[a]) / (grid[b] - grid[a]));
    table.emplace(grid[k], values[a] + t * (values[b] - values[a]));
  }
  return BayValueFunction::tabulated(std::move(table));
}

} // namespace shelfopt
