#ifndef SHELFOPT_CURVES_HPP
#define SHELFOPT_CURVES_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "shelfopt/core_model.hpp"
#include "shelfopt/knapsack.hpp"
#include "shelfopt/rational.hpp"

namespace shelfopt {

/// Value of a POG as a function of allocated bays.
///
/// Tabulated functions are defined only at their listed allocations.
/// Logarithmic functions f(y) = a + b ln(y) are defined for y > 0.
class BayValueFunction {
public:
  enum class Kind { Tabulated, Logarithmic };

  static BayValueFunction tabulated(std::map<Bays, double> table);
  static BayValueFunction logarithmic(double a, double b);

  Kind kind() const { return kind_; }
  const std::map<Bays, double> &table() const { return table_; }
  double intercept() const { return a_; }
  double slope() const { return b_; }

  bool defined_at(const Bays &y) const;
  /// Throws InvalidInput where the function is undefined.
  double operator()(const Bays &y) const;

private:
  Kind kind_ = Kind::Tabulated;
  std::map<Bays, double> table_;
  double a_ = 0.0;
  double b_ = 0.0;
};

/// min, min + step, ..., max. Requires step > 0 and (max - min) a multiple of step.
std::vector<Bays> allocation_grid(const Bays &min, const Bays &max,
                                  const Bays &step);

/// Shelf capacity (in space units) backing an allocation of y bays:
/// y * units_per_bay rounded to nearest, ties down.
std::int64_t bays_to_capacity(const Bays &y, std::int64_t units_per_bay);

/// Tabulates a knapsack value curve on the bay grid [min, max] in steps of
/// `multiple`, reading the curve at capacity y * units_per_bay. Non-integral
/// capacities round to nearest with ties down and are noted in `log`.
BayValueFunction curve_from_pog(const ValueCurve<double> &curve,
                                std::int64_t units_per_bay, const Bays &min,
                                const Bays &max, const Bays &multiple,
                                SolveLog *log = nullptr);

/// Ordinary least squares of value on (1, ln y). Throws
/// DiminishingReturnsViolation when the fitted slope is negative.
BayValueFunction fit_log(const std::vector<std::pair<double, double>> &points);

struct ConcavityViolation {
  Bays left, middle, right;
  double f_left = 0.0, f_middle = 0.0, f_right = 0.0;
};

struct ConcavityReport {
  std::vector<ConcavityViolation> violations;
  bool concave() const { return violations.empty(); }
};

/// Chord test on each consecutive triple of a sorted grid: flags the middle
/// point when it lies below the chord by more than 1e-9 |f(right)|.
ConcavityReport check_concavity(const std::vector<Bays> &grid,
                                const std::vector<double> &values);

/// Same test with values read from `f`. A logarithmic function with
/// non-negative slope always passes.
ConcavityReport check_concavity(const BayValueFunction &f,
                                const std::vector<Bays> &grid);

/// Least concave majorant of `f` on `grid` (upper hull), as a tabulated
/// function. Optional repair for callers that need concave inputs.
BayValueFunction concave_majorant(const BayValueFunction &f,
                                  const std::vector<Bays> &grid);

} // namespace shelfopt

#endif
