#ifndef SHELFOPT_BAY_ALLOC_HPP
#define SHELFOPT_BAY_ALLOC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shelfopt/curves.hpp"
#include "shelfopt/rational.hpp"

namespace shelfopt {

/// Bay constraints and value function of one POG.
struct PogSpec {
  std::string pog_id;
  Bays min_alloc{0};
  Bays max_alloc{0};
  /// Smallest allocatable increment, e.g. 1/2 for half bays.
  Bays multiple{1};
  BayValueFunction value_fn;
};

void validate(const PogSpec &spec);

struct BayProblem {
  std::vector<PogSpec> pogs;
  Bays total_bays{0};

  /// Common grid: gcd of every multiple and of the fractional part of
  /// total_bays.
  Bays base_unit() const;
  Bays total_min() const;
};

/// Structural checks; does not test feasibility.
void validate(const BayProblem &problem);

/// Throws Infeasible, carrying the deficit, when the minima exceed the bays.
void require_feasible(const BayProblem &problem);

struct PogAllocation {
  std::string pog_id;
  /// Bays granted, y = multiple * count.
  Bays bays{0};
  std::int64_t count = 0;
  double value = 0.0;
};

struct BayAllocation {
  std::vector<PogAllocation> pogs;
  double objective = 0.0;
  Bays slack{0};

  const PogAllocation &at(const std::string &pog_id) const;
  Bays total() const;
};

/// Breakpoints and values for the piecewise-linear approximation of one
/// POG's value function. Breakpoints are the integers strictly inside
/// [min, max] plus both endpoints.
struct PiecewiseModel {
  std::vector<Bays> breakpoints;
  Eigen::VectorXd values;

  /// Interpolates between the two breakpoints bracketing y.
  double evaluate(const Bays &y) const;
  /// Convex-combination weights (one per breakpoint) realising y; at most
  /// two adjacent entries are non-zero.
  Eigen::VectorXd weights_for(const Bays &y) const;
};

PiecewiseModel build_piecewise(const PogSpec &spec);

/// Allocation grid of a POG paired with the value used by every solver:
/// the function's own value where a tabulated entry exists, otherwise the
/// piecewise-linear approximation.
struct ChoiceList {
  std::vector<Bays> allocations;
  std::vector<double> values;
};

ChoiceList choice_list(const PogSpec &spec);

/// Sum of per-POG values, accumulated from the last POG to the first. All
/// solvers report objectives through this one function.
double objective(const std::vector<double> &values);

/// Exact optimum by dynamic programming over (POG, grid units used) with one
/// mandatory choice per POG. Ties go to the smaller total allocation, then
/// to the lexicographically smaller allocation vector in POG order.
BayAllocation solve_exact(const BayProblem &problem);

/// Enumerates the Cartesian product of allocation grids (at most 1e6).
BayAllocation solve_brute_force_bays(const BayProblem &problem);

/// Marginal-gain greedy from the minima. Requires concave values on every
/// grid; optimal in that case when all POGs share one multiple.
BayAllocation greedy_marginal(const BayProblem &problem);

/// The linearised model in CPLEX LP text: variables x_i (general integers),
/// lambda_i_j (breakpoint weights), z_i and z_{P+i} fixed to 0 and 1.
std::string emit_standard_form(const BayProblem &problem);

} // namespace shelfopt

#endif
