#include "shelfopt/bay_alloc.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "shelfopt/error.hpp"

namespace shelfopt {

namespace {

constexpr std::int64_t kMaxExactCells = 200'000'000;
constexpr double kMaxBruteForceCombos = 1e6;

std::int64_t to_units(const Bays &y, const Bays &unit) {
  const Bays q = y / unit;
  return q.numerator() / q.denominator();
}

BayAllocation make_allocation(const BayProblem &problem,
                              const std::vector<ChoiceList> &choices,
                              const std::vector<std::size_t> &picks) {
  BayAllocation out;
  std::vector<double> values;
  Bays used{0};
  for (std::size_t p = 0; p < problem.pogs.size(); ++p) {
    const PogSpec &spec = problem.pogs[p];
    PogAllocation a;
    a.pog_id = spec.pog_id;
    a.bays = choices[p].allocations[picks[p]];
    const Bays count = a.bays / spec.multiple;
    if (count.denominator() != 1 || count < 0)
      throw Error("allocation of pog " + spec.pog_id +
                  " is not a non-negative integer multiple");
    a.count = count.numerator();
    a.value = choices[p].values[picks[p]];
    values.push_back(a.value);
    used += a.bays;
    out.pogs.push_back(std::move(a));
  }
  out.objective = objective(values);
  out.slack = problem.total_bays - used;
  return out;
}

std::vector<ChoiceList> all_choices(const BayProblem &problem) {
  std::vector<ChoiceList> choices;
  choices.reserve(problem.pogs.size());
  for (const PogSpec &spec : problem.pogs)
    choices.push_back(choice_list(spec));
  return choices;
}

} // namespace

void validate(const PogSpec &spec) {
  const std::string where = "pog '" + spec.pog_id + "': ";
  if (spec.pog_id.empty())
    throw InvalidInput("pog spec: empty id");
  if (spec.multiple <= 0)
    throw InvalidInput(where + "multiple must be positive");
  if (spec.min_alloc < 0)
    throw InvalidInput(where + "min must be non-negative");
  if (spec.min_alloc > spec.max_alloc)
    throw InvalidInput(where + "min " + to_string(spec.min_alloc) +
                       " exceeds max " + to_string(spec.max_alloc));
  if (!is_multiple_of(spec.min_alloc, spec.multiple))
    throw InvalidInput(where + "min is not a multiple of " +
                       to_string(spec.multiple));
  if (!is_multiple_of(spec.max_alloc - spec.min_alloc, spec.multiple))
    throw InvalidInput(where + "max - min is not a multiple of " +
                       to_string(spec.multiple));
}

Bays BayProblem::base_unit() const {
  const Bays whole(total_bays.numerator() / total_bays.denominator());
  Bays unit = total_bays - whole;
  for (const PogSpec &spec : pogs)
    unit = rational_gcd(unit, spec.multiple);
  return unit;
}

Bays BayProblem::total_min() const {
  Bays sum{0};
  for (const PogSpec &spec : pogs)
    sum += spec.min_alloc;
  return sum;
}

void validate(const BayProblem &problem) {
  if (problem.pogs.empty())
    throw InvalidInput("bay problem: no POGs");
  if (problem.total_bays < 0)
    throw InvalidInput("bay problem: total bays must be non-negative");
  std::vector<std::string> ids;
  for (const PogSpec &spec : problem.pogs) {
    validate(spec);
    ids.push_back(spec.pog_id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw InvalidInput("bay problem: duplicate POG id");
}

void require_feasible(const BayProblem &problem) {
  const Bays need = problem.total_min();
  if (need > problem.total_bays) {
    const Bays deficit = need - problem.total_bays;
    throw Infeasible("bay problem infeasible: minimum allocations sum to " +
                         to_string(need) + " bays but only " +
                         to_string(problem.total_bays) +
                         " are available (deficit " + to_string(deficit) +
                         " bays)",
                     to_double(deficit));
  }
}

const PogAllocation &BayAllocation::at(const std::string &pog_id) const {
  for (const PogAllocation &a : pogs)
    if (a.pog_id == pog_id)
      return a;
  throw InvalidInput("allocation: unknown pog '" + pog_id + "'");
}

Bays BayAllocation::total() const {
  Bays sum{0};
  for (const PogAllocation &a : pogs)
    sum += a.bays;
  return sum;
}

double PiecewiseModel::evaluate(const Bays &y) const {
  return weights_for(y).dot(values);
}

Eigen::VectorXd PiecewiseModel::weights_for(const Bays &y) const {
  if (breakpoints.empty() || y < breakpoints.front() || y > breakpoints.back())
    throw InvalidInput("piecewise model: " + to_string(y) +
                       " outside the breakpoint range");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(breakpoints.size()));
  const auto hi = std::lower_bound(breakpoints.begin(), breakpoints.end(), y);
  const auto k = static_cast<Eigen::Index>(hi - breakpoints.begin());
  if (*hi == y) {
    w(k) = 1.0;
    return w;
  }
  const Bays &left = breakpoints[static_cast<std::size_t>(k - 1)];
  const Bays &right = *hi;
  const double t = to_double((y - left) / (right - left));
  w(k - 1) = 1.0 - t;
  w(k) = t;
  return w;
}

PiecewiseModel build_piecewise(const PogSpec &spec) {
  validate(spec);
  PiecewiseModel model;
  model.breakpoints.push_back(spec.min_alloc);
  const std::int64_t first =
      spec.min_alloc.numerator() / spec.min_alloc.denominator() + 1;
  for (std::int64_t j = first; Bays(j) < spec.max_alloc; ++j)
    model.breakpoints.emplace_back(j);
  if (spec.max_alloc != spec.min_alloc)
    model.breakpoints.push_back(spec.max_alloc);

  model.values.resize(static_cast<Eigen::Index>(model.breakpoints.size()));
  for (std::size_t k = 0; k < model.breakpoints.size(); ++k) {
    const Bays &j = model.breakpoints[k];
    if (!spec.value_fn.defined_at(j))
      throw InvalidInput("pog '" + spec.pog_id +
                         "': value function undefined at breakpoint " +
                         to_string(j));
    model.values(static_cast<Eigen::Index>(k)) = spec.value_fn(j);
  }
  return model;
}

ChoiceList choice_list(const PogSpec &spec) {
  validate(spec);
  ChoiceList list;
  list.allocations = allocation_grid(spec.min_alloc, spec.max_alloc, spec.multiple);
  const bool tabulated = spec.value_fn.kind() == BayValueFunction::Kind::Tabulated;
  std::optional<PiecewiseModel> model;
  for (const Bays &y : list.allocations) {
    const bool integral = y.denominator() == 1;
    if ((tabulated || integral) && spec.value_fn.defined_at(y)) {
      list.values.push_back(spec.value_fn(y));
      continue;
    }
    if (!model)
      model = build_piecewise(spec);
    list.values.push_back(model->evaluate(y));
  }
  return list;
}

double objective(const std::vector<double> &values) {
  double total = 0.0;
  for (auto it = values.rbegin(); it != values.rend(); ++it)
    total = *it + total;
  return total;
}

BayAllocation solve_exact(const BayProblem &problem) {
  validate(problem);
  require_feasible(problem);
  const auto choices = all_choices(problem);
  const Bays unit = problem.base_unit();
  const std::int64_t budget = to_units(problem.total_bays, unit);
  const std::size_t P = problem.pogs.size();
  const auto width = budget + 1;
  if (static_cast<double>(P + 1) * static_cast<double>(width) >
      static_cast<double>(kMaxExactCells))
    throw InstanceTooLarge("solve_exact: " + std::to_string(budget) +
                           " grid units x " + std::to_string(P) +
                           " POGs exceeds the table limit");

  std::vector<std::vector<std::int64_t>> costs(P);
  for (std::size_t p = 0; p < P; ++p)
    for (const Bays &y : choices[p].allocations)
      costs[p].push_back(to_units(y, unit));

  // best(p, u): optimum over POGs p..P-1 with at most u grid units,
  // accumulated as v_p + best(p+1, .) to match objective().
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best(static_cast<Eigen::Index>(P + 1), width);
  best.row(static_cast<Eigen::Index>(P)).setZero();
  for (std::size_t p = P; p-- > 0;) {
    const auto r = static_cast<Eigen::Index>(p);
    for (std::int64_t u = 0; u <= budget; ++u) {
      double top = kNone;
      for (std::size_t k = 0; k < costs[p].size(); ++k) {
        const std::int64_t c = costs[p][k];
        if (c > u)
          break;
        const double rest = best(r + 1, u - c);
        if (rest == kNone)
          continue;
        top = std::max(top, choices[p].values[k] + rest);
      }
      best(r, u) = top;
    }
  }

  const double optimum = best(0, budget);
  if (optimum == kNone)
    throw Error("solve_exact: no feasible allocation despite feasible minima");
  std::int64_t remaining = budget;
  while (remaining > 0 && best(0, remaining - 1) == optimum)
    --remaining;

  std::vector<std::size_t> picks(P);
  for (std::size_t p = 0; p < P; ++p) {
    const auto r = static_cast<Eigen::Index>(p);
    bool found = false;
    for (std::size_t k = 0; k < costs[p].size() && costs[p][k] <= remaining; ++k) {
      const double rest = best(r + 1, remaining - costs[p][k]);
      if (rest != kNone && choices[p].values[k] + rest == best(r, remaining)) {
        picks[p] = k;
        remaining -= costs[p][k];
        found = true;
        break;
      }
    }
    if (!found)
      throw Error("solve_exact: backtracking failed at pog " +
                  problem.pogs[p].pog_id);
  }
  return make_allocation(problem, choices, picks);
}

BayAllocation solve_brute_force_bays(const BayProblem &problem) {
  validate(problem);
  require_feasible(problem);
  const auto choices = all_choices(problem);
  double combos = 1.0;
  for (const auto &c : choices)
    combos *= static_cast<double>(c.allocations.size());
  if (combos > kMaxBruteForceCombos)
    throw InstanceTooLarge("solve_brute_force_bays: " + std::to_string(combos) +
                           " combinations exceeds the limit of 1e6");

  const std::size_t P = problem.pogs.size();
  std::vector<std::size_t> picks(P, 0), best_picks;
  std::vector<double> values(P);
  double best_value = 0.0;
  Bays best_used{0};
  for (;;) {
    Bays used{0};
    for (std::size_t p = 0; p < P; ++p) {
      used += choices[p].allocations[picks[p]];
      values[p] = choices[p].values[picks[p]];
    }
    if (used <= problem.total_bays) {
      const double value = objective(values);
      const bool better =
          best_picks.empty() || value > best_value ||
          (value == best_value &&
           (used < best_used || (used == best_used && picks < best_picks)));
      if (better) {
        best_picks = picks;
        best_value = value;
        best_used = used;
      }
    }
    std::size_t p = P;
    while (p-- > 0) {
      if (++picks[p] < choices[p].allocations.size())
        break;
      picks[p] = 0;
    }
    if (p == static_cast<std::size_t>(-1))
      break;
  }
  return make_allocation(problem, choices, best_picks);
}

BayAllocation greedy_marginal(const BayProblem &problem) {
  validate(problem);
  require_feasible(problem);
  const auto choices = all_choices(problem);
  for (std::size_t p = 0; p < choices.size(); ++p) {
    const auto report = check_concavity(choices[p].allocations, choices[p].values);
    if (!report.concave())
      throw ConcavityRequired("greedy_marginal: value function of pog " +
                              problem.pogs[p].pog_id + " is not concave at " +
                              to_string(report.violations.front().middle) +
                              " bays");
  }

  const std::size_t P = problem.pogs.size();
  std::vector<std::size_t> picks(P, 0);
  Bays remaining = problem.total_bays - problem.total_min();
  for (;;) {
    std::optional<std::size_t> chosen;
    double best_gain = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
      const std::size_t k = picks[p];
      if (k + 1 >= choices[p].allocations.size())
        continue;
      if (problem.pogs[p].multiple > remaining)
        continue;
      const double gain = choices[p].values[k + 1] - choices[p].values[k];
      if (gain > best_gain) {
        best_gain = gain;
        chosen = p;
      }
    }
    if (!chosen)
      break;
    ++picks[*chosen];
    remaining -= problem.pogs[*chosen].multiple;
  }
  return make_allocation(problem, choices, picks);
}

} // namespace shelfopt
