#include "shelfopt/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <future>

#include "shelfopt/error.hpp"

namespace shelfopt {

namespace {

/// Rethrows the active library error with `context` prefixed, keeping its type.
[[noreturn]] void rethrow_with_context(const std::string &context) {
  try {
    throw;
  } catch (const Infeasible &e) {
    throw Infeasible(context + e.what(), e.deficit());
  } catch (const InstanceTooLarge &e) {
    throw InstanceTooLarge(context + e.what());
  } catch (const ConcavityRequired &e) {
    throw ConcavityRequired(context + e.what());
  } catch (const InvalidInput &e) {
    throw InvalidInput(context + e.what());
  } catch (const Error &e) {
    throw Error(context + e.what());
  }
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> selected_ids(const Pog &pog, const BitVector &bits) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < pog.items.size(); ++i)
    if (bits(static_cast<Eigen::Index>(i)))
      ids.push_back(pog.items[i].id);
  return ids;
}

MetricTotals &operator+=(MetricTotals &a, const MetricTotals &b) {
  a.sales += b.sales;
  a.margin += b.margin;
  a.units += b.units;
  return a;
}

std::size_t pog_index(const Scenario &s, const std::string &pog_id) {
  for (std::size_t i = 0; i < s.pogs.size(); ++i)
    if (s.pogs[i].id == pog_id)
      return i;
  throw InvalidInput("department '" + s.department_id + "': unknown pog '" +
                     pog_id + "'");
}

} // namespace

MetricTotals project_metrics(const std::vector<Item> &items,
                             const BitVector &selected) {
  if (static_cast<Eigen::Index>(items.size()) != selected.size())
    throw InvalidInput("project_metrics: selection length mismatch");
  MetricTotals t;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!selected(static_cast<Eigen::Index>(i)))
      continue;
    t.sales += items[i].price * items[i].demand;
    t.margin += items[i].margin * items[i].demand;
    t.units += items[i].demand;
  }
  return t;
}

std::optional<double> lift_percent(double projected, double baseline) {
  if (baseline == 0.0)
    return std::nullopt;
  return (projected - baseline) / baseline * 100.0;
}

Lift compute_lift(const MetricTotals &projected, const MetricTotals &baseline) {
  return {lift_percent(projected.sales, baseline.sales),
          lift_percent(projected.margin, baseline.margin),
          lift_percent(projected.units, baseline.units)};
}

ValueCurve<double> scenario_curve(const Scenario &s, const std::string &pog_id,
                                  SolveLog *log) {
  const Pog &pog = s.pogs[pog_index(s, pog_id)];
  try {
    return solve_curve(pog, s.weights, log);
  } catch (const Error &) {
    rethrow_with_context("department '" + s.department_id + "', pog '" + pog.id + "': ");
  }
}

BayProblem scenario_bay_problem(const Scenario &s,
                                const std::vector<ValueCurve<double>> &curves,
                                SolveLog *log) {
  BayProblem problem;
  problem.total_bays = s.total_bays;
  for (std::size_t i = 0; i < s.pogs.size(); ++i) {
    const PogBounds &b = s.bay_constraints[i];
    try {
      PogSpec spec{b.pog_id, b.min_alloc, b.max_alloc, b.multiple,
                   curve_from_pog(curves[i], s.units_per_bay, b.min_alloc,
                                  b.max_alloc, b.multiple, log)};
      const auto grid = allocation_grid(b.min_alloc, b.max_alloc, b.multiple);
      const auto report = check_concavity(spec.value_fn, grid);
      if (!report.concave()) {
        if (log)
          log->push_back("pog " + b.pog_id + ": value curve not concave at " +
                         std::to_string(report.violations.size()) +
                         " grid point(s), first at " +
                         to_string(report.violations.front().middle) + " bays" +
                         (s.concave_repair ? "; replaced by concave majorant" : ""));
        if (s.concave_repair)
          spec.value_fn = concave_majorant(spec.value_fn, grid);
      }
      problem.pogs.push_back(std::move(spec));
    } catch (const Error &) {
      rethrow_with_context("department '" + s.department_id + "', pog '" +
                           b.pog_id + "': ");
    }
  }
  return problem;
}

PlanReport run_scenario(const Scenario &s) {
  validate(s);
  const std::size_t P = s.pogs.size();

  // Stage 1: independent capacity sweeps.
  std::vector<SolveLog> logs(P);
  std::vector<std::future<ValueCurve<double>>> pending;
  pending.reserve(P);
  for (std::size_t i = 0; i < P; ++i)
    pending.push_back(std::async(std::launch::async, [&s, &logs, i] {
      return scenario_curve(s, s.pogs[i].id, &logs[i]);
    }));
  std::vector<ValueCurve<double>> curves;
  curves.reserve(P);
  for (auto &f : pending)
    curves.push_back(f.get());

  PlanReport report;
  for (auto &l : logs)
    report.notes.insert(report.notes.end(), l.begin(), l.end());

  // Stage 2.
  const BayProblem problem = scenario_bay_problem(s, curves, &report.notes);
  BayAllocation alloc;
  try {
    alloc = solve_exact(problem);
  } catch (const Error &) {
    rethrow_with_context("department '" + s.department_id + "': ");
  }

  report.department_id = s.department_id;
  report.objective = alloc.objective;
  report.total_bays = s.total_bays;
  report.slack = alloc.slack;
  for (std::size_t i = 0; i < P; ++i) {
    const Pog &pog = s.pogs[i];
    const PogBounds &b = s.bay_constraints[i];
    const PogAllocation &a = alloc.at(pog.id);
    PogPlan plan;
    plan.pog_id = pog.id;
    plan.bays = a.bays;
    plan.capacity_units = bays_to_capacity(a.bays, s.units_per_bay);
    const auto cap = static_cast<std::size_t>(plan.capacity_units);
    const BitVector &chosen = curves[i].assortments[cap];
    plan.value = curves[i].values(plan.capacity_units);
    if (!pog.items.empty()) {
      plan.item_ids = selected_ids(pog, chosen);
      plan.projected = project_metrics(pog.items, chosen);
    }
    plan.baseline_bays = b.baseline_bays;
    const BitVector x0 = pog.baseline();
    plan.baseline_item_ids = selected_ids(pog, x0);
    plan.baseline = project_metrics(pog.items, x0);
    std::int64_t baseline_space = 0;
    for (const Item &it : pog.items)
      if (it.in_baseline)
        baseline_space += it.space;
    if (baseline_space > bays_to_capacity(b.baseline_bays, s.units_per_bay))
      report.notes.push_back("pog " + pog.id + ": baseline assortment needs " +
                             std::to_string(baseline_space) +
                             " units, more than its baseline allocation");
    plan.concave = check_concavity(problem.pogs[i].value_fn,
                                   allocation_grid(b.min_alloc, b.max_alloc, b.multiple))
                       .concave();
    report.projected_totals += plan.projected;
    report.baseline_totals += plan.baseline;
    report.pogs.push_back(std::move(plan));
  }
  report.lift = compute_lift(report.projected_totals, report.baseline_totals);

  report.metadata.generated_at = utc_timestamp();
  report.metadata.weights = s.weights;
  report.metadata.inches_per_unit = s.unit.inches_per_unit;
  report.metadata.units_per_bay = s.units_per_bay;
  return report;
}

std::string MeanSd::format() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f ± %.2f", mean, sd);
  return buf;
}

MeanSd mean_sd(const std::vector<double> &xs) {
  if (xs.size() < 2)
    throw InvalidInput("mean_sd: need at least two values");
  const Eigen::Map<const Eigen::VectorXd> v(xs.data(), static_cast<Eigen::Index>(xs.size()));
  const double mean = v.mean();
  const double ss = (v.array() - mean).square().sum();
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

std::string RunSummary::format() const {
  return "runs: " + std::to_string(runs) + "\nsales lift (%): " +
         sales_lift.format() + "\nmargin lift (%): " + margin_lift.format() + "\n";
}

RunSummary summarize_runs(const std::vector<PlanReport> &reports) {
  if (reports.size() < 2)
    throw InvalidInput("summarize_runs: need at least two reports, got " +
                       std::to_string(reports.size()));
  std::vector<double> sales, margin;
  for (const PlanReport &r : reports) {
    if (!r.lift.sales || !r.lift.margin)
      throw InvalidInput("summarize_runs: report for department '" +
                         r.department_id + "' has no lift (zero baseline)");
    sales.push_back(*r.lift.sales);
    margin.push_back(*r.lift.margin);
  }
  return {reports.size(), mean_sd(sales), mean_sd(margin)};
}

} // namespace shelfopt
