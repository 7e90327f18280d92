#ifndef SHELFOPT_PIPELINE_HPP
#define SHELFOPT_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shelfopt/bay_alloc.hpp"
#include "shelfopt/core_model.hpp"
#include "shelfopt/knapsack.hpp"

namespace shelfopt {

inline constexpr std::string_view kSolverVersion = "shelfopt 1.0.0";

/// Bay constraints and current allocation for one POG of a scenario.
struct PogBounds {
  std::string pog_id;
  Bays min_alloc{0};
  Bays max_alloc{0};
  Bays multiple{1};
  Bays baseline_bays{0};
};

/// One department: candidate items per POG, weights and bay constraints.
/// POGs and bounds are kept sorted by id and aligned index for index.
struct Scenario {
  std::string department_id;
  std::vector<Pog> pogs;
  WeightVector weights;
  SpaceUnit unit;
  std::int64_t units_per_bay = 1;
  std::vector<PogBounds> bay_constraints;
  Bays total_bays{0};
  /// Replace each stage-1 value function by its concave majorant.
  bool concave_repair = false;
};

/// Checks referential integrity, type invariants and baseline feasibility.
void validate(const Scenario &s);

/// Reads the item CSV, the scenario JSON and, optionally, a bounds CSV that
/// replaces the scenario's "pogs" array. Errors name file, line and field.
/// `inches_per_unit`, when set, replaces the scenario's space unit before
/// item widths are discretized.
Scenario ingest(const std::filesystem::path &items_csv,
                const std::filesystem::path &scenario_json,
                const std::optional<std::filesystem::path> &pogs_csv = {},
                std::optional<double> inches_per_unit = {});

/// Standalone bay problem:
///   {"total_bays": 5, "pogs": [{"id": "A", "min_bays": 2, "max_bays": 4,
///     "multiple": "1/2", "values": {"2": 10, "5/2": 12, ...}} or
///     "log": {"a": 1.0, "b": 2.0}]}
/// POGs are ordered by id.
BayProblem parse_bay_problem(std::string_view json_text);
BayProblem load_bay_problem(const std::filesystem::path &path);

std::string allocation_to_json(const BayAllocation &a);

struct MetricTotals {
  double sales = 0.0;
  double margin = 0.0;
  double units = 0.0;
};

/// Sales, margin and units of the selected items under the demand model.
MetricTotals project_metrics(const std::vector<Item> &items,
                             const BitVector &selected);

struct PogPlan {
  std::string pog_id;
  Bays bays{0};
  std::int64_t capacity_units = 0;
  std::vector<std::string> item_ids;
  /// Stage-1 objective value at the allocated capacity.
  double value = 0.0;
  MetricTotals projected;
  Bays baseline_bays{0};
  std::vector<std::string> baseline_item_ids;
  MetricTotals baseline;
  bool concave = true;
};

/// Percentage change versus baseline; empty when the baseline is zero.
struct Lift {
  std::optional<double> sales;
  std::optional<double> margin;
  std::optional<double> units;
};

std::optional<double> lift_percent(double projected, double baseline);
Lift compute_lift(const MetricTotals &projected, const MetricTotals &baseline);

struct RunMetadata {
  std::string generated_at;
  std::string solver_version{kSolverVersion};
  WeightVector weights;
  double inches_per_unit = 1.0;
  std::int64_t units_per_bay = 1;
  std::string lift_basis = "model-projected";
};

struct PlanReport {
  std::string department_id;
  std::vector<PogPlan> pogs;
  double objective = 0.0;
  Bays total_bays{0};
  Bays slack{0};
  MetricTotals projected_totals;
  MetricTotals baseline_totals;
  Lift lift;
  RunMetadata metadata;
  SolveLog notes;
};

/// Runs both stages: value curves per POG (concurrently), bay allocation,
/// then projected and baseline metrics.
PlanReport run_scenario(const Scenario &s);

/// Value curve of one POG under the scenario weights.
ValueCurve<double> scenario_curve(const Scenario &s, const std::string &pog_id,
                                  SolveLog *log = nullptr);

/// Stage-2 problem built from stage-1 curves.
BayProblem scenario_bay_problem(const Scenario &s,
                                const std::vector<ValueCurve<double>> &curves,
                                SolveLog *log = nullptr);

/// Machine-readable report. Only metadata.generated_at varies between runs
/// of the same scenario; pass include_timestamp = false to drop it.
std::string report_to_json(const PlanReport &r, bool include_timestamp = true);
PlanReport report_from_json(std::string_view text);

/// Fixed-width table for terminals.
std::string format_table(const PlanReport &r);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
  /// "12.00 ± 2.00"
  std::string format() const;
};

/// Mean and sample standard deviation of a series; needs two or more values.
MeanSd mean_sd(const std::vector<double> &xs);

struct RunSummary {
  std::size_t runs = 0;
  MeanSd sales_lift;
  MeanSd margin_lift;
  std::string format() const;
};

/// Lift statistics across at least two reports.
RunSummary summarize_runs(const std::vector<PlanReport> &reports);

/// Every *.json report in a directory, in file-name order.
std::vector<PlanReport> load_reports(const std::filesystem::path &dir);

} // namespace shelfopt

#endif
