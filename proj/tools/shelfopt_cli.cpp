// Command-line front end for the shelf space optimizer.
//
// Exit codes: 0 success, 1 invalid input, 2 infeasible, 3 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "shelfopt/bay_alloc.hpp"
#include "shelfopt/error.hpp"
#include "shelfopt/pipeline.hpp"

namespace fs = std::filesystem;
using namespace shelfopt;

namespace {

constexpr const char *kOutputDirEnv = "SHELFOPT_OUTPUT_DIR";

struct ScenarioArgs {
  std::string scenario;
  std::string items;
  std::string pogs;
  std::optional<double> w_sales, w_margin, w_units, w_similarity;
  std::optional<double> unit;
};

void add_scenario_options(CLI::App *cmd, ScenarioArgs &a, bool weights) {
  cmd->add_option("--scenario", a.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--items", a.items, "Item CSV")->required()->check(CLI::ExistingFile);
  cmd->add_option("--pogs", a.pogs, "Bay bounds CSV (replaces the scenario's pogs array)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--unit", a.unit, "Inches per space unit (overrides the scenario)")
      ->check(CLI::PositiveNumber);
  if (!weights)
    return;
  cmd->add_option("--w-sales", a.w_sales, "Sales weight (overrides the scenario)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--w-margin", a.w_margin, "Margin weight (overrides the scenario)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--w-units", a.w_units, "Units weight (overrides the scenario)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--w-similarity", a.w_similarity,
                  "Similarity weight (overrides the scenario)")
      ->check(CLI::NonNegativeNumber);
}

Scenario load_scenario(const ScenarioArgs &a) {
  std::optional<fs::path> pogs;
  if (!a.pogs.empty())
    pogs = a.pogs;
  Scenario s = ingest(a.items, a.scenario, pogs, a.unit);
  if (a.w_sales)
    s.weights.sales = *a.w_sales;
  if (a.w_margin)
    s.weights.margin = *a.w_margin;
  if (a.w_units)
    s.weights.units = *a.w_units;
  if (a.w_similarity)
    s.weights.similarity = *a.w_similarity;
  validate(s.weights);
  return s;
}

/// --out wins; otherwise a file named `fallback` in $SHELFOPT_OUTPUT_DIR.
std::optional<fs::path> output_path(const std::string &out, const std::string &fallback) {
  if (!out.empty())
    return fs::path(out);
  if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir)
    return fs::path(dir) / fallback;
  return std::nullopt;
}

void write_text(const fs::path &path, const std::string &text) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InvalidInput("cannot write " + path.string());
  out << text;
}

void print_allocation(const BayAllocation &a) {
  for (const PogAllocation &p : a.pogs)
    std::cout << p.pog_id << ": " << to_string(p.bays) << " bays (" << p.count
              << " x multiple), value " << p.value << '\n';
  std::cout << "objective " << a.objective << ", slack " << to_string(a.slack)
            << " bays\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Planogram assortment and bay allocation optimizer"};
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "Print solver notes to standard error");
  app.footer(std::string("Weight flags take precedence over the scenario file. "
                         "Without --out, files go to $") +
             kOutputDirEnv + " when set.");

  ScenarioArgs opt_args, curve_args, validate_args;
  std::string opt_out;
  auto *optimize = app.add_subcommand("optimize", "Run both stages and write a plan report");
  add_scenario_options(optimize, opt_args, true);
  optimize->add_option("--out", opt_out, "Plan report JSON");

  std::string curve_pog;
  auto *curve = app.add_subcommand("curve", "Print one POG's value curve");
  add_scenario_options(curve, curve_args, true);
  curve->add_option("--pog", curve_pog, "POG id")->required();

  std::string bays_problem, bays_method = "exact", bays_out;
  auto *bays = app.add_subcommand("bays", "Solve a standalone bay allocation problem");
  bays->add_option("--problem", bays_problem, "Bay problem JSON")
      ->required()
      ->check(CLI::ExistingFile);
  bays->add_option("--method", bays_method, "exact, brute-force or greedy")
      ->check(CLI::IsMember({"exact", "brute-force", "greedy"}));
  bays->add_option("--out", bays_out, "Allocation JSON");

  std::string lp_problem, lp_out;
  auto *emit = app.add_subcommand("emit-lp", "Write the linearised bay model in LP format");
  emit->add_option("--problem", lp_problem, "Bay problem JSON")
      ->required()
      ->check(CLI::ExistingFile);
  emit->add_option("--out", lp_out, "LP file (standard output when omitted)");

  std::string reports_dir;
  auto *summarize = app.add_subcommand("summarize", "Mean and sd of lift across plan reports");
  summarize->add_option("dir", reports_dir, "Directory of plan report JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto *validate_cmd = app.add_subcommand("validate", "Check input files without solving");
  add_scenario_options(validate_cmd, validate_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*optimize) {
      const Scenario s = load_scenario(opt_args);
      const PlanReport report = run_scenario(s);
      if (verbosity > 0)
        for (const auto &note : report.notes)
          std::cerr << "note: " << note << '\n';
      if (const auto path = output_path(opt_out, s.department_id + "_plan.json")) {
        write_text(*path, report_to_json(report));
        std::cerr << "plan written to " << path->string() << '\n';
      }
      std::cout << format_table(report);
    } else if (*curve) {
      const Scenario s = load_scenario(curve_args);
      SolveLog log;
      const ValueCurve<double> c = scenario_curve(s, curve_pog, &log);
      if (verbosity > 0)
        for (const auto &note : log)
          std::cerr << "note: " << note << '\n';
      const Pog *pog = nullptr;
      for (const Pog &p : s.pogs)
        if (p.id == curve_pog)
          pog = &p;
      std::cout << "capacity,value,items\n";
      for (std::int64_t j = 0; j <= c.max_capacity(); ++j) {
        std::cout << j << ',' << c.values(j) << ',';
        const BitVector &bits = c.assortments[static_cast<std::size_t>(j)];
        bool first = true;
        for (Eigen::Index i = 0; i < bits.size(); ++i) {
          if (!bits(i))
            continue;
          std::cout << (first ? "" : ";") << pog->items[static_cast<std::size_t>(i)].id;
          first = false;
        }
        std::cout << '\n';
      }
    } else if (*bays) {
      const BayProblem problem = load_bay_problem(bays_problem);
      const BayAllocation a = bays_method == "exact"         ? solve_exact(problem)
                              : bays_method == "brute-force" ? solve_brute_force_bays(problem)
                                                             : greedy_marginal(problem);
      if (const auto path = output_path(bays_out, "allocation.json"))
        write_text(*path, allocation_to_json(a));
      print_allocation(a);
    } else if (*emit) {
      const std::string text = emit_standard_form(load_bay_problem(lp_problem));
      if (const auto path = output_path(lp_out, "bay_model.lp"))
        write_text(*path, text);
      else
        std::cout << text;
    } else if (*summarize) {
      std::cout << summarize_runs(load_reports(reports_dir)).format();
    } else if (*validate_cmd) {
      const Scenario s = load_scenario(validate_args);
      std::size_t items = 0;
      for (const Pog &p : s.pogs)
        items += p.items.size();
      std::cout << "department " << s.department_id << ": " << s.pogs.size()
                << " POGs, " << items << " items, " << to_string(s.total_bays)
                << " bays: ok\n";
    }
  } catch (const Infeasible &e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
