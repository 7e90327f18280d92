#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shelfopt/error.hpp"
#include "shelfopt/pipeline.hpp"

namespace shelfopt {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

ojson metrics_json(const MetricTotals &m) {
  return {{"sales", m.sales}, {"margin", m.margin}, {"units", m.units}};
}

MetricTotals metrics_from(const ojson &j) {
  return {j.at("sales").get<double>(), j.at("margin").get<double>(),
          j.at("units").get<double>()};
}

ojson optional_json(const std::optional<double> &v) {
  return v ? ojson(*v) : ojson(nullptr);
}

std::optional<double> optional_from(const ojson &j) {
  if (j.is_null())
    return std::nullopt;
  return j.get<double>();
}

ojson bays_json(const Bays &b) { return to_string(b); }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width)
    s.insert(0, width - s.size(), ' ');
  return s;
}

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string lift_text(const std::optional<double> &v) {
  return v ? fixed(*v) + "%" : std::string("n/a");
}

} // namespace

std::string report_to_json(const PlanReport &r, bool include_timestamp) {
  ojson pogs = ojson::array();
  for (const PogPlan &p : r.pogs) {
    pogs.push_back({{"pog_id", p.pog_id},
                    {"bays", bays_json(p.bays)},
                    {"capacity_units", p.capacity_units},
                    {"value", p.value},
                    {"items", p.item_ids},
                    {"projected", metrics_json(p.projected)},
                    {"baseline_bays", bays_json(p.baseline_bays)},
                    {"baseline_items", p.baseline_item_ids},
                    {"baseline", metrics_json(p.baseline)},
                    {"concave", p.concave}});
  }
  ojson meta = {{"solver_version", r.metadata.solver_version},
                {"weights",
                 {{"sales", r.metadata.weights.sales},
                  {"margin", r.metadata.weights.margin},
                  {"units", r.metadata.weights.units},
                  {"similarity", r.metadata.weights.similarity}}},
                {"inches_per_unit", r.metadata.inches_per_unit},
                {"units_per_bay", r.metadata.units_per_bay},
                {"lift_basis", r.metadata.lift_basis}};
  if (include_timestamp)
    meta["generated_at"] = r.metadata.generated_at;

  const ojson doc = {{"department", r.department_id},
                     {"objective", r.objective},
                     {"total_bays", bays_json(r.total_bays)},
                     {"slack", bays_json(r.slack)},
                     {"pogs", pogs},
                     {"projected_totals", metrics_json(r.projected_totals)},
                     {"baseline_totals", metrics_json(r.baseline_totals)},
                     {"lift_percent",
                      {{"sales", optional_json(r.lift.sales)},
                       {"margin", optional_json(r.lift.margin)},
                       {"units", optional_json(r.lift.units)}}},
                     {"notes", r.notes},
                     {"metadata", meta}};
  return doc.dump(2) + "\n";
}

PlanReport report_from_json(std::string_view text) {
  try {
    const ojson j = ojson::parse(text);
    PlanReport r;
    r.department_id = j.at("department").get<std::string>();
    r.objective = j.at("objective").get<double>();
    r.total_bays = parse_bays(j.at("total_bays").get<std::string>());
    r.slack = parse_bays(j.at("slack").get<std::string>());
    for (const ojson &p : j.at("pogs")) {
      PogPlan plan;
      plan.pog_id = p.at("pog_id").get<std::string>();
      plan.bays = parse_bays(p.at("bays").get<std::string>());
      plan.capacity_units = p.at("capacity_units").get<std::int64_t>();
      plan.value = p.at("value").get<double>();
      plan.item_ids = p.at("items").get<std::vector<std::string>>();
      plan.projected = metrics_from(p.at("projected"));
      plan.baseline_bays = parse_bays(p.at("baseline_bays").get<std::string>());
      plan.baseline_item_ids = p.at("baseline_items").get<std::vector<std::string>>();
      plan.baseline = metrics_from(p.at("baseline"));
      plan.concave = p.at("concave").get<bool>();
      r.pogs.push_back(std::move(plan));
    }
    r.projected_totals = metrics_from(j.at("projected_totals"));
    r.baseline_totals = metrics_from(j.at("baseline_totals"));
    const ojson &lift = j.at("lift_percent");
    r.lift = {optional_from(lift.at("sales")), optional_from(lift.at("margin")),
              optional_from(lift.at("units"))};
    r.notes = j.at("notes").get<std::vector<std::string>>();
    const ojson &m = j.at("metadata");
    r.metadata.solver_version = m.at("solver_version").get<std::string>();
    const ojson &w = m.at("weights");
    r.metadata.weights = {w.at("sales").get<double>(), w.at("margin").get<double>(),
                          w.at("units").get<double>(), w.at("similarity").get<double>()};
    r.metadata.inches_per_unit = m.at("inches_per_unit").get<double>();
    r.metadata.units_per_bay = m.at("units_per_bay").get<std::int64_t>();
    r.metadata.lift_basis = m.at("lift_basis").get<std::string>();
    r.metadata.generated_at = m.value("generated_at", std::string{});
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw InvalidInput(std::string("plan report: ") + e.what());
  }
}

std::string format_table(const PlanReport &r) {
  std::ostringstream out;
  out << "department " << r.department_id << ": " << to_string(r.total_bays - r.slack)
      << " of " << to_string(r.total_bays) << " bays allocated, objective "
      << fixed(r.objective, 4) << "\n\n";
  out << pad("pog", 12) << pad("bays", 8) << pad("base", 8) << pad("items", 7)
      << pad("sales", 14) << pad("margin", 14) << pad("units", 12) << '\n';
  for (const PogPlan &p : r.pogs) {
    out << pad(p.pog_id, 12) << pad(to_string(p.bays), 8)
        << pad(to_string(p.baseline_bays), 8) << pad(std::to_string(p.item_ids.size()), 7)
        << pad(fixed(p.projected.sales), 14) << pad(fixed(p.projected.margin), 14)
        << pad(fixed(p.projected.units), 12) << (p.concave ? "" : "  (non-concave)")
        << '\n';
  }
  out << pad("projected", 12) << pad("", 23) << pad(fixed(r.projected_totals.sales), 14)
      << pad(fixed(r.projected_totals.margin), 14)
      << pad(fixed(r.projected_totals.units), 12) << '\n';
  out << pad("baseline", 12) << pad("", 23) << pad(fixed(r.baseline_totals.sales), 14)
      << pad(fixed(r.baseline_totals.margin), 14)
      << pad(fixed(r.baseline_totals.units), 12) << '\n';
  out << pad("lift", 12) << pad("", 23) << pad(lift_text(r.lift.sales), 14)
      << pad(lift_text(r.lift.margin), 14) << pad(lift_text(r.lift.units), 12) << '\n';
  out << "\nlift is " << r.metadata.lift_basis << " under the input demand model\n";
  return out.str();
}

std::string allocation_to_json(const BayAllocation &a) {
  ojson pogs = ojson::array();
  for (const PogAllocation &p : a.pogs)
    pogs.push_back({{"pog_id", p.pog_id},
                    {"bays", bays_json(p.bays)},
                    {"count", p.count},
                    {"value", p.value}});
  const ojson doc = {{"objective", a.objective},
                     {"allocated", bays_json(a.total())},
                     {"slack", bays_json(a.slack)},
                     {"pogs", pogs}};
  return doc.dump(2) + "\n";
}

std::vector<PlanReport> load_reports(const fs::path &dir) {
  if (!fs::is_directory(dir))
    throw InvalidInput("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<PlanReport> reports;
  for (const fs::path &f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      reports.push_back(report_from_json(buf.str()));
    } catch (const InvalidInput &e) {
      throw InvalidInput(f.filename().string() + ": " + e.what());
    }
  }
  return reports;
}

} // namespace shelfopt
