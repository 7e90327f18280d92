#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shelfopt/error.hpp"
#include "shelfopt/pipeline.hpp"

namespace shelfopt {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return std::string(s);
}

/// Splits one CSV record; double quotes may wrap fields containing commas.
std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

/// A parsed CSV table with the header mapped to column positions.
struct CsvTable {
  std::string name;
  std::map<std::string, std::size_t> columns;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows; // (line, fields)
};

CsvTable read_csv(const fs::path &path, const std::vector<std::string> &required) {
  CsvTable t;
  t.name = path.filename().string();
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line).front() == '#')
      continue;
    auto fields = split_csv(line);
    if (header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        t.columns[fields[i]] = i;
      for (const auto &col : required)
        if (!t.columns.count(col))
          throw InvalidInput(t.name + ":" + std::to_string(lineno) +
                             ": missing column '" + col + "'");
      header = false;
      continue;
    }
    if (fields.size() != t.columns.size())
      throw InvalidInput(t.name + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(t.columns.size()) + " fields, found " +
                         std::to_string(fields.size()));
    t.rows.emplace_back(lineno, std::move(fields));
  }
  if (header)
    throw InvalidInput(t.name + ": empty file");
  return t;
}

class RowReader {
public:
  RowReader(const CsvTable &t, std::size_t line, const std::vector<std::string> &f)
      : t_(t), line_(line), f_(f) {}

  [[noreturn]] void fail(const std::string &col, const std::string &msg) const {
    throw InvalidInput(t_.name + ":" + std::to_string(line_) + ": field '" + col +
                       "': " + msg);
  }

  const std::string &text(const std::string &col) const {
    const std::string &v = f_[t_.columns.at(col)];
    if (v.empty())
      fail(col, "empty");
    return v;
  }

  double number(const std::string &col) const {
    const std::string &v = text(col);
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out))
      fail(col, "not a number ('" + v + "')");
    return out;
  }

  bool flag(const std::string &col) const {
    std::string v = text(col);
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "1" || v == "true" || v == "yes")
      return true;
    if (v == "0" || v == "false" || v == "no")
      return false;
    fail(col, "expected 0/1 or true/false ('" + v + "')");
  }

  Bays bays(const std::string &col) const {
    try {
      return parse_bays(text(col));
    } catch (const InvalidInput &) {
      fail(col, "not a bay quantity ('" + text(col) + "')");
    }
  }

private:
  const CsvTable &t_;
  std::size_t line_;
  const std::vector<std::string> &f_;
};

Locality parse_locality(const RowReader &r) {
  std::string v = r.text("locality");
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  v.erase(std::remove(v.begin(), v.end(), '-'), v.end());
  v.erase(std::remove(v.begin(), v.end(), '_'), v.end());
  if (v == "local")
    return Locality::Local;
  if (v == "nonlocal")
    return Locality::NonLocal;
  r.fail("locality", "expected local or nonlocal ('" + v + "')");
}

Bays json_bays(const json &j, const std::string &what) {
  if (j.is_string())
    return parse_bays(j.get<std::string>());
  if (j.is_number_integer())
    return Bays(j.get<std::int64_t>());
  if (j.is_number())
    return parse_bays(j.dump());
  throw InvalidInput(what + ": expected a number or rational string");
}

double json_number(const json &obj, const char *key, const std::string &where,
                   std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback)
      return *fallback;
    throw InvalidInput(where + ": missing '" + key + "'");
  }
  if (!obj[key].is_number())
    throw InvalidInput(where + ": '" + key + "' must be a number");
  return obj[key].get<double>();
}

std::vector<PogBounds> bounds_from_csv(const fs::path &path) {
  const CsvTable t = read_csv(
      path, {"pog_id", "min_bays", "max_bays", "multiple", "baseline_bays"});
  std::vector<PogBounds> out;
  for (const auto &[line, fields] : t.rows) {
    const RowReader r(t, line, fields);
    out.push_back({r.text("pog_id"), r.bays("min_bays"), r.bays("max_bays"),
                   r.bays("multiple"), r.bays("baseline_bays")});
  }
  return out;
}

std::vector<PogBounds> bounds_from_json(const json &arr, const std::string &file) {
  if (!arr.is_array())
    throw InvalidInput(file + ": 'pogs' must be an array");
  std::vector<PogBounds> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json &p = arr[i];
    const std::string where = file + ": pogs[" + std::to_string(i) + "]";
    for (const char *key : {"id", "min_bays", "max_bays", "baseline_bays"})
      if (!p.contains(key))
        throw InvalidInput(where + ": missing '" + key + "'");
    PogBounds b;
    b.pog_id = p["id"].get<std::string>();
    b.min_alloc = json_bays(p["min_bays"], where + ".min_bays");
    b.max_alloc = json_bays(p["max_bays"], where + ".max_bays");
    b.multiple = p.contains("multiple") ? json_bays(p["multiple"], where + ".multiple")
                                        : Bays(1);
    b.baseline_bays = json_bays(p["baseline_bays"], where + ".baseline_bays");
    out.push_back(b);
  }
  return out;
}

} // namespace

void validate(const Scenario &s) {
  const std::string dept = "department '" + s.department_id + "': ";
  validate(s.weights);
  validate(s.unit);
  if (s.units_per_bay < 1)
    throw InvalidInput(dept + "units_per_bay must be positive");
  if (s.total_bays < 0)
    throw InvalidInput(dept + "total_bays must be non-negative");
  if (s.pogs.size() != s.bay_constraints.size())
    throw InvalidInput(dept + "every POG needs exactly one set of bay constraints");

  Bays min_total{0};
  for (const PogBounds &b : s.bay_constraints)
    min_total += b.min_alloc;
  if (min_total > s.total_bays) {
    const Bays deficit = min_total - s.total_bays;
    throw Infeasible(dept + "minimum allocations sum to " + to_string(min_total) +
                         " bays but only " + to_string(s.total_bays) +
                         " are available (deficit " + to_string(deficit) + " bays)",
                     to_double(deficit));
  }

  Bays baseline_total{0};
  for (std::size_t i = 0; i < s.pogs.size(); ++i) {
    const Pog &pog = s.pogs[i];
    const PogBounds &b = s.bay_constraints[i];
    if (pog.id != b.pog_id)
      throw InvalidInput(dept + "bay constraints for '" + b.pog_id +
                         "' do not line up with POG '" + pog.id + "'");
    validate(pog);
    validate(PogSpec{b.pog_id, b.min_alloc, b.max_alloc, b.multiple, {}});
    if (b.baseline_bays < b.min_alloc || b.baseline_bays > b.max_alloc ||
        !is_multiple_of(b.baseline_bays, b.multiple))
      throw InvalidInput(dept + "baseline allocation " + to_string(b.baseline_bays) +
                         " of pog '" + pog.id + "' violates its bay constraints");
    if (pog.capacity < bays_to_capacity(b.max_alloc, s.units_per_bay))
      throw InvalidInput(dept + "pog '" + pog.id +
                         "' capacity is below its maximum allocation");
    baseline_total += b.baseline_bays;
  }
  if (baseline_total > s.total_bays)
    throw InvalidInput(dept + "baseline allocations use " + to_string(baseline_total) +
                       " bays, more than the " + to_string(s.total_bays) + " available");
}

Scenario ingest(const fs::path &items_csv, const fs::path &scenario_json,
                const std::optional<fs::path> &pogs_csv,
                std::optional<double> inches_per_unit) {
  const std::string file = scenario_json.filename().string();
  json cfg;
  try {
    cfg = json::parse(read_file(scenario_json));
  } catch (const json::parse_error &e) {
    throw InvalidInput(file + ": " + e.what());
  }
  if (!cfg.is_object())
    throw InvalidInput(file + ": expected a JSON object");

  Scenario s;
  try {
    s.department_id = cfg.value("department", std::string{});
    if (s.department_id.empty())
      throw InvalidInput(file + ": missing 'department'");
    if (!cfg.contains("weights") || !cfg["weights"].is_object())
      throw InvalidInput(file + ": missing 'weights' object");
    const json &w = cfg["weights"];
    s.weights = {json_number(w, "sales", file + ": weights", 0.0),
                 json_number(w, "margin", file + ": weights", 0.0),
                 json_number(w, "units", file + ": weights", 0.0),
                 json_number(w, "similarity", file + ": weights", 0.0)};
    s.unit.inches_per_unit = json_number(cfg, "inches_per_unit", file, 1.0);
    if (!cfg.contains("units_per_bay") || !cfg["units_per_bay"].is_number_integer())
      throw InvalidInput(file + ": 'units_per_bay' must be an integer");
    s.units_per_bay = cfg["units_per_bay"].get<std::int64_t>();
    if (!cfg.contains("total_bays"))
      throw InvalidInput(file + ": missing 'total_bays'");
    s.total_bays = json_bays(cfg["total_bays"], file + ": total_bays");
    s.concave_repair = cfg.value("concave_repair", false);
  } catch (const json::exception &e) {
    throw InvalidInput(file + ": " + e.what());
  }
  if (inches_per_unit)
    s.unit.inches_per_unit = *inches_per_unit;
  validate(s.unit);

  std::vector<PogBounds> bounds;
  if (pogs_csv)
    bounds = bounds_from_csv(*pogs_csv);
  else if (cfg.contains("pogs"))
    bounds = bounds_from_json(cfg["pogs"], file);
  else
    throw InvalidInput(file + ": no 'pogs' array and no bounds file given");

  std::sort(bounds.begin(), bounds.end(),
            [](const PogBounds &a, const PogBounds &b) { return a.pog_id < b.pog_id; });
  std::map<std::string, Pog> pogs;
  for (const PogBounds &b : bounds) {
    if (pogs.count(b.pog_id))
      throw InvalidInput(file + ": duplicate pog id '" + b.pog_id + "'");
    Pog pog;
    pog.id = b.pog_id;
    pog.unit = s.unit;
    if (b.max_alloc < 0)
      throw InvalidInput(file + ": pog '" + b.pog_id + "' has negative max_bays");
    pog.capacity = bays_to_capacity(b.max_alloc, s.units_per_bay);
    pogs.emplace(b.pog_id, std::move(pog));
  }

  const CsvTable items = read_csv(
      items_csv, {"pog_id", "item_id", "width_inches", "price", "margin",
                  "demand", "in_baseline", "locality"});
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto &[line, fields] : items.rows) {
    const RowReader r(items, line, fields);
    const std::string &pog_id = r.text("pog_id");
    const auto it = pogs.find(pog_id);
    if (it == pogs.end())
      r.fail("pog_id", "unknown pog '" + pog_id + "'");
    Item item;
    item.id = r.text("item_id");
    if (!seen.emplace(pog_id, item.id).second)
      r.fail("item_id", "duplicate item '" + item.id + "' in pog '" + pog_id + "'");
    const double width = r.number("width_inches");
    if (!(width > 0.0))
      r.fail("width_inches", "must be positive");
    item.space = discretize_space(width, s.unit);
    item.price = r.number("price");
    if (item.price < 0.0)
      r.fail("price", "must be non-negative");
    item.margin = r.number("margin");
    item.demand = r.number("demand");
    if (item.demand < 0.0)
      r.fail("demand", "must be non-negative");
    item.in_baseline = r.flag("in_baseline");
    item.locality = parse_locality(r);
    it->second.items.push_back(std::move(item));
  }

  for (auto &[id, pog] : pogs) {
    if (pog.items.empty())
      throw InvalidInput(file + ": pog '" + id + "' has no items in " + items.name);
    s.pogs.push_back(std::move(pog));
  }
  s.bay_constraints = std::move(bounds);
  validate(s);
  return s;
}

BayProblem parse_bay_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw InvalidInput(std::string("bay problem: ") + e.what());
  }
  try {
    BayProblem problem;
    if (!doc.is_object() || !doc.contains("total_bays") || !doc.contains("pogs"))
      throw InvalidInput("bay problem: need 'total_bays' and 'pogs'");
    problem.total_bays = json_bays(doc["total_bays"], "total_bays");
    for (std::size_t i = 0; i < doc["pogs"].size(); ++i) {
      const json &p = doc["pogs"][i];
      const std::string where = "bay problem: pogs[" + std::to_string(i) + "]";
      PogSpec spec;
      spec.pog_id = p.at("id").get<std::string>();
      spec.min_alloc = json_bays(p.at("min_bays"), where + ".min_bays");
      spec.max_alloc = json_bays(p.at("max_bays"), where + ".max_bays");
      spec.multiple = p.contains("multiple") ? json_bays(p["multiple"], where + ".multiple")
                                             : Bays(1);
      if (p.contains("values")) {
        std::map<Bays, double> table;
        for (const auto &[key, value] : p["values"].items())
          table[parse_bays(key)] = value.get<double>();
        spec.value_fn = BayValueFunction::tabulated(std::move(table));
      } else if (p.contains("log")) {
        spec.value_fn = BayValueFunction::logarithmic(p["log"].at("a").get<double>(),
                                                      p["log"].at("b").get<double>());
      } else {
        throw InvalidInput(where + ": needs 'values' or 'log'");
      }
      problem.pogs.push_back(std::move(spec));
    }
    std::sort(problem.pogs.begin(), problem.pogs.end(),
              [](const PogSpec &a, const PogSpec &b) { return a.pog_id < b.pog_id; });
    validate(problem);
    return problem;
  } catch (const json::exception &e) {
    throw InvalidInput(std::string("bay problem: ") + e.what());
  }
}

BayProblem load_bay_problem(const fs::path &path) {
  try {
    return parse_bay_problem(read_file(path));
  } catch (const InvalidInput &e) {
    throw InvalidInput(path.filename().string() + ": " + e.what());
  }
}

} // namespace shelfopt
