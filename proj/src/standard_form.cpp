#include <charconv>
#include <sstream>

#include "shelfopt/bay_alloc.hpp"
#include "shelfopt/error.hpp"

namespace shelfopt {

namespace {

std::string number(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// Accumulates `+ c name` terms, wrapping long rows for LP readers that
/// limit line length.
class Row {
public:
  explicit Row(std::ostringstream &out) : out_(out) {}

  void term(double coef, const std::string &name, bool keep_unit = false) {
    const bool negative = coef < 0.0;
    const double mag = negative ? -coef : coef;
    if (count_ > 0 && count_ % 6 == 0)
      out_ << "\n   ";
    if (count_ > 0 || negative)
      out_ << (negative ? " - " : " + ");
    else
      out_ << ' ';
    if (mag != 1.0 || keep_unit)
      out_ << number(mag) << ' ';
    out_ << name;
    ++count_;
  }

private:
  std::ostringstream &out_;
  int count_ = 0;
};

std::string x_name(std::size_t i) { return "x_" + std::to_string(i); }
std::string z_name(std::size_t i) { return "z_" + std::to_string(i); }
std::string lambda_name(std::size_t i, std::size_t k) {
  return "lambda_" + std::to_string(i) + "_" + std::to_string(k);
}

} // namespace

std::string emit_standard_form(const BayProblem &problem) {
  validate(problem);
  const std::size_t P = problem.pogs.size();
  std::vector<PiecewiseModel> models;
  models.reserve(P);
  for (const PogSpec &spec : problem.pogs)
    models.push_back(build_piecewise(spec));

  std::ostringstream out;
  out << "\\ Bay allocation, piecewise-linear standard form\n";
  out << "\\ total bays: " << to_string(problem.total_bays) << '\n';
  for (std::size_t i = 0; i < P; ++i) {
    const PogSpec &spec = problem.pogs[i];
    out << "\\ pog " << i << " = " << spec.pog_id << ": multiple "
        << to_string(spec.multiple) << ", min " << to_string(spec.min_alloc)
        << ", max " << to_string(spec.max_alloc) << ", breakpoints";
    for (const Bays &j : models[i].breakpoints)
      out << ' ' << to_string(j);
    out << '\n';
  }

  out << "Maximize\n obj:";
  {
    Row row(out);
    for (std::size_t i = 0; i < P; ++i)
      for (std::size_t k = 0; k < models[i].breakpoints.size(); ++k)
        row.term(models[i].values(static_cast<Eigen::Index>(k)),
                 lambda_name(i, k), true);
  }
  out << "\nSubject To\n";

  // z_i = -m_i x_i + sum_j j lambda_ij, fixed to 0 below.
  for (std::size_t i = 0; i < P; ++i) {
    out << " " << z_name(i) << "_link:";
    Row row(out);
    row.term(1.0, z_name(i));
    row.term(to_double(problem.pogs[i].multiple), x_name(i));
    for (std::size_t k = 0; k < models[i].breakpoints.size(); ++k)
      row.term(-to_double(models[i].breakpoints[k]), lambda_name(i, k));
    out << " = 0\n";
  }
  // z_{P+i} = sum_j lambda_ij, fixed to 1 below.
  for (std::size_t i = 0; i < P; ++i) {
    out << " " << z_name(P + i) << "_convex:";
    Row row(out);
    row.term(1.0, z_name(P + i));
    for (std::size_t k = 0; k < models[i].breakpoints.size(); ++k)
      row.term(-1.0, lambda_name(i, k));
    out << " = 0\n";
  }
  out << " budget:";
  {
    Row row(out);
    for (std::size_t i = 0; i < P; ++i)
      row.term(to_double(problem.pogs[i].multiple), x_name(i));
  }
  out << " <= " << number(to_double(problem.total_bays)) << '\n';

  out << "Bounds\n";
  for (std::size_t i = 0; i < P; ++i)
    out << " " << z_name(i) << " = 0\n";
  for (std::size_t i = 0; i < P; ++i)
    out << " " << z_name(P + i) << " = 1\n";
  out << "Generals\n";
  for (std::size_t i = 0; i < P; ++i)
    out << " " << x_name(i) << '\n';
  out << "End\n";
  return out.str();
}

} // namespace shelfopt
