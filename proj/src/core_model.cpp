#include "shelfopt/core_model.hpp"

#include <cmath>
#include <unordered_set>

namespace shelfopt {

void validate(const Item &item) {
  const std::string where = "item '" + item.id + "': ";
  if (item.id.empty())
    throw InvalidInput("item: empty id");
  if (item.space < 1)
    throw InvalidInput(where + "space must be at least one unit");
  if (!(item.price >= 0.0) || !std::isfinite(item.price))
    throw InvalidInput(where + "price must be a non-negative number");
  if (!(item.demand >= 0.0) || !std::isfinite(item.demand))
    throw InvalidInput(where + "demand must be a non-negative number");
  if (!std::isfinite(item.margin))
    throw InvalidInput(where + "margin must be finite");
}

void validate(const WeightVector &w) {
  for (const double c : {w.sales, w.margin, w.units, w.similarity})
    if (!(c >= 0.0) || !std::isfinite(c))
      throw InvalidInput("weights: every component must be a non-negative number");
  if (w.sales == 0.0 && w.margin == 0.0 && w.units == 0.0 && w.similarity == 0.0)
    throw InvalidInput("weights: at least one component must be positive");
}

void validate(const SpaceUnit &u) {
  if (!(u.inches_per_unit > 0.0) || !std::isfinite(u.inches_per_unit))
    throw InvalidInput("space unit: inches_per_unit must be positive");
}

BitVector Pog::baseline() const {
  BitVector x0(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i)
    x0(static_cast<Eigen::Index>(i)) = items[i].in_baseline ? 1 : 0;
  return x0;
}

void validate(const Pog &pog) {
  if (pog.capacity < 0)
    throw InvalidInput("pog '" + pog.id + "': capacity must be non-negative");
  validate(pog.unit);
  std::unordered_set<std::string> seen;
  for (const Item &it : pog.items) {
    validate(it);
    if (!seen.insert(it.id).second)
      throw InvalidInput("pog '" + pog.id + "': duplicate item id '" + it.id + "'");
  }
}

std::int64_t discretize_space(double width_inches, const SpaceUnit &unit) {
  validate(unit);
  if (!(width_inches > 0.0) || !std::isfinite(width_inches))
    throw InvalidInput("discretize_space: width must be positive");
  const double ratio = width_inches / unit.inches_per_unit;
  auto units = static_cast<std::int64_t>(std::ceil(ratio));
  // Guard against the quotient landing one ulp under an exact multiple.
  if (static_cast<double>(units) * unit.inches_per_unit < width_inches)
    ++units;
  return std::max<std::int64_t>(units, 1);
}

std::int64_t similarity_to_baseline(const BitVector &x, const BitVector &x0) {
  if (x.size() != x0.size())
    throw InvalidInput("similarity_to_baseline: length mismatch");
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i))
      total += x0(i) ? 1 : -1;
  return total;
}

} // namespace shelfopt
