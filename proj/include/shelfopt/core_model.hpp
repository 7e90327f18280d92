#ifndef SHELFOPT_CORE_MODEL_HPP
#define SHELFOPT_CORE_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shelfopt/error.hpp"

namespace shelfopt {

/// Dense 0/1 selection vector aligned with a POG's item list.
using BitVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

/// Free-form diagnostic messages collected during a solve.
using SolveLog = std::vector<std::string>;

enum class Locality { Local, NonLocal };

/// A candidate SKU. `space` is in discretization units and is at least one.
struct Item {
  std::string id;
  std::int64_t space = 1;
  double price = 0.0;
  /// Margin per unit; may be negative for loss leaders.
  double margin = 0.0;
  /// Expected units sold over the planning horizon.
  double demand = 0.0;
  bool in_baseline = false;
  Locality locality = Locality::Local;
};

/// Checks the Item invariants; throws InvalidInput naming the offending field.
void validate(const Item &item);

/// Objective weights. Only their ratios affect which assortment is optimal.
struct WeightVector {
  double sales = 0.0;
  double margin = 0.0;
  double units = 0.0;
  double similarity = 0.0;

  WeightVector operator*(double c) const {
    return {sales * c, margin * c, units * c, similarity * c};
  }
  WeightVector operator+(const WeightVector &o) const {
    return {sales + o.sales, margin + o.margin, units + o.units,
            similarity + o.similarity};
  }
};

void validate(const WeightVector &w);

struct SpaceUnit {
  double inches_per_unit = 1.0;
};

void validate(const SpaceUnit &u);

/// A planogram: candidate items and the shelf capacity, both in `unit`.
struct Pog {
  std::string id;
  std::vector<Item> items;
  std::int64_t capacity = 0;
  SpaceUnit unit;

  /// Baseline assortment x0 as a bit vector.
  BitVector baseline() const;
};

/// Throws InvalidInput on duplicate item ids, bad items or negative capacity.
void validate(const Pog &pog);

struct Assortment {
  BitVector bits;
  double value = 0.0;
  std::int64_t used_space = 0;
};

/// Per-item objective contributions:
///   q_i = (p_i * w_sales + g_i * w_margin + w_units) * d_i
///         + (2 * x0_i - 1) * w_similarity
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1>
build_objective_vector(const std::vector<Item> &items,
                       const WeightVector &weights) {
  if (items.empty())
    throw InvalidInput("build_objective_vector: item list is empty");
  validate(weights);
  const auto n = static_cast<Eigen::Index>(items.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> q(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Item &it = items[static_cast<std::size_t>(i)];
    const Scalar multiplier = Scalar(it.price) * Scalar(weights.sales) +
                              Scalar(it.margin) * Scalar(weights.margin) +
                              Scalar(weights.units);
    const Scalar similarity = Scalar(it.in_baseline ? 1 : -1);
    q(i) = multiplier * Scalar(it.demand) + similarity * Scalar(weights.similarity);
  }
  return q;
}

/// Width in inches to whole units, rounding up so a discretized
/// assortment never overflows the physical shelf.
std::int64_t discretize_space(double width_inches, const SpaceUnit &unit);

/// Sum over i of (2 * x0_i - 1) * x_i: shared ones minus additions.
std::int64_t similarity_to_baseline(const BitVector &x, const BitVector &x0);

} // namespace shelfopt

#endif
