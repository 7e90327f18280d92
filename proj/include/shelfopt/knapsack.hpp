#ifndef SHELFOPT_KNAPSACK_HPP
#define SHELFOPT_KNAPSACK_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "shelfopt/core_model.hpp"
#include "shelfopt/error.hpp"

namespace shelfopt {

/// Largest n * (c + 1) table the DP solvers will allocate.
inline constexpr std::int64_t kMaxDpCells = 1'000'000'000;

/// Largest item count accepted by the exhaustive solver.
inline constexpr Eigen::Index kMaxBruteForceItems = 25;

using SpaceVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

template <typename Scalar>
using ValueVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar = double>
struct KnapsackInstance {
  SpaceVector weights;
  ValueVector<Scalar> values;
  std::int64_t capacity = 0;

  Eigen::Index size() const { return weights.size(); }

  void validate() const {
    if (weights.size() != values.size())
      throw InvalidInput("knapsack: weights and values differ in length");
    if (capacity < 0)
      throw InvalidInput("knapsack: capacity must be non-negative");
    for (Eigen::Index i = 0; i < weights.size(); ++i)
      if (weights(i) < 1)
        throw InvalidInput("knapsack: item " + std::to_string(i) +
                           " has weight < 1");
  }
};

template <typename Scalar = double>
struct KnapsackSolution {
  BitVector selected;
  Scalar value{0};
  std::int64_t used = 0;
};

/// Optimal value and assortment at every capacity 0..max_capacity().
template <typename Scalar = double>
struct ValueCurve {
  std::string pog_id;
  ValueVector<Scalar> values;
  std::vector<BitVector> assortments;
  SpaceUnit unit;

  std::int64_t max_capacity() const { return values.size() - 1; }
};

/// Strict "a comes before b" on 0/1 vectors, index 0 most significant.
inline bool lexicographically_less(const BitVector &a, const BitVector &b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Sum of values over the selected items, accumulated in index order.
template <typename Scalar>
Scalar selected_value(const ValueVector<Scalar> &values,
                      const BitVector &selected) {
  Scalar total{0};
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (selected(i))
      total += values(i);
  return total;
}

inline std::int64_t selected_space(const SpaceVector &weights,
                                   const BitVector &selected) {
  std::int64_t total = 0;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (selected(i))
      total += weights(i);
  return total;
}

namespace detail {

/// One bit per (item, capacity) cell: set when taking the item is strictly
/// better than skipping it given the items after it.
class DecisionTable {
public:
  DecisionTable(Eigen::Index items, std::int64_t capacity)
      : stride_((capacity + 64) / 64),
        words_(static_cast<std::size_t>(items * stride_), 0) {}

  void set(Eigen::Index item, std::int64_t cap) {
    words_[index(item, cap)] |= std::uint64_t{1} << (cap % 64);
  }
  bool test(Eigen::Index item, std::int64_t cap) const {
    return (words_[index(item, cap)] >> (cap % 64)) & 1U;
  }

private:
  std::size_t index(Eigen::Index item, std::int64_t cap) const {
    return static_cast<std::size_t>(item * stride_ + cap / 64);
  }

  std::int64_t stride_;
  std::vector<std::uint64_t> words_;
};

/// Runs the recurrence
///   m[i, j] = m[i-1, j]                                  if w_i > j
///           = max(m[i-1, j], m[i-1, j - w_i] + v_i)       otherwise
/// with m[0, j] = 0, consuming items from the last index to the first so
/// that backtracking can fix item 0 first. `row` ends as the optimal value
/// for every capacity 0..c using all items.
template <typename Scalar>
DecisionTable run_table(const KnapsackInstance<Scalar> &inst,
                        ValueVector<Scalar> &row) {
  const Eigen::Index n = inst.size();
  const std::int64_t c = inst.capacity;
  if (n > 0 && static_cast<double>(n) * static_cast<double>(c + 1) >
                   static_cast<double>(kMaxDpCells))
    throw InstanceTooLarge(
        "knapsack: " + std::to_string(n) + " items x " + std::to_string(c + 1) +
        " capacities exceeds the DP table limit; use a coarser space unit "
        "(e.g. half-inch or inch increments) to shrink the capacity");

  DecisionTable table(n, c);
  row = ValueVector<Scalar>::Zero(c + 1);
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    const std::int64_t w = inst.weights(k);
    const Scalar v = inst.values(k);
    for (std::int64_t j = c; j >= w; --j) {
      const Scalar take = row(j - w) + v;
      if (take > row(j)) {
        row(j) = take;
        table.set(k, j);
      }
    }
  }
  return table;
}

inline BitVector backtrack(const DecisionTable &table,
                           const SpaceVector &weights, std::int64_t cap) {
  BitVector bits = BitVector::Zero(weights.size());
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    if (table.test(k, cap)) {
      bits(k) = 1;
      cap -= weights(k);
    }
  }
  return bits;
}

} // namespace detail

/// Exact 0/1 knapsack by dynamic programming, O(n c) time.
///
/// Among value-optimal selections the one using the least space is returned,
/// and among those the lexicographically smallest bit vector. Items with
/// non-positive value are never selected.
template <typename Scalar>
KnapsackSolution<Scalar> solve_dp(const KnapsackInstance<Scalar> &inst) {
  inst.validate();
  ValueVector<Scalar> row;
  const auto table = detail::run_table(inst, row);

  // The smallest capacity reaching the optimum is exactly the space used by
  // any optimal selection at that capacity.
  std::int64_t tight = inst.capacity;
  while (tight > 0 && row(tight - 1) == row(inst.capacity))
    --tight;

  KnapsackSolution<Scalar> sol;
  sol.selected = detail::backtrack(table, inst.weights, tight);
  sol.value = selected_value(inst.values, sol.selected);
  sol.used = selected_space(inst.weights, sol.selected);
  return sol;
}

/// One DP pass yielding the optimal value and selection for every
/// capacity 0..inst.capacity, using the same tie-break as solve_dp.
template <typename Scalar>
ValueCurve<Scalar> solve_curve(const KnapsackInstance<Scalar> &inst) {
  inst.validate();
  ValueVector<Scalar> row;
  const auto table = detail::run_table(inst, row);

  ValueCurve<Scalar> curve;
  curve.values.resize(inst.capacity + 1);
  curve.assortments.reserve(static_cast<std::size_t>(inst.capacity + 1));
  std::int64_t tight = 0;
  for (std::int64_t j = 0; j <= inst.capacity; ++j) {
    if (row(j) != row(tight))
      tight = j;
    BitVector bits = detail::backtrack(table, inst.weights, tight);
    curve.values(j) = selected_value(inst.values, bits);
    curve.assortments.push_back(std::move(bits));
  }
  return curve;
}

/// Capacity sweep for a POG under the given weights. Items whose objective
/// contribution is negative are dropped before the DP and noted in `log`.
inline ValueCurve<double> solve_curve(const Pog &pog,
                                      const WeightVector &weights,
                                      SolveLog *log = nullptr) {
  validate(pog);
  validate(weights);
  const auto n = static_cast<Eigen::Index>(pog.items.size());

  ValueCurve<double> curve;
  curve.pog_id = pog.id;
  curve.unit = pog.unit;
  if (n == 0) {
    curve.values = ValueVector<double>::Zero(pog.capacity + 1);
    curve.assortments.assign(static_cast<std::size_t>(pog.capacity + 1),
                             BitVector());
    return curve;
  }

  const ValueVector<double> q = build_objective_vector(pog.items, weights);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (q(i) < 0.0) {
      if (log)
        log->push_back("pog " + pog.id + ": item " +
                       pog.items[static_cast<std::size_t>(i)].id +
                       " excluded (negative objective contribution " +
                       std::to_string(q(i)) + ")");
      continue;
    }
    kept.push_back(i);
  }

  KnapsackInstance<double> inst;
  const auto m = static_cast<Eigen::Index>(kept.size());
  inst.weights.resize(m);
  inst.values.resize(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    inst.weights(k) = pog.items[static_cast<std::size_t>(kept[k])].space;
    inst.values(k) = q(kept[k]);
  }
  inst.capacity = pog.capacity;

  const ValueCurve<double> reduced = solve_curve(inst);
  curve.values.resize(pog.capacity + 1);
  for (std::int64_t j = 0; j <= pog.capacity; ++j) {
    BitVector bits = BitVector::Zero(n);
    const BitVector &sub = reduced.assortments[static_cast<std::size_t>(j)];
    for (Eigen::Index k = 0; k < m; ++k)
      bits(kept[k]) = sub(k);
    curve.values(j) = selected_value(q, bits);
    curve.assortments.push_back(std::move(bits));
  }
  return curve;
}

/// Exhaustive enumeration of all 2^n subsets; n is capped at 25.
template <typename Scalar>
KnapsackSolution<Scalar>
solve_brute_force(const KnapsackInstance<Scalar> &inst) {
  inst.validate();
  const Eigen::Index n = inst.size();
  if (n > kMaxBruteForceItems)
    throw InstanceTooLarge("brute force: " + std::to_string(n) +
                           " items exceeds the limit of " +
                           std::to_string(kMaxBruteForceItems));

  KnapsackSolution<Scalar> best;
  best.selected = BitVector::Zero(n);
  BitVector bits(n);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::int64_t used = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      bits(i) = static_cast<std::uint8_t>((mask >> i) & 1U);
      if (bits(i))
        used += inst.weights(i);
    }
    if (used > inst.capacity)
      continue;
    const Scalar value = selected_value(inst.values, bits);
    const bool better =
        value > best.value ||
        (value == best.value &&
         (used < best.used ||
          (used == best.used && lexicographically_less(bits, best.selected))));
    if (better) {
      best.selected = bits;
      best.value = value;
      best.used = used;
    }
  }
  return best;
}

enum class GreedyMode { ByValue, ByProductivity };

/// Greedy baseline: visit items by descending value (or value per unit of
/// space), ties to the lower index, and take each positive-value item that
/// still fits.
template <typename Scalar>
KnapsackSolution<Scalar> solve_greedy(const KnapsackInstance<Scalar> &inst,
                                      GreedyMode mode) {
  inst.validate();
  const Eigen::Index n = inst.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto key = [&](Eigen::Index i) {
    const double v = static_cast<double>(inst.values(i));
    return mode == GreedyMode::ByValue
               ? v
               : v / static_cast<double>(inst.weights(i));
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return key(a) > key(b); });

  KnapsackSolution<Scalar> sol;
  sol.selected = BitVector::Zero(n);
  for (const Eigen::Index i : order) {
    if (!(inst.values(i) > Scalar{0}))
      continue;
    if (sol.used + inst.weights(i) <= inst.capacity) {
      sol.selected(i) = 1;
      sol.used += inst.weights(i);
    }
  }
  sol.value = selected_value(inst.values, sol.selected);
  return sol;
}

} // namespace shelfopt

#endif
