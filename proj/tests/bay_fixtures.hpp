#ifndef SHELFOPT_TESTS_BAY_FIXTURES_HPP
#define SHELFOPT_TESTS_BAY_FIXTURES_HPP

#include <cmath>
#include <map>
#include <random>

#include "shelfopt/bay_alloc.hpp"

namespace fixtures {

using shelfopt::Bays;

inline shelfopt::PogSpec tab(std::string id, Bays min, Bays max, Bays m,
                             std::map<Bays, double> values) {
  return {std::move(id), min, max, m,
          shelfopt::BayValueFunction::tabulated(std::move(values))};
}

/// f1 = {2:10, 3:14, 4:16}, f2 = {1:6, 2:11, 3:13}, five bays.
inline shelfopt::BayProblem two_pog_example() {
  shelfopt::BayProblem p;
  p.pogs.push_back(tab("P1", Bays(2), Bays(4), Bays(1),
                       {{Bays(2), 10}, {Bays(3), 14}, {Bays(4), 16}}));
  p.pogs.push_back(tab("P2", Bays(1), Bays(3), Bays(1),
                       {{Bays(1), 6}, {Bays(2), 11}, {Bays(3), 13}}));
  p.total_bays = Bays(5);
  return p;
}

/// Up to four POGs, at most 12 choices each, integer values in [-5, 30],
/// multiples drawn from {1/2, 1, 3/2}.
inline shelfopt::BayProblem random_problem(std::mt19937 &rng) {
  const std::vector<Bays> multiples{Bays(1, 2), Bays(1), Bays(3, 2)};
  shelfopt::BayProblem p;
  const int count = 1 + static_cast<int>(rng() % 4);
  Bays min_total{0}, max_total{0};
  for (int i = 0; i < count; ++i) {
    const Bays m = multiples[rng() % multiples.size()];
    const Bays min = m * static_cast<std::int64_t>(rng() % 4);
    const int choices = 1 + static_cast<int>(rng() % 12);
    const Bays max = min + m * (choices - 1);
    std::map<Bays, double> values;
    for (Bays y = min; y <= max; y += m)
      values[y] = static_cast<double>(static_cast<int>(rng() % 36) - 5);
    p.pogs.push_back(tab("P" + std::to_string(i), min, max, m, std::move(values)));
    min_total += min;
    max_total += max;
  }
  const auto span = (max_total - min_total) * 2;
  const auto extra = rng() % static_cast<unsigned>(span.numerator() / span.denominator() + 2);
  p.total_bays = min_total + Bays(static_cast<std::int64_t>(extra), 2);
  return p;
}

/// Concave problems: value b ln(y + shift) sampled on a shared grid step.
inline shelfopt::BayProblem random_concave_problem(std::mt19937 &rng) {
  const std::vector<Bays> steps{Bays(1, 2), Bays(1), Bays(2)};
  const Bays m = steps[rng() % steps.size()];
  std::uniform_real_distribution<double> slope(0.5, 5.0), shift(0.1, 3.0);
  shelfopt::BayProblem p;
  const int count = 1 + static_cast<int>(rng() % 4);
  Bays min_total{0}, max_total{0};
  for (int i = 0; i < count; ++i) {
    const Bays min = m * static_cast<std::int64_t>(rng() % 3);
    const Bays max = min + m * static_cast<std::int64_t>(rng() % 12);
    const double b = slope(rng), c = shift(rng);
    std::map<Bays, double> values;
    for (Bays y = min; y <= max; y += m)
      values[y] = b * std::log(shelfopt::to_double(y) + c);
    p.pogs.push_back(tab("P" + std::to_string(i), min, max, m, std::move(values)));
    min_total += min;
    max_total += max;
  }
  const auto span = max_total - min_total + Bays(2);
  const auto extra = rng() % static_cast<unsigned>(span.numerator() / span.denominator() + 1);
  p.total_bays = min_total + Bays(static_cast<std::int64_t>(extra));
  return p;
}

} // namespace fixtures

#endif
