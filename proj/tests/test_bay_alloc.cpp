#include <doctest.h>

#include <cmath>
#include <random>

#include "bay_fixtures.hpp"
#include "oracles.hpp"
#include "shelfopt/bay_alloc.hpp"

using namespace shelfopt;
using fixtures::tab;
using fixtures::two_pog_example;

namespace {

double oracle_optimum(const BayProblem &p) {
  const Bays unit = p.base_unit();
  std::vector<std::vector<std::int64_t>> sizes;
  std::vector<std::vector<double>> values;
  for (const PogSpec &spec : p.pogs) {
    const ChoiceList c = choice_list(spec);
    sizes.emplace_back();
    for (const Bays &y : c.allocations) {
      const Bays q = y / unit;
      sizes.back().push_back(q.numerator() / q.denominator());
    }
    values.push_back(c.values);
  }
  const Bays budget = p.total_bays / unit;
  return oracle::allocation_value(sizes, values, budget.numerator() / budget.denominator());
}

void check_feasible(const BayProblem &p, const BayAllocation &a) {
  REQUIRE(a.pogs.size() == p.pogs.size());
  Bays sum{0};
  for (std::size_t i = 0; i < p.pogs.size(); ++i) {
    const PogSpec &spec = p.pogs[i];
    const PogAllocation &x = a.pogs[i];
    CHECK(x.pog_id == spec.pog_id);
    CHECK(x.bays >= spec.min_alloc);
    CHECK(x.bays <= spec.max_alloc);
    CHECK(x.count >= 0);
    CHECK(spec.multiple * x.count == x.bays);
    sum += x.bays;
  }
  CHECK(sum <= p.total_bays);
  CHECK(a.slack == p.total_bays - sum);
}

} // namespace

TEST_CASE("build_piecewise") {
  const auto spec = tab("P", Bays(2), Bays(4), Bays(1),
                        {{Bays(2), 10}, {Bays(3), 14}, {Bays(4), 16}});
  const PiecewiseModel m = build_piecewise(spec);
  CHECK(m.breakpoints == std::vector<Bays>{Bays(2), Bays(3), Bays(4)});
  CHECK(m.values == Eigen::Vector3d(10, 14, 16));
  const Eigen::VectorXd w = m.weights_for(Bays(5, 2));
  CHECK(w.sum() == doctest::Approx(1.0));
  CHECK(w(0) * 2 + w(1) * 3 + w(2) * 4 == doctest::Approx(2.5));
  CHECK(m.evaluate(Bays(5, 2)) == doctest::Approx(12.0));
  for (int j = 2; j <= 4; ++j)
    CHECK(m.evaluate(Bays(j)) == spec.value_fn(Bays(j)));

  const auto single = build_piecewise(tab("S", Bays(3), Bays(3), Bays(1), {{Bays(3), 7}}));
  CHECK(single.breakpoints.size() == 1);
  CHECK(single.weights_for(Bays(3))(0) == 1.0);

  const auto ln = build_piecewise(
      PogSpec{"L", Bays(1), Bays(3), Bays(1, 2), BayValueFunction::logarithmic(0, 1)});
  CHECK(ln.breakpoints.size() == 3);
  CHECK(ln.evaluate(Bays(3, 2)) == doctest::Approx(0.34657359027997264).epsilon(1e-12));

  CHECK_THROWS_AS(build_piecewise(tab("G", Bays(2), Bays(4), Bays(1), {{Bays(2), 1}, {Bays(4), 2}})),
                  InvalidInput);
  CHECK_THROWS_AS(build_piecewise(PogSpec{"Z", Bays(0), Bays(2), Bays(1),
                                          BayValueFunction::logarithmic(0, 1)}),
                  InvalidInput);
}

TEST_CASE("choice values prefer exact tabulated entries over interpolation") {
  const auto spec = tab("P", Bays(1), Bays(2), Bays(1, 2),
                        {{Bays(1), 2}, {Bays(3, 2), 9}, {Bays(2), 4}});
  const ChoiceList c = choice_list(spec);
  CHECK(c.values == std::vector<double>{2, 9, 4});
  const auto sparse = tab("Q", Bays(1), Bays(2), Bays(1, 2), {{Bays(1), 2}, {Bays(2), 4}});
  CHECK(choice_list(sparse).values == std::vector<double>{2, 3, 4});
}

TEST_CASE("solve_exact examples") {
  const auto p = two_pog_example();
  const BayAllocation a = solve_exact(p);
  CHECK(a.at("P1").bays == Bays(3));
  CHECK(a.at("P2").bays == Bays(2));
  CHECK(a.objective == 25.0);
  CHECK(a.slack == Bays(0));

  auto tight = p;
  tight.total_bays = Bays(3);
  const BayAllocation t = solve_exact(tight);
  CHECK(t.at("P1").bays == Bays(2));
  CHECK(t.at("P2").bays == Bays(1));
  CHECK(t.objective == 16.0);

  std::map<Bays, double> linear;
  for (Bays y{0}; y <= Bays(4); y += Bays(1, 2))
    linear[y] = to_double(y);
  BayProblem one;
  one.pogs.push_back(tab("H", Bays(0), Bays(4), Bays(1, 2), linear));
  one.total_bays = Bays(3);
  const BayAllocation h = solve_exact(one);
  CHECK(h.pogs[0].bays == Bays(3));
  CHECK(h.pogs[0].count == 6);
  CHECK(h.objective == 3.0);
}

TEST_CASE("solve_exact reports infeasibility with the deficit") {
  auto p = two_pog_example();
  p.total_bays = Bays(5, 2);
  try {
    solve_exact(p);
    FAIL("expected Infeasible");
  } catch (const Infeasible &e) {
    CHECK(e.deficit() == doctest::Approx(0.5));
    CHECK(std::string(e.what()).find("deficit 1/2") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_brute_force_bays(p), Infeasible);
  CHECK_THROWS_AS(greedy_marginal(p), Infeasible);
}

TEST_CASE("solve_exact tie-break: least space, then smaller early allocations") {
  BayProblem p;
  p.pogs.push_back(tab("A", Bays(0), Bays(2), Bays(1), {{Bays(0), 0}, {Bays(1), 5}, {Bays(2), 5}}));
  p.pogs.push_back(tab("B", Bays(0), Bays(2), Bays(1), {{Bays(0), 0}, {Bays(1), 5}, {Bays(2), 5}}));
  p.total_bays = Bays(3);
  const BayAllocation a = solve_exact(p);
  CHECK(a.at("A").bays == Bays(1));
  CHECK(a.at("B").bays == Bays(1));
  p.total_bays = Bays(1);
  const BayAllocation b = solve_exact(p);
  CHECK(b.at("A").bays == Bays(0));
  CHECK(b.at("B").bays == Bays(1));
  const BayAllocation c = solve_brute_force_bays(p);
  CHECK(c.at("A").bays == Bays(0));
}

TEST_CASE("solve_brute_force_bays examples and guard") {
  const BayAllocation a = solve_brute_force_bays(two_pog_example());
  CHECK(a.objective == 25.0);
  CHECK(a.at("P1").bays == Bays(3));

  BayProblem one;
  one.pogs.push_back(tab("S", Bays(1), Bays(3), Bays(1), {{Bays(1), 1}, {Bays(2), 8}, {Bays(3), 6}}));
  one.total_bays = Bays(3);
  CHECK(solve_brute_force_bays(one).pogs[0].bays == Bays(2));

  BayProblem big;
  for (int i = 0; i < 7; ++i) {
    std::map<Bays, double> v;
    for (int y = 0; y < 10; ++y)
      v[Bays(y)] = y;
    big.pogs.push_back(tab("B" + std::to_string(i), Bays(0), Bays(9), Bays(1), v));
  }
  big.total_bays = Bays(20);
  CHECK_THROWS_AS(solve_brute_force_bays(big), InstanceTooLarge);
}

TEST_CASE("greedy_marginal examples") {
  const BayAllocation g = greedy_marginal(two_pog_example());
  CHECK(g.objective == 25.0);
  CHECK(g.at("P1").bays == Bays(3));

  auto zero = two_pog_example();
  zero.total_bays = Bays(3);
  const BayAllocation z = greedy_marginal(zero);
  CHECK(z.at("P1").bays == Bays(2));
  CHECK(z.at("P2").bays == Bays(1));

  BayProblem one;
  one.pogs.push_back(tab("C", Bays(0), Bays(4), Bays(1),
                         {{Bays(0), 0}, {Bays(1), 4}, {Bays(2), 6}, {Bays(3), 7}, {Bays(4), 7}}));
  one.total_bays = Bays(10);
  CHECK(greedy_marginal(one).pogs[0].bays == Bays(3));

  BayProblem convex;
  convex.pogs.push_back(tab("X", Bays(0), Bays(2), Bays(1), {{Bays(0), 0}, {Bays(1), 1}, {Bays(2), 3}}));
  convex.total_bays = Bays(2);
  CHECK_THROWS_AS(greedy_marginal(convex), ConcavityRequired);
}

TEST_CASE("base unit and validation") {
  BayProblem p;
  p.pogs.push_back(tab("A", Bays(0), Bays(1), Bays(1, 2), {}));
  p.pogs.push_back(tab("B", Bays(0), Bays(1), Bays(1, 3), {}));
  p.total_bays = Bays(5, 4);
  CHECK(p.base_unit() == Bays(1, 12));
  p.total_bays = Bays(2);
  CHECK(p.base_unit() == Bays(1, 6));

  BayProblem bad;
  bad.pogs.push_back(tab("A", Bays(1, 3), Bays(1), Bays(1, 2), {}));
  CHECK_THROWS_AS(validate(bad), InvalidInput);
  bad.pogs[0] = tab("A", Bays(2), Bays(1), Bays(1), {});
  CHECK_THROWS_AS(validate(bad), InvalidInput);
  bad.pogs[0] = tab("A", Bays(0), Bays(1), Bays(0), {});
  CHECK_THROWS_AS(validate(bad), InvalidInput);
  CHECK_THROWS_AS(validate(BayProblem{}), InvalidInput);
}

TEST_CASE("solve_exact matches independent enumeration and brute force") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const BayProblem p = fixtures::random_problem(rng);
    const BayAllocation exact = solve_exact(p);
    check_feasible(p, exact);
    CHECK(exact.objective == oracle_optimum(p));
    const BayAllocation bf = solve_brute_force_bays(p);
    CHECK(bf.objective == exact.objective);
    for (std::size_t i = 0; i < p.pogs.size(); ++i)
      CHECK(bf.pogs[i].bays == exact.pogs[i].bays);
  }
}

TEST_CASE("greedy equals exact on concave problems") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const BayProblem p = fixtures::random_concave_problem(rng);
    const BayAllocation g = greedy_marginal(p);
    check_feasible(p, g);
    CHECK(g.objective == solve_exact(p).objective);
  }
}

TEST_CASE("solve_exact is monotone in the budget and deterministic") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    BayProblem p = fixtures::random_problem(rng);
    p.total_bays = p.total_min();
    double prev = -1e300;
    for (int step = 0; step < 8; ++step) {
      const BayAllocation a = solve_exact(p);
      CHECK(a.objective >= prev);
      prev = a.objective;
      const BayAllocation again = solve_exact(p);
      CHECK(again.objective == a.objective);
      for (std::size_t i = 0; i < a.pogs.size(); ++i)
        CHECK(again.pogs[i].bays == a.pogs[i].bays);
      p.total_bays += Bays(1, 2);
    }
  }
}

TEST_CASE("strictly increasing values saturate the budget") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    BayProblem p = fixtures::random_problem(rng);
    Bays max_total{0}, max_step{0};
    for (PogSpec &spec : p.pogs) {
      std::map<Bays, double> v;
      double acc = 0;
      for (Bays y = spec.min_alloc; y <= spec.max_alloc; y += spec.multiple)
        v[y] = (acc += 1.0 + static_cast<double>(rng() % 5));
      spec.value_fn = BayValueFunction::tabulated(v);
      max_total += spec.max_alloc;
      max_step = std::max(max_step, spec.multiple);
    }
    if (max_total < p.total_bays)
      continue;
    const BayAllocation a = solve_exact(p);
    CHECK(a.slack < max_step);
  }
}
