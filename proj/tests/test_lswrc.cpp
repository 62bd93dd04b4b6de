// Copyright 2026 pwlship contributors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pwlship/bnb.hpp"
#include "pwlship/dp.hpp"
#include "pwlship/instgen.hpp"
#include "pwlship/lswrc.hpp"
#include "pwlship/oracle.hpp"
#include "testutil.hpp"

using namespace pwlship;

namespace {

LotSizingInstance small_lswrc(std::uint64_t seed, int n) {
  LswrcGenConfig cfg;
  return generate_lswrc(n, SizeClass::Small, SizeClass::Medium, seed, cfg);
}

}  // namespace

TEST_CASE("reduction with zero holding shifts the cost left by the demand") {
  LotSizingInstance ls;
  ls.n = 2;
  ls.qmax = 10;
  ls.demand = {3, 2};
  ls.holding = {0, 0};
  ls.prod_cost = {PwlFunction::from_breakpoints({{0, 0}, {8, 16}}),
                  PwlFunction::from_breakpoints({{0, 0}, {8, 24}})};
  ls.cost = ArcMatrix(2);
  ls.cost.set(0, 1, 5);
  ls.time = ls.cost;
  Reduction red = reduce_to_areltp(ls);
  CHECK(red.offset == 0.0);
  const PwlFunction& f0 = red.instance.profit[0];
  CHECK(f0.domain_min() == doctest::Approx(-3.0));
  CHECK(f0.domain_max() == doctest::Approx(5.0));
  for (double y = -3; y <= 5; y += 0.5) {
    CHECK(*f0.evaluate(y) == doctest::Approx(*ls.prod_cost[0].evaluate(y + 3)));
  }
}

TEST_CASE("holding enters through the suffix sums") {
  // d = [2,3], h = [1,1]: H = [2,1], f'_1(y') = f_1(y'+2) + 2 y'.
  LotSizingInstance ls;
  ls.n = 2;
  ls.qmax = 10;
  ls.demand = {2, 3};
  ls.holding = {1, 1};
  ls.prod_cost = {PwlFunction::from_breakpoints({{0, 0}, {9, 18}}),
                  PwlFunction::from_breakpoints({{0, 0}, {9, 18}})};
  ls.cost = ArcMatrix(2);
  ls.cost.set(0, 1, 4);
  ls.time = ls.cost;
  Reduction red = reduce_to_areltp(ls);
  REQUIRE(red.suffix_holding.size() == 2);
  CHECK(red.suffix_holding[0] == doctest::Approx(2.0));
  CHECK(red.suffix_holding[1] == doctest::Approx(1.0));
  for (double yp = -2; yp <= 7; yp += 0.5) {
    double expect = *ls.prod_cost[0].evaluate(yp + 2) + 2.0 * yp;
    CHECK(*red.instance.profit[0].evaluate(yp) == doctest::Approx(expect));
  }
}

TEST_CASE("reduction flags demands outside the production bounds") {
  LotSizingInstance ls;
  ls.n = 2;
  ls.qmax = 10;
  ls.demand = {5, 0};
  ls.holding = {1, 1};
  ls.prod_cost = {PwlFunction::from_breakpoints({{0, 0}, {3, 3}}),  // b < d
                  PwlFunction::from_breakpoints({{0, 0}, {3, 3}})};
  ls.cost = ArcMatrix(2);
  ls.cost.set(0, 1, 4);
  ls.time = ls.cost;
  Reduction red = reduce_to_areltp(ls);
  REQUIRE(!red.flags.empty());
  CHECK(red.flags.front().find("period 1") != std::string::npos);
}

TEST_CASE("lot-for-lot value") {
  LotSizingInstance ls;
  ls.n = 3;
  ls.qmax = 10;
  ls.demand = {1, 1, 1};
  ls.holding = {1, 1, 1};
  // f(d) = 1, 2, 3 at d = 1.
  ls.prod_cost = {PwlFunction::from_breakpoints({{0, 0}, {2, 2}}),
                  PwlFunction::from_breakpoints({{0, 0}, {2, 4}}),
                  PwlFunction::from_breakpoints({{0, 0}, {2, 6}})};
  ls.cost = ArcMatrix(3);
  ls.cost.set(0, 1, 4);
  ls.cost.set(1, 2, 5);
  ls.cost.set(0, 2, 11);
  ls.time = ls.cost;
  CHECK(l4l_value(ls) == doctest::Approx(1 + 2 + 3 + 4 + 5));

  SUBCASE("zero demands cost only the consecutive setups") {
    ls.demand = {0, 0, 0};
    CHECK(l4l_value(ls) == doctest::Approx(9.0));
  }
  SUBCASE("demand outside the bounds is infeasible") {
    ls.demand = {3, 1, 1};
    CHECK_THROWS_AS(l4l_value(ls), std::runtime_error);
  }
}

TEST_CASE("reduce-then-solve equals the direct enumeration") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    int n = 3 + static_cast<int>(seed % 4);
    LotSizingInstance ls = small_lswrc(seed, n);
    Reduction red = reduce_to_areltp(ls);
    REQUIRE(red.flags.empty());

    BnbOptions opts;
    opts.seed = seed;
    opts.integer_mode = true;
    BnbResult exact = solve_bbdp(red.instance, opts);
    LswrcOracleResult oracle = brute_force_lswrc(ls);
    REQUIRE(exact.status == (oracle.feasible ? SolveStatus::Solved
                                             : SolveStatus::Infeasible));
    if (!oracle.feasible) continue;
    ProductionPlan plan = map_back(ls, exact.best);
    CHECK(plan.total_cost ==
          doctest::Approx(oracle.plan.total_cost).epsilon(1e-12));
    // The reduced objective is the LSwRC cost with offset zero.
    CHECK(exact.best.objective ==
          doctest::Approx(plan.total_cost).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked >= 55);
}

TEST_CASE("mapped-back plans satisfy the inventory constraints") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    LotSizingInstance ls = small_lswrc(seed, 5);
    Reduction red = reduce_to_areltp(ls);
    DpOptions d;
    d.integer_mode = true;
    DpResult res = solve_no_duration(red.instance, d);
    if (res.status != SolveStatus::Solved) continue;
    ProductionPlan plan = map_back(ls, res.solution);
    double q = 0.0;
    for (int i = 0; i < ls.n; ++i) {
      q += plan.y[i] - ls.demand[i];
      CHECK(q >= -1e-9);
      CHECK(q <= ls.qmax + 1e-9);
      CHECK(plan.inventory[i] == doctest::Approx(q));
    }
    // Off-chain periods run the default lot.
    std::vector<bool> on_chain(ls.n, false);
    for (int i : plan.chain) on_chain[i] = true;
    for (int i = 0; i < ls.n; ++i) {
      if (!on_chain[i]) CHECK(plan.y[i] == doctest::Approx(ls.demand[i]));
    }
  }
}

TEST_CASE("savings decomposition identity and base cases") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    LotSizingInstance ls = small_lswrc(seed, 6);
    Reduction red = reduce_to_areltp(ls);
    BnbOptions opts;
    opts.integer_mode = true;
    BnbResult res = solve_bbdp(red.instance, opts);
    REQUIRE(res.status == SolveStatus::Solved);
    SavingsDecomposition dec = savings_decomposition(ls, res.best);
    CHECK(dec.dz ==
          doctest::Approx(dec.dz_prod - dec.dz_setup - dec.dz_inv)
              .epsilon(1e-9));
    CHECK(dec.z_opt <= dec.z_l4l + 1e-9);  // the optimum never loses to L4L

    // Components recomputed from raw plan quantities.
    ProductionPlan plan = map_back(ls, res.best);
    double l4l_prod = 0.0;
    for (int i = 0; i < ls.n; ++i) {
      l4l_prod += *ls.prod_cost[i].evaluate(ls.demand[i]);
    }
    double consec = 0.0;
    for (int i = 0; i + 1 < ls.n; ++i) consec += ls.cost.at(i, i + 1);
    CHECK(dec.dz_prod ==
          doctest::Approx((l4l_prod - plan.production_cost) / dec.z_l4l));
    CHECK(dec.dz_setup ==
          doctest::Approx((plan.setup_cost - consec) / dec.z_l4l));
    CHECK(dec.dz_inv == doctest::Approx(plan.holding_cost / dec.z_l4l));
  }
}

TEST_CASE("the L4L plan itself decomposes to zero savings") {
  LotSizingInstance ls = small_lswrc(7, 4);
  // Encode L4L as a reduced solution: visit everything with y' = 0.
  Solution l4l;
  for (int i = 0; i < ls.n; ++i) l4l.visits.push_back(i);
  l4l.y.assign(ls.n, 0.0);
  Reduction red = reduce_to_areltp(ls);
  finalize_solution(red.instance, l4l);
  SavingsDecomposition dec = savings_decomposition(ls, l4l);
  CHECK(dec.dz == doctest::Approx(0.0));
  CHECK(dec.dz_prod == doctest::Approx(0.0));
  CHECK(dec.dz_setup == doctest::Approx(0.0));
  CHECK(dec.dz_inv == doctest::Approx(0.0));
}

TEST_CASE("L4L feasibility requires enough setup budget") {
  // With theta = 1 the L4L chain always fits the budget.
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    LotSizingInstance ls = small_lswrc(seed, 6);
    double consec = 0.0;
    for (int i = 0; i + 1 < ls.n; ++i) consec += ls.time.at(i, i + 1);
    double max_t = 0.0;
    for (int i = 0; i < ls.n; ++i) {
      for (int j = i + 1; j < ls.n; ++j) {
        max_t = std::max(max_t, ls.time.at(i, j));
      }
    }
    double tmax_theta1 = max_t + consec;
    CHECK(consec <= tmax_theta1 + 1e-9);
  }
}
