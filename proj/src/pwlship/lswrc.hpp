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

#ifndef PWLSHIP_LSWRC_HPP
#define PWLSHIP_LSWRC_HPP

#include <optional>
#include <string>
#include <vector>

#include "pwlship/model.hpp"

namespace pwlship {

// Lot sizing with requalification costs.  Periods play the role of route
// nodes: a period on the setup chain may produce any y_i in [a_i, b_i];
// a period off the chain runs the default lot-for-lot quantity d_i, which
// needs no setup and carries no decision cost.  Setup cost c_ij and
// resource t_ij accrue between consecutive chain periods and may grow
// with idle time (requalification), so the triangle inequality usually
// fails.
struct LotSizingInstance {
  int n = 0;
  std::vector<double> demand;
  std::vector<double> holding;
  std::vector<PwlFunction> prod_cost;  // f_i on [a_i, b_i]
  ArcMatrix cost;                      // setup costs
  ArcMatrix time;                      // setup resource (defaults to cost)
  double qmax = 0.0;                   // inventory cap
  std::optional<double> tmax;          // setup-resource budget

  double bound_lo(int i) const { return prod_cost[i].domain_min(); }
  double bound_hi(int i) const { return prod_cost[i].domain_max(); }

  std::vector<std::string> validate_instance() const;
};

struct Reduction {
  Instance instance;
  double offset = 0.0;  // reduced objective + offset = LSwRC cost
  std::vector<double> suffix_holding;  // H_{i,n}
  std::vector<std::string> flags;      // e.g. d_i outside [a_i, b_i]
};

// The holding-cost conversion plus per-period substitution
// f'_i(y') = f_i(y' + d_i) + H_{i,n} * y' on [a_i - d_i, b_i - d_i];
// costs, resource, Q_max and T_max carry over unchanged.
Reduction reduce_to_areltp(const LotSizingInstance& ls);

// A production plan in LSwRC terms.
struct ProductionPlan {
  std::vector<int> chain;        // setup chain, always contains 1 and n
  std::vector<double> y;         // production per period (d_i off-chain)
  std::vector<double> inventory; // q_i after each period
  double total_cost = 0.0;       // setups + chain production costs + holding
  double setup_cost = 0.0;
  double production_cost = 0.0;
  double holding_cost = 0.0;
  double setup_resource = 0.0;
};

// Maps a reduced-instance solution back to production quantities
// (y = y' + d on the chain, y = d off it) and re-evaluates the plan
// directly in LSwRC terms.
ProductionPlan map_back(const LotSizingInstance& ls, const Solution& reduced);

// Cost of the lot-for-lot baseline: sum f_i(d_i) plus consecutive setups.
// Throws std::runtime_error("L4L infeasible") when some demanded lot is
// outside its production bounds.
double l4l_value(const LotSizingInstance& ls);

struct SavingsDecomposition {
  double dz = 0.0;        // (Z_l4l - Z*) / Z_l4l
  double dz_prod = 0.0;   // production savings
  double dz_setup = 0.0;  // extra setup spending
  double dz_inv = 0.0;    // inventory spending
  double z_l4l = 0.0;
  double z_opt = 0.0;
};

// Relative savings against lot-for-lot, split per the production/setup/
// inventory decomposition; dz = dz_prod - dz_setup - dz_inv exactly.
// Throws std::runtime_error on Z_l4l = 0.
SavingsDecomposition savings_decomposition(const LotSizingInstance& ls,
                                           const Solution& reduced_optimum);

}  // namespace pwlship

#endif  // PWLSHIP_LSWRC_HPP
