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

#include "pwlship/lswrc.hpp"

#include <cmath>
#include <stdexcept>

namespace pwlship {

std::vector<std::string> LotSizingInstance::validate_instance() const {
  std::vector<std::string> out;
  if (n < 2) out.push_back("lot sizing instance needs at least 2 periods");
  if ((int)demand.size() != n || (int)holding.size() != n ||
      (int)prod_cost.size() != n) {
    out.push_back("array sizes differ from n");
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (demand[i] < 0) {
      out.push_back("negative demand in period " + std::to_string(i + 1));
    }
    if (holding[i] < 0) {
      out.push_back("negative holding cost in period " + std::to_string(i + 1));
    }
    if (prod_cost[i].empty()) {
      out.push_back("empty production cost in period " + std::to_string(i + 1));
    }
  }
  if (qmax < 0) out.push_back("negative inventory cap");
  return out;
}

Reduction reduce_to_areltp(const LotSizingInstance& ls) {
  Reduction red;
  red.suffix_holding.assign(ls.n, 0.0);
  double acc = 0.0;
  for (int i = ls.n - 1; i >= 0; --i) {
    acc += ls.holding[i];
    red.suffix_holding[i] = acc;
  }

  Instance inst;
  inst.n = ls.n;
  inst.cost = ls.cost;
  inst.time = ls.time;
  inst.qmax = ls.qmax;
  inst.tmax = ls.tmax;
  inst.profit.resize(ls.n);
  for (int i = 0; i < ls.n; ++i) {
    double d = ls.demand[i];
    double h = red.suffix_holding[i];
    std::vector<Segment> segs;
    for (const Segment& s : ls.prod_cost[i].segments()) {
      Segment t;
      t.lo = s.lo - d;
      t.hi = s.hi - d;
      // f'(y') = f(y' + d) + H*y' = (k + H) y' + (k d + c0)
      t.slope = s.slope + h;
      t.intercept = s.slope * d + s.intercept;
      segs.push_back(t);
    }
    inst.profit[i] = PwlFunction(std::move(segs));
    if (!inst.profit[i].evaluate(0.0)) {
      red.flags.push_back("period " + std::to_string(i + 1) +
                          ": demand outside production bounds, no default lot");
    }
  }
  inst.refresh_integrality();
  auto [cm, tm] = inst.verify_metric_flags();
  inst.cost_metric = cm;
  inst.time_metric = tm;
  red.instance = std::move(inst);
  red.offset = 0.0;
  return red;
}

ProductionPlan map_back(const LotSizingInstance& ls, const Solution& reduced) {
  ProductionPlan plan;
  plan.chain = reduced.visits;
  plan.y = ls.demand;  // off-chain periods run the default lot
  std::vector<bool> on_chain(ls.n, false);
  for (int i : reduced.visits) on_chain[i] = true;
  for (int i : reduced.visits) {
    plan.y[i] = reduced.y[i] + ls.demand[i];
  }

  plan.inventory.assign(ls.n, 0.0);
  double q = 0.0;
  for (int i = 0; i < ls.n; ++i) {
    q += plan.y[i] - ls.demand[i];
    plan.inventory[i] = q;
  }

  for (std::size_t k = 1; k < plan.chain.size(); ++k) {
    int a = plan.chain[k - 1], b = plan.chain[k];
    if (!ls.cost.has(a, b) || !ls.time.has(a, b)) {
      throw std::invalid_argument("plan uses undefined setup pair");
    }
    plan.setup_cost += ls.cost.at(a, b);
    plan.setup_resource += ls.time.at(a, b);
  }
  for (int i : plan.chain) {
    auto v = ls.prod_cost[i].evaluate(plan.y[i]);
    if (!v) {
      throw std::invalid_argument("production outside bounds in period " +
                                  std::to_string(i + 1));
    }
    plan.production_cost += *v;
  }
  for (int i = 0; i < ls.n; ++i) {
    plan.holding_cost += ls.holding[i] * plan.inventory[i];
  }
  plan.total_cost = plan.setup_cost + plan.production_cost + plan.holding_cost;
  return plan;
}

double l4l_value(const LotSizingInstance& ls) {
  double total = 0.0;
  for (int i = 0; i < ls.n; ++i) {
    auto v = ls.prod_cost[i].evaluate(ls.demand[i]);
    if (!v) throw std::runtime_error("L4L infeasible");
    total += *v;
  }
  for (int i = 0; i + 1 < ls.n; ++i) {
    if (!ls.cost.has(i, i + 1)) throw std::runtime_error("L4L infeasible");
    total += ls.cost.at(i, i + 1);
  }
  return total;
}

SavingsDecomposition savings_decomposition(const LotSizingInstance& ls,
                                           const Solution& reduced_optimum) {
  SavingsDecomposition out;
  out.z_l4l = l4l_value(ls);
  if (std::fabs(out.z_l4l) <= kEps) {
    throw std::runtime_error("savings undefined: Z_L4L is zero");
  }
  ProductionPlan plan = map_back(ls, reduced_optimum);
  out.z_opt = plan.total_cost;

  double l4l_prod = 0.0;
  for (int i = 0; i < ls.n; ++i) {
    l4l_prod += *ls.prod_cost[i].evaluate(ls.demand[i]);
  }
  double l4l_setup = out.z_l4l - l4l_prod;

  out.dz = (out.z_l4l - out.z_opt) / out.z_l4l;
  out.dz_prod = (l4l_prod - plan.production_cost) / out.z_l4l;
  out.dz_setup = (plan.setup_cost - l4l_setup) / out.z_l4l;
  out.dz_inv = plan.holding_cost / out.z_l4l;
  return out;
}

}  // namespace pwlship
