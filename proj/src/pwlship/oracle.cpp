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

#include "pwlship/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pwlship {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool instance_integral(const Instance& inst) {
  if (!is_integral(inst.qmax)) return false;
  for (const PwlFunction& f : inst.profit) {
    for (const Segment& s : f.segments()) {
      if (!is_integral(s.lo) || !is_integral(s.hi)) return false;
    }
  }
  return true;
}

// Exhaustive search of integer transfers along a fixed subsequence via a
// small table over integer loads.
struct SubseqSearch {
  const Instance& inst;
  const std::vector<int>& visits;
  int qcap;
  // cost[k][q]: best cost of the first k+1 visits ending with load q.
  std::vector<std::vector<double>> cost;
  std::vector<std::vector<int>> prev_load;

  explicit SubseqSearch(const Instance& i, const std::vector<int>& v)
      : inst(i), visits(v), qcap(static_cast<int>(std::floor(i.qmax))) {}

  bool run() {
    const std::size_t m = visits.size();
    cost.assign(m, std::vector<double>(qcap + 1, kInf));
    prev_load.assign(m, std::vector<int>(qcap + 1, -1));
    for (std::size_t k = 0; k < m; ++k) {
      int node = visits[k];
      double arc = 0.0;
      if (k > 0) {
        auto c = inst.cost.get(visits[k - 1], node);
        if (!c) return false;
        arc = *c;
      }
      int lo = static_cast<int>(int_ceil(inst.profit[node].domain_min()));
      int hi = static_cast<int>(int_floor(inst.profit[node].domain_max()));
      for (int y = lo; y <= hi; ++y) {
        auto fy = inst.profit[node].evaluate(y);
        if (!fy) continue;
        if (k == 0) {
          if (y < 0 || y > qcap) continue;
          double v = *fy;
          if (v < cost[0][y]) cost[0][y] = v;
          continue;
        }
        for (int q = 0; q <= qcap; ++q) {
          if (cost[k - 1][q] >= kInf) continue;
          int nq = q + y;
          if (nq < 0 || nq > qcap) continue;
          double v = cost[k - 1][q] + arc + *fy;
          if (v < cost[k][nq] - 1e-12) {
            cost[k][nq] = v;
            prev_load[k][nq] = q;
          }
        }
      }
    }
    return true;
  }

  std::optional<std::pair<double, std::vector<double>>> best(
      bool force_empty_end) const {
    const std::size_t m = visits.size();
    int best_q = -1;
    double best_v = kInf;
    for (int q = 0; q <= qcap; ++q) {
      if (force_empty_end && q != 0) continue;
      if (cost[m - 1][q] < best_v - 1e-12) {
        best_v = cost[m - 1][q];
        best_q = q;
      }
    }
    if (best_q < 0) return std::nullopt;
    std::vector<double> y(inst.n, 0.0);
    int q = best_q;
    for (std::size_t k = m; k-- > 1;) {
      int pq = prev_load[k][q];
      y[visits[k]] = q - pq;
      q = pq;
    }
    y[visits[0]] = q;
    return std::make_pair(best_v, std::move(y));
  }
};

// Fractional fallback: depth-first product over per-node grids.
struct GridSearch {
  const Instance& inst;
  const std::vector<int>& visits;
  double grid;
  bool force_empty_end;
  double best = kInf;
  std::vector<double> best_y;
  std::vector<double> y;

  GridSearch(const Instance& i, const std::vector<int>& v, double g,
             bool force)
      : inst(i), visits(v), grid(g), force_empty_end(force),
        y(i.n, 0.0) {}

  void dfs(std::size_t k, double load, double acc) {
    if (k == visits.size()) {
      if (force_empty_end && std::fabs(load) > kEps) return;
      if (acc < best - 1e-12) {
        best = acc;
        best_y = y;
      }
      return;
    }
    int node = visits[k];
    double arc = 0.0;
    if (k > 0) {
      auto c = inst.cost.get(visits[k - 1], node);
      if (!c) return;
      arc = *c;
    }
    const PwlFunction& f = inst.profit[node];
    std::vector<double> candidates;
    for (double v = f.domain_min(); v <= f.domain_max() + kEps; v += grid) {
      candidates.push_back(v);
    }
    for (const Segment& s : f.segments()) {
      candidates.push_back(s.lo);
      candidates.push_back(s.hi);
    }
    for (double cand : candidates) {
      auto fy = f.evaluate(cand);
      if (!fy) continue;
      double nl = load + cand;
      if (nl < -kEps || nl > inst.qmax + kEps) continue;
      y[node] = cand;
      dfs(k + 1, nl, acc + arc + *fy);
      y[node] = 0.0;
    }
  }
};

}  // namespace

OracleResult brute_force(const Instance& inst, const OracleOptions& opts) {
  const int n = inst.n;
  if (n > 16) throw std::invalid_argument("oracle limited to small n");
  bool integral = instance_integral(inst);
  if (!integral && !opts.grid) {
    throw std::invalid_argument(
        "oracle needs integral data or an explicit grid");
  }

  OracleResult result;
  double best = kInf;
  std::vector<int> best_visits;
  std::vector<double> best_y;

  const int interior = n - 2;
  for (std::uint64_t mask = 0; mask < (1ull << interior); ++mask) {
    std::vector<int> visits;
    visits.push_back(0);
    bool allowed = true;
    for (int b = 0; b < interior; ++b) {
      bool in = mask & (1ull << b);
      if (in && b + 1 < (int)opts.excluded.size() && opts.excluded[b + 1]) {
        allowed = false;
      }
      if (!in && b + 1 < (int)opts.mandatory.size() && opts.mandatory[b + 1]) {
        allowed = false;
      }
      if (in) visits.push_back(b + 1);
    }
    if (!allowed) continue;
    visits.push_back(n - 1);

    bool arcs_ok = true;
    double duration = 0.0;
    for (std::size_t k = 1; k < visits.size(); ++k) {
      auto c = inst.cost.get(visits[k - 1], visits[k]);
      auto t = inst.time.get(visits[k - 1], visits[k]);
      if (!c || !t) {
        arcs_ok = false;
        break;
      }
      duration += *t;
    }
    if (!arcs_ok) continue;
    if (opts.respect_tmax && inst.tmax &&
        duration > *inst.tmax + kEps * std::max(1.0, *inst.tmax)) {
      continue;
    }

    std::optional<std::pair<double, std::vector<double>>> found;
    if (integral && !opts.grid) {
      SubseqSearch search(inst, visits);
      if (!search.run()) continue;
      found = search.best(opts.force_empty_end);
    } else {
      GridSearch search(inst, visits, *opts.grid, opts.force_empty_end);
      search.dfs(0, 0.0, 0.0);
      if (search.best < kInf) {
        found = std::make_pair(search.best, search.best_y);
      }
    }
    if (!found) continue;
    double v = found->first;
    bool improves = v < best - 1e-9;
    bool ties = std::fabs(v - best) <= 1e-9;
    if (improves || (ties && visits < best_visits)) {
      best = std::min(best, v);
      best_visits = visits;
      best_y = std::move(found->second);
    }
  }

  if (best_visits.empty()) return result;
  result.feasible = true;
  result.solution.visits = best_visits;
  result.solution.y = best_y;
  finalize_solution(inst, result.solution);
  result.solution.method = "oracle";
  return result;
}

LswrcOracleResult brute_force_lswrc(const LotSizingInstance& ls) {
  const int n = ls.n;
  if (n > 10) throw std::invalid_argument("lswrc oracle limited to small n");
  for (int i = 0; i < n; ++i) {
    if (!is_integral(ls.demand[i])) {
      throw std::invalid_argument("lswrc oracle needs integral demands");
    }
    for (const Segment& s : ls.prod_cost[i].segments()) {
      if (!is_integral(s.lo) || !is_integral(s.hi)) {
        throw std::invalid_argument("lswrc oracle needs integral bounds");
      }
    }
  }
  const int qcap = static_cast<int>(std::floor(ls.qmax));

  LswrcOracleResult result;
  double best = kInf;
  std::optional<ProductionPlan> best_plan;

  const int interior = n - 2;
  for (std::uint64_t mask = 0; mask < (1ull << interior); ++mask) {
    std::vector<int> chain;
    chain.push_back(0);
    for (int b = 0; b < interior; ++b) {
      if (mask & (1ull << b)) chain.push_back(b + 1);
    }
    chain.push_back(n - 1);

    double setup_cost = 0.0, setup_resource = 0.0;
    bool ok = true;
    for (std::size_t k = 1; k < chain.size(); ++k) {
      auto c = ls.cost.get(chain[k - 1], chain[k]);
      auto t = ls.time.get(chain[k - 1], chain[k]);
      if (!c || !t) {
        ok = false;
        break;
      }
      setup_cost += *c;
      setup_resource += *t;
    }
    if (!ok) continue;
    if (ls.tmax && setup_resource >
                       *ls.tmax + kEps * std::max(1.0, *ls.tmax)) {
      continue;
    }

    // Inventory table over periods; off-chain periods run the default lot
    // and leave the inventory level unchanged.
    std::vector<char> on_chain(n, 0);
    for (int i : chain) on_chain[i] = 1;
    std::vector<double> cost(qcap + 1, kInf);
    std::vector<std::vector<int>> prev(n, std::vector<int>(qcap + 1, -1));
    cost[0] = 0.0;
    for (int i = 0; i < n; ++i) {
      std::vector<double> next(qcap + 1, kInf);
      if (!on_chain[i]) {
        for (int q = 0; q <= qcap; ++q) {
          if (cost[q] >= kInf) continue;
          next[q] = cost[q] + ls.holding[i] * q;
          prev[i][q] = q;
        }
      } else {
        int lo = static_cast<int>(int_ceil(ls.bound_lo(i)));
        int hi = static_cast<int>(int_floor(ls.bound_hi(i)));
        int d = static_cast<int>(std::llround(ls.demand[i]));
        for (int y = lo; y <= hi; ++y) {
          auto fy = ls.prod_cost[i].evaluate(y);
          if (!fy) continue;
          for (int q = 0; q <= qcap; ++q) {
            if (cost[q] >= kInf) continue;
            int nq = q + y - d;
            if (nq < 0 || nq > qcap) continue;
            double v = cost[q] + *fy + ls.holding[i] * nq;
            if (v < next[nq] - 1e-12) {
              next[nq] = v;
              prev[i][nq] = q;
            }
          }
        }
      }
      cost = std::move(next);
    }

    for (int q = 0; q <= qcap; ++q) {
      if (cost[q] >= kInf) continue;
      double total = cost[q] + setup_cost;
      if (total < best - 1e-9 ||
          (std::fabs(total - best) <= 1e-9 && best_plan &&
           chain < best_plan->chain)) {
        // Reconstruct the plan.
        ProductionPlan plan;
        plan.chain = chain;
        plan.y = ls.demand;
        plan.inventory.assign(n, 0.0);
        int cur = q;
        std::vector<int> levels(n, 0);
        for (int i = n - 1; i >= 0; --i) {
          levels[i] = cur;
          cur = prev[i][cur];
        }
        for (int i = 0; i < n; ++i) {
          int before = (i == 0) ? 0 : levels[i - 1];
          plan.inventory[i] = levels[i];
          if (on_chain[i]) {
            plan.y[i] = levels[i] - before + ls.demand[i];
          }
        }
        plan.setup_cost = setup_cost;
        plan.setup_resource = setup_resource;
        for (int i : chain) {
          plan.production_cost += *ls.prod_cost[i].evaluate(plan.y[i]);
        }
        for (int i = 0; i < n; ++i) {
          plan.holding_cost += ls.holding[i] * plan.inventory[i];
        }
        plan.total_cost =
            plan.setup_cost + plan.production_cost + plan.holding_cost;
        best = std::min(best, total);
        best_plan = std::move(plan);
      }
    }
  }

  if (!best_plan) return result;
  result.feasible = true;
  result.plan = *best_plan;
  return result;
}

}  // namespace pwlship
