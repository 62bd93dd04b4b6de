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

#include "pwlship/metric.hpp"

#include <algorithm>

namespace pwlship {

namespace {

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Closure metric_closure(int n, const WeightFn& weight,
                       const std::vector<double>* node_cost) {
  Closure c;
  c.n = n;
  c.path.assign(n, std::vector<std::optional<ClosedPath>>(n));
  for (int i = 0; i < n; ++i) {
    // Forward DP from i: nodes are topologically ordered by index.
    for (int j = i + 1; j < n; ++j) {
      std::optional<ClosedPath> best;
      if (auto w = weight(i, j)) {
        best = ClosedPath{*w, {}};
      }
      for (int k = i + 1; k < j; ++k) {
        if (!c.path[i][k]) continue;
        auto w = weight(k, j);
        if (!w) continue;
        double pass = node_cost ? (*node_cost)[static_cast<std::size_t>(k)]
                                : 0.0;
        double cand = c.path[i][k]->weight + *w + pass;
        if (best && cand > best->weight + kEps * std::max(1.0, std::fabs(best->weight))) {
          continue;
        }
        std::vector<int> via = c.path[i][k]->via;
        via.push_back(k);
        if (!best ||
            cand < best->weight - kEps * std::max(1.0, std::fabs(best->weight)) ||
            (nearly_equal(cand, best->weight) && lex_less(via, best->via))) {
          best = ClosedPath{std::min(cand, best ? best->weight : cand),
                            std::move(via)};
        }
      }
      c.path[i][j] = std::move(best);
    }
  }
  return c;
}

ParetoPathSet::ParetoPathSet(int n)
    : n_(n), paths_(static_cast<std::size_t>(n) * n) {}

bool pareto_insert(std::vector<ParetoPath>& frontier, ParetoPath p) {
  for (const ParetoPath& q : frontier) {
    bool cost_le = q.cost <= p.cost + kEps * std::max(1.0, std::fabs(p.cost));
    bool time_le = q.time <= p.time + kEps * std::max(1.0, std::fabs(p.time));
    if (cost_le && time_le) {
      bool cost_eq = nearly_equal(q.cost, p.cost);
      bool time_eq = nearly_equal(q.time, p.time);
      if (!(cost_eq && time_eq)) return false;  // strictly dominated
      // Equal pair: keep the lexicographically smallest via sequence.
      if (!lex_less(p.via, q.via)) return false;
    }
  }
  std::erase_if(frontier, [&](const ParetoPath& q) {
    bool cost_ge = p.cost <= q.cost + kEps * std::max(1.0, std::fabs(q.cost));
    bool time_ge = p.time <= q.time + kEps * std::max(1.0, std::fabs(q.time));
    if (!(cost_ge && time_ge)) return false;
    if (nearly_equal(p.cost, q.cost) && nearly_equal(p.time, q.time)) {
      return lex_less(p.via, q.via);
    }
    return true;
  });
  frontier.push_back(std::move(p));
  std::sort(frontier.begin(), frontier.end(),
            [](const ParetoPath& x, const ParetoPath& y) {
              if (x.cost != y.cost) return x.cost < y.cost;
              if (x.time != y.time) return x.time < y.time;
              return lex_less(x.via, y.via);
            });
  return true;
}

namespace {

ParetoPathSet pareto_impl(const Instance& inst,
                          const std::vector<double>* node_cost,
                          const std::vector<char>* usable) {
  const int n = inst.n;
  ParetoPathSet out(n);
  auto node_ok = [&](int k) {
    return usable == nullptr || (*usable)[static_cast<std::size_t>(k)];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto& frontier = out.mutable_paths(i, j);
      if (inst.cost.has(i, j) && inst.time.has(i, j)) {
        pareto_insert(frontier,
                      ParetoPath{inst.cost.at(i, j), inst.time.at(i, j), {}});
      }
      for (int k = i + 1; k < j; ++k) {
        if (!node_ok(k)) continue;
        if (!inst.cost.has(k, j) || !inst.time.has(k, j)) continue;
        double pass = node_cost ? (*node_cost)[static_cast<std::size_t>(k)]
                                : 0.0;
        for (const ParetoPath& p : out.paths(i, k)) {
          ParetoPath cand;
          cand.cost = p.cost + inst.cost.at(k, j) + pass;
          cand.time = p.time + inst.time.at(k, j);
          cand.via = p.via;
          cand.via.push_back(k);
          pareto_insert(frontier, std::move(cand));
        }
      }
    }
  }
  return out;
}

}  // namespace

ParetoPathSet pareto_paths(const Instance& inst) {
  return pareto_impl(inst, nullptr, nullptr);
}

ParetoPathSet pareto_paths_with_node_costs(
    const Instance& inst, const std::vector<double>& node_cost,
    const std::vector<char>& usable) {
  return pareto_impl(inst, &node_cost, &usable);
}

}  // namespace pwlship
