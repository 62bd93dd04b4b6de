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

#include "pwlship/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

namespace pwlship {

namespace {

LagrangianOptions lagrangian_options(const BnbOptions& opts,
                                     const BranchNode& node) {
  LagrangianOptions l;
  l.integer_mode = opts.integer_mode;
  l.force_empty_end = opts.force_empty_end;
  l.mandatory = node.mandatory;
  l.excluded = node.excluded;
  return l;
}

// Duration of a visit sequence using direct arcs; nullopt on a forbidden arc.
std::optional<double> direct_duration(const Instance& inst,
                                      const std::vector<int>& visits) {
  double total = 0.0;
  for (std::size_t k = 1; k < visits.size(); ++k) {
    auto t = inst.time.get(visits[k - 1], visits[k]);
    if (!t) return std::nullopt;
    total += *t;
  }
  return total;
}

// Min-time closure for insertion patching, cached per call site.
Closure time_closure(const Instance& inst, const BranchNode& node) {
  auto excluded = node.excluded;
  WeightFn times = [&inst, &excluded](int j, int i) -> std::optional<double> {
    if (!excluded.empty() && (excluded[j] || excluded[i])) return std::nullopt;
    return inst.time.get(j, i);
  };
  return metric_closure(inst.n, times);
}

// Replaces each consecutive pair by its fastest patch path, so that the
// expanded tour's direct-arc duration is the patched duration.
std::vector<int> expand_by_fastest_paths(const std::vector<int>& visits,
                                         const Closure& c) {
  std::vector<int> out;
  out.push_back(visits.front());
  for (std::size_t k = 1; k < visits.size(); ++k) {
    int a = visits[k - 1], b = visits[k];
    if (c.path[a][b]) {
      for (int v : c.path[a][b]->via) out.push_back(v);
    }
    out.push_back(b);
  }
  return out;
}

}  // namespace

void node_bounds(const Instance& inst, const BnbOptions& opts,
                 BranchNode& node) {
  node.mandatory.resize(inst.n, 0);
  node.excluded.resize(inst.n, 0);

  DualResult dual = solve_dual(inst, lagrangian_options(opts, node));
  if (dual.status != SolveStatus::Solved || !dual.feasible_primal) {
    node.infeasible = true;
    node.lower_bound = std::numeric_limits<double>::infinity();
    node.upper_bound = std::numeric_limits<double>::infinity();
    return;
  }
  node.lower_bound = dual.best.value;

  Solution primal = *dual.feasible_primal;
  node.upper_bound = primal.objective;
  node.ub_solution = primal;

  if (dual.optimal) {
    // Complementary slackness closed the gap: the primal is optimal for
    // this branch.
    node.augmented_tour = primal.visits;
    node.lower_bound = std::min(node.lower_bound, node.upper_bound);
    node.exact = true;
    return;
  }

  // Augment the primal's tour by inserting every absent, non-excluded
  // customer at its a-priori position while the duration limit holds.
  const bool metric = inst.time_metric;
  std::optional<Closure> patch;
  if (!metric) patch = time_closure(inst, node);

  std::vector<int> tour = primal.visits;
  std::vector<char> in_tour(inst.n, 0);
  for (int v : tour) in_tour[v] = 1;
  for (int i = 1; i + 1 < inst.n; ++i) {
    if (in_tour[i] || node.excluded[i]) continue;
    std::vector<int> candidate = tour;
    candidate.insert(
        std::upper_bound(candidate.begin(), candidate.end(), i), i);
    if (!metric) candidate = expand_by_fastest_paths(candidate, *patch);
    auto dur = direct_duration(inst, candidate);
    if (dur && *dur <= *inst.tmax + kEps * std::max(1.0, *inst.tmax)) {
      tour = candidate;
      for (int v : tour) in_tour[v] = 1;
    }
  }
  node.augmented_tour = tour;

  // Best subset of the augmented tour via the duration-free DP.  Under the
  // triangle inequality every subset of a feasible tour stays feasible;
  // otherwise the result is validated and dropped if it breaks the limit.
  DpOptions dp_opts;
  dp_opts.integer_mode = opts.integer_mode;
  dp_opts.force_empty_end = opts.force_empty_end;
  dp_opts.mandatory = node.mandatory;
  dp_opts.excluded.assign(inst.n, 1);
  for (int v : tour) dp_opts.excluded[v] = 0;
  dp_opts.excluded[0] = dp_opts.excluded[inst.n - 1] = 0;

  DpResult sub = solve_no_duration(inst, dp_opts);
  if (sub.status == SolveStatus::Solved &&
      sub.solution.duration <=
          *inst.tmax + kEps * std::max(1.0, *inst.tmax) &&
      sub.solution.objective < node.upper_bound) {
    node.upper_bound = sub.solution.objective;
    node.ub_solution = sub.solution;
  }
  node.lower_bound = std::min(node.lower_bound, node.upper_bound);
}

std::optional<int> pick_branch_customer(const Instance& inst,
                                        const BranchNode& node, Rng& rng) {
  std::vector<char> in_tour(inst.n, 0);
  for (int v : node.augmented_tour) in_tour[v] = 1;
  std::vector<int> candidates;
  for (int i = 1; i + 1 < inst.n; ++i) {
    if (!in_tour[i] && !node.mandatory[i] && !node.excluded[i]) {
      candidates.push_back(i);
    }
  }
  if (candidates.empty()) return std::nullopt;
  auto pick = rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1);
  return candidates[static_cast<std::size_t>(pick)];
}

BnbResult solve_bbdp(const Instance& inst, const BnbOptions& opts) {
  if (!inst.tmax) throw std::invalid_argument("solve_bbdp requires tmax");
  BnbResult result;
  Rng rng(opts.seed);

  BranchNode root;
  root.mandatory.assign(inst.n, 0);
  root.excluded.assign(inst.n, 0);
  node_bounds(inst, opts, root);
  result.nodes_expanded = 1;
  if (root.infeasible) return result;

  result.status = SolveStatus::Solved;
  result.root_dual_bound = root.lower_bound;
  Solution incumbent = *root.ub_solution;

  auto prune_tol = [&](double incumbent_obj) {
    return inst.integral ? 1e-9
                         : 1e-9 * std::max(1.0, std::fabs(incumbent_obj));
  };

  struct QueueEntry {
    BranchNode node;
    long seq;
  };
  auto better = [](const QueueEntry& a, const QueueEntry& b) {
    if (a.node.upper_bound != b.node.upper_bound) {
      return a.node.upper_bound > b.node.upper_bound;  // min-heap on UB
    }
    if (a.node.lower_bound != b.node.lower_bound) {
      return a.node.lower_bound > b.node.lower_bound;
    }
    return a.seq > b.seq;  // FIFO on full ties
  };
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, decltype(better)>
      queue(better);
  long seq = 0;
  if (!root.exact &&
      root.lower_bound < incumbent.objective - prune_tol(incumbent.objective)) {
    queue.push(QueueEntry{std::move(root), seq++});
  }

  while (!queue.empty()) {
    BranchNode node = std::move(queue.top().node);
    queue.pop();
    if (node.lower_bound >=
        incumbent.objective - prune_tol(incumbent.objective)) {
      continue;
    }
    auto pick = pick_branch_customer(inst, node, rng);
    if (!pick) {
      if (node.exact) continue;  // optimum already reflected in the bounds
      // Every undecided customer sits inside the augmented tour but the
      // duration-free subset solve could not certify the branch (possible
      // without the triangle inequality): finish it with the duration DP.
      DpOptions dp_opts;
      dp_opts.integer_mode = opts.integer_mode;
      dp_opts.force_empty_end = opts.force_empty_end;
      dp_opts.mandatory = node.mandatory;
      dp_opts.excluded = node.excluded;
      Dp3dResult exact = solve_with_duration(inst, dp_opts);
      if (exact.status == SolveStatus::Solved &&
          exact.solution.objective <
              incumbent.objective - prune_tol(incumbent.objective)) {
        incumbent = exact.solution;
      }
      continue;
    }

    for (bool include : {true, false}) {
      BranchNode child;
      child.mandatory = node.mandatory;
      child.excluded = node.excluded;
      if (include) {
        child.mandatory[*pick] = 1;
      } else {
        child.excluded[*pick] = 1;
      }
      node_bounds(inst, opts, child);
      ++result.nodes_expanded;
      if (child.infeasible) continue;
      if (child.ub_solution &&
          child.ub_solution->objective <
              incumbent.objective - prune_tol(incumbent.objective)) {
        incumbent = *child.ub_solution;
      }
      if (!child.exact &&
          child.lower_bound <
              incumbent.objective - prune_tol(incumbent.objective)) {
        queue.push(QueueEntry{std::move(child), seq++});
      }
    }
  }

  incumbent.dual_bound = result.root_dual_bound;
  incumbent.nodes_expanded = result.nodes_expanded;
  result.best = std::move(incumbent);
  return result;
}

}  // namespace pwlship
