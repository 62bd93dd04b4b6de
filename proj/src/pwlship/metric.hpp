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

#ifndef PWLSHIP_METRIC_HPP
#define PWLSHIP_METRIC_HPP

#include <functional>
#include <optional>
#include <vector>

#include "pwlship/model.hpp"

namespace pwlship {

// Arc weight callback: nullopt marks a forbidden arc.
using WeightFn = std::function<std::optional<double>(int, int)>;

struct ClosedPath {
  double weight = 0.0;
  std::vector<int> via;  // interior nodes, in route order
};

struct Closure {
  int n = 0;
  // entry (i,j), i<j: min-weight forward path; nullopt = unreachable.
  std::vector<std::vector<std::optional<ClosedPath>>> path;

  std::optional<double> weight(int i, int j) const {
    if (!path[i][j]) return std::nullopt;
    return path[i][j]->weight;
  }
};

// Min-total-weight forward paths for every pair i<j over the forward DAG,
// excluding forbidden arcs.  Ties keep the lexicographically smallest via
// sequence.  Output weights satisfy the triangle inequality over reachable
// pairs.  node_cost, when given, adds a pass-through charge for every
// interior node of a path.
Closure metric_closure(int n, const WeightFn& weight,
                       const std::vector<double>* node_cost = nullptr);

struct ParetoPath {
  double cost = 0.0;
  double time = 0.0;
  std::vector<int> via;
};

// Per ordered pair (i,j): all (cost,time) non-dominated forward paths.
// Weak dominance; among equal (cost,time) the lexicographically smallest
// via sequence survives.
class ParetoPathSet {
 public:
  explicit ParetoPathSet(int n);
  const std::vector<ParetoPath>& paths(int i, int j) const {
    return paths_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::vector<ParetoPath>& mutable_paths(int i, int j) {
    return paths_[static_cast<std::size_t>(i) * n_ + j];
  }
  int n() const { return n_; }

 private:
  int n_ = 0;
  std::vector<std::vector<ParetoPath>> paths_;
};

ParetoPathSet pareto_paths(const Instance& inst);

// Same label algebra with per-node pass-through penalties added to the
// cost component (used by the solvers so that routing through a node is
// priced like visiting it with y = 0).
ParetoPathSet pareto_paths_with_node_costs(
    const Instance& inst, const std::vector<double>& node_cost,
    const std::vector<char>& usable);

// Inserts p into a Pareto frontier, dropping dominated entries.  Returns
// true when p survives.
bool pareto_insert(std::vector<ParetoPath>& frontier, ParetoPath p);

}  // namespace pwlship

#endif  // PWLSHIP_METRIC_HPP
