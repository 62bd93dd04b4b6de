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

#ifndef PWLSHIP_BNB_HPP
#define PWLSHIP_BNB_HPP

#include <optional>
#include <vector>

#include "pwlship/lagrangian.hpp"
#include "pwlship/model.hpp"
#include "pwlship/rng.hpp"

namespace pwlship {

// A solution branch: S = mandatory customers, T = excluded customers.
struct BranchNode {
  std::vector<char> mandatory;  // S
  std::vector<char> excluded;   // T
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::optional<Solution> ub_solution;  // feasible, per model validate
  std::vector<int> augmented_tour;      // tau-bar, including nodes 1 and n
  bool infeasible = false;
  bool exact = false;  // upper bound known optimal for this branch
};

struct BnbOptions {
  std::uint64_t seed = 1;
  bool integer_mode = false;
  bool force_empty_end = false;
};

struct BnbResult {
  SolveStatus status = SolveStatus::Infeasible;
  Solution best;
  double root_dual_bound = 0.0;
  long nodes_expanded = 0;
};

// Fills the node's Lagrangian lower bound and insertion-heuristic upper
// bound.  The upper bound comes from the duration-free DP over the
// augmented tour (feasible by the triangle inequality, or validated and
// patched through shortest paths otherwise).
void node_bounds(const Instance& inst, const BnbOptions& opts,
                 BranchNode& node);

// Candidates are customers outside the augmented tour that are not yet
// decided; one is drawn uniformly at random.  Returns nullopt when the
// node is solved (no candidate remains).
std::optional<int> pick_branch_customer(const Instance& inst,
                                        const BranchNode& node, Rng& rng);

// Best-estimate branch and bound: nodes ordered by lowest upper bound,
// Lagrangian lower bounds, seeded random branching.
BnbResult solve_bbdp(const Instance& inst, const BnbOptions& opts = {});

}  // namespace pwlship

#endif  // PWLSHIP_BNB_HPP
