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

#ifndef PWLSHIP_DP_HPP
#define PWLSHIP_DP_HPP

#include <optional>
#include <vector>

#include "pwlship/metric.hpp"
#include "pwlship/model.hpp"

namespace pwlship {

enum class SolveStatus { Solved, Infeasible };

struct DpOptions {
  bool integer_mode = false;
  bool force_empty_end = false;  // restrict the terminal load to q_n = 0
  std::vector<char> mandatory;   // size n or empty
  std::vector<char> excluded;    // size n or empty; never nodes 1 or n
};

struct DpResult {
  SolveStatus status = SolveStatus::Infeasible;
  Solution solution;
  // V_i per node; empty function = node unreachable/excluded.
  std::vector<PwlFunction> value_functions;
  // Optimum of the recursion in the weights it was run with (differs from
  // solution.objective only for weighted runs).
  double dp_value = 0.0;
};

// The duration-free dynamic program (recurrence over envelopes and
// superpositions).  Mandatory customers remove the arcs that skip them;
// excluded customers are dropped from the data.
DpResult solve_no_duration(const Instance& inst, const DpOptions& opts = {});

// Same recursion on caller-supplied arc weights (the Lagrangian's
// c + lambda*t, possibly closure-repaired).  vias, when given, expands
// backtracked arcs into the interior nodes of the winning path, which are
// then visited with y = 0.
DpResult solve_no_duration_weighted(const Instance& inst,
                                    const DpOptions& opts,
                                    const WeightFn& weight,
                                    const Closure* vias);

// One duration class of a budgeted value function: `fn` is valid for all
// budgets in [threshold, next threshold).
struct BudgetPair {
  double threshold = 0.0;
  PwlFunction fn;
};

struct BudgetedValueFunction {
  std::vector<BudgetPair> pairs;  // thresholds strictly increasing

  // Value function for the largest threshold <= budget; nullptr if none.
  const PwlFunction* at_budget(double budget) const;
};

struct Dp3dResult {
  SolveStatus status = SolveStatus::Infeasible;
  Solution solution;
  std::vector<BudgetedValueFunction> tables;
};

// The duration-constrained dynamic program (DP3d): budget-indexed families
// of value functions with whole-function dominance pruning between budget
// classes.  Non-metric data routes between nodes along (cost,time) Pareto
// paths whose interior nodes are priced as y = 0 visits.
Dp3dResult solve_with_duration(const Instance& inst,
                               const DpOptions& opts = {});

}  // namespace pwlship

#endif  // PWLSHIP_DP_HPP
