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

#ifndef PWLSHIP_LAGRANGIAN_HPP
#define PWLSHIP_LAGRANGIAN_HPP

#include <optional>
#include <vector>

#include "pwlship/dp.hpp"
#include "pwlship/model.hpp"

namespace pwlship {

struct DualEvaluation {
  double lambda = 0.0;
  double value = 0.0;   // L(lambda), a lower bound on the constrained optimum
  Solution primal;      // optimizer of the relaxed problem, via arcs expanded
  double slack = 0.0;   // T_max - primal duration; >= 0 means primal feasible
  double relaxed_value = 0.0;  // optimum of the lambda-weighted recursion

  bool feasible() const { return slack >= -kEps * 1e3; }
};

struct LagrangianOptions {
  bool integer_mode = false;
  bool force_empty_end = false;
  std::vector<char> mandatory;
  std::vector<char> excluded;
  double eps = -1.0;     // bracket-width target; < 0 picks the default
  double eps_cs = 1e-6;  // complementary-slackness early-exit threshold
};

struct LambdaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate = false;  // t_1n == T_max: hi is the documented fallback cap
};

struct DualResult {
  SolveStatus status = SolveStatus::Infeasible;
  DualEvaluation best;                 // greatest L found (dual bound)
  std::optional<Solution> feasible_primal;  // upper bound
  std::vector<DualEvaluation> history;      // every evaluation, in order
  bool optimal = false;  // complementary slackness closed the gap
  double bracket_width = 0.0;  // final lambda bracket width
  double eps_used = 0.0;       // the termination target actually applied
};

// Evaluates L(lambda): the duration-free DP on arc weights c + lambda*t,
// closure-repaired first when the instance is non-metric (pass-through
// nodes priced at f(0)).  value = -lambda*T_max + relaxed optimum.
// Returns nullopt when the relaxed problem is infeasible.
std::optional<DualEvaluation> evaluate_dual(const Instance& inst,
                                            double lambda,
                                            const LagrangianOptions& opts);

// [0, (c_1n - L(0)) / (T_max - t_1n)] with the direct trip replaced by the
// min-cost / min-time 1->n paths when the data is non-metric or restricted.
// Throws std::runtime_error when even the fastest route exceeds T_max.
LambdaInterval initial_interval(const Instance& inst,
                                const LagrangianOptions& opts);

// The tangent-intersection dual search: keeps an infeasible-left /
// feasible-right bracket, picks the intersection of the two tangents (with
// a bisection fallback when it escapes the bracket), stops early on
// complementary slackness and otherwise when the bracket is narrower than
// eps.
DualResult solve_dual(const Instance& inst, const LagrangianOptions& opts);

// Fastest 1->n route in the restricted DAG (time weights), with its visits.
std::optional<std::pair<double, std::vector<int>>> min_time_route(
    const Instance& inst, const std::vector<char>& mandatory,
    const std::vector<char>& excluded);

}  // namespace pwlship

#endif  // PWLSHIP_LAGRANGIAN_HPP
