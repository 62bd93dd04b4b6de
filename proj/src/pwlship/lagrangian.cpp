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

#include "pwlship/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

namespace pwlship {

namespace {

struct ArcFilter {
  std::vector<char> mandatory, excluded;
  const Instance* inst;

  bool allowed(int j, int i) const {
    if (excluded[j] || excluded[i]) return false;
    for (int s = j + 1; s < i; ++s) {
      if (mandatory[s]) return false;
    }
    return true;
  }
};

ArcFilter make_filter(const Instance& inst, const LagrangianOptions& opts) {
  ArcFilter f;
  f.inst = &inst;
  f.mandatory.assign(inst.n, 0);
  f.excluded.assign(inst.n, 0);
  for (int i = 0; i < inst.n && i < (int)opts.mandatory.size(); ++i) {
    f.mandatory[i] = opts.mandatory[i];
  }
  for (int i = 0; i < inst.n && i < (int)opts.excluded.size(); ++i) {
    f.excluded[i] = opts.excluded[i];
  }
  f.excluded[0] = f.excluded[inst.n - 1] = 0;
  f.mandatory[0] = f.mandatory[inst.n - 1] = 0;
  return f;
}

DpOptions dp_options(const LagrangianOptions& opts) {
  DpOptions d;
  d.integer_mode = opts.integer_mode;
  d.force_empty_end = opts.force_empty_end;
  d.mandatory = opts.mandatory;
  d.excluded = opts.excluded;
  return d;
}

std::vector<double> pass_through_costs(const Instance& inst) {
  std::vector<double> node_cost(inst.n, 0.0);
  for (int k = 0; k < inst.n; ++k) {
    auto f0 = inst.profit[k].evaluate(0.0);
    node_cost[k] = f0 ? *f0 : 0.0;
  }
  return node_cost;
}

// Largest multiplier the weighted recursion can take before lambda * time
// products start eating the cost resolution of double comparisons.
double lambda_safe_cap(const Instance& inst) {
  double total_time = 1.0;
  for (int i = 0; i < inst.n; ++i) {
    for (int j = i + 1; j < inst.n; ++j) {
      if (inst.time.has(i, j)) total_time += inst.time.at(i, j);
    }
  }
  return 1e6 / total_time;
}

// Earliest/latest time potentials over the restricted forward DAG.
struct TimePotentials {
  std::vector<double> from_source, to_sink;
  double fastest = std::numeric_limits<double>::infinity();
};

TimePotentials time_potentials(const Instance& inst, const ArcFilter& filter) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  TimePotentials tp;
  tp.from_source.assign(inst.n, kInf);
  tp.to_sink.assign(inst.n, kInf);
  tp.from_source[0] = 0.0;
  for (int j = 1; j < inst.n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (!filter.allowed(i, j) || !inst.time.has(i, j)) continue;
      tp.from_source[j] = std::min(tp.from_source[j],
                                   tp.from_source[i] + inst.time.at(i, j));
    }
  }
  tp.to_sink[inst.n - 1] = 0.0;
  for (int i = inst.n - 2; i >= 0; --i) {
    for (int j = i + 1; j < inst.n; ++j) {
      if (!filter.allowed(i, j) || !inst.time.has(i, j)) continue;
      tp.to_sink[i] = std::min(tp.to_sink[i],
                               tp.to_sink[j] + inst.time.at(i, j));
    }
  }
  tp.fastest = tp.from_source[inst.n - 1];
  return tp;
}

// Cost-optimal solution over the fastest-route sub-DAG: the arcs lying on
// some minimum-time route.  Every route inside it lasts exactly the
// fastest time, so the result is always duration feasible; when the
// fastest time equals T_max it is the exact constrained optimum.
std::optional<DpResult> fastest_subdag_solve(const Instance& inst,
                                             const LagrangianOptions& opts) {
  ArcFilter filter = make_filter(inst, opts);
  TimePotentials tp = time_potentials(inst, filter);
  if (!std::isfinite(tp.fastest)) return std::nullopt;
  double scale = std::max(1.0, tp.fastest);
  WeightFn tight = [&, tp](int i, int j) -> std::optional<double> {
    if (!filter.allowed(i, j)) return std::nullopt;
    if (!inst.cost.has(i, j) || !inst.time.has(i, j)) return std::nullopt;
    double through = tp.from_source[i] + inst.time.at(i, j) + tp.to_sink[j];
    if (through > tp.fastest + kEps * scale) return std::nullopt;
    return inst.cost.at(i, j);
  };
  DpResult res =
      solve_no_duration_weighted(inst, dp_options(opts), tight, nullptr);
  if (res.status != SolveStatus::Solved) return std::nullopt;
  return res;
}

}  // namespace

std::optional<DualEvaluation> evaluate_dual(const Instance& inst,
                                            double lambda,
                                            const LagrangianOptions& opts) {
  if (!inst.tmax) throw std::invalid_argument("evaluate_dual requires tmax");
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  ArcFilter filter = make_filter(inst, opts);

  WeightFn combined = [&](int j, int i) -> std::optional<double> {
    if (!filter.allowed(j, i)) return std::nullopt;
    auto c = inst.cost.get(j, i);
    auto t = inst.time.get(j, i);
    if (!c || !t) return std::nullopt;
    return *c + lambda * *t;
  };

  DpResult dp;
  if (inst.cost_metric && inst.time_metric) {
    dp = solve_no_duration_weighted(inst, dp_options(opts), combined, nullptr);
  } else {
    // The combined weights need not satisfy the triangle inequality;
    // repair them with a shortest-path closure whose pass-through nodes
    // are priced like visits without transfer.
    std::vector<double> node_cost = pass_through_costs(inst);
    Closure closure = metric_closure(inst.n, combined, &node_cost);
    WeightFn closed = [&closure](int j, int i) {
      return closure.weight(j, i);
    };
    dp = solve_no_duration_weighted(inst, dp_options(opts), closed, &closure);
  }
  if (dp.status != SolveStatus::Solved) return std::nullopt;

  DualEvaluation eval;
  eval.lambda = lambda;
  eval.relaxed_value = dp.dp_value;
  eval.primal = std::move(dp.solution);
  eval.value = -lambda * *inst.tmax + dp.dp_value;
  eval.slack = *inst.tmax - eval.primal.duration;
  return eval;
}

std::optional<std::pair<double, std::vector<int>>> min_time_route(
    const Instance& inst, const std::vector<char>& mandatory,
    const std::vector<char>& excluded) {
  LagrangianOptions opts;
  opts.mandatory = mandatory;
  opts.excluded = excluded;
  ArcFilter filter = make_filter(inst, opts);
  WeightFn times = [&](int j, int i) -> std::optional<double> {
    if (!filter.allowed(j, i)) return std::nullopt;
    return inst.time.get(j, i);
  };
  Closure c = metric_closure(inst.n, times);
  if (!c.path[0][inst.n - 1]) return std::nullopt;
  const ClosedPath& p = *c.path[0][inst.n - 1];
  std::vector<int> visits;
  visits.push_back(0);
  for (int k : p.via) visits.push_back(k);
  visits.push_back(inst.n - 1);
  return std::make_pair(p.weight, visits);
}

LambdaInterval initial_interval(const Instance& inst,
                                const LagrangianOptions& opts) {
  if (!inst.tmax) {
    throw std::invalid_argument("initial_interval requires tmax");
  }
  auto fastest = min_time_route(inst, opts.mandatory, opts.excluded);
  if (!fastest) {
    throw std::runtime_error("no route from node 1 to node n");
  }
  double t_1n = fastest->first;
  if (t_1n > *inst.tmax + kEps * std::max(1.0, *inst.tmax)) {
    throw std::runtime_error(
        "infeasible: even the fastest route exceeds T_max");
  }

  auto e0 = evaluate_dual(inst, 0.0, opts);
  if (!e0) throw std::runtime_error("relaxed problem infeasible");
  if (e0->feasible()) {
    return LambdaInterval{0.0, 0.0, false};
  }

  // Cost of the fastest route with all transfers at zero.
  Solution direct;
  direct.visits = fastest->second;
  direct.y.assign(inst.n, 0.0);
  double c_1n = objective(inst, direct);

  double denom = *inst.tmax - t_1n;
  if (denom <= kEps * std::max(1.0, *inst.tmax)) {
    // Degenerate: even the fastest route consumes the whole budget, so no
    // finite multiplier bound exists; report the precision-safe cap.
    return LambdaInterval{0.0, lambda_safe_cap(inst), true};
  }
  double hi = (c_1n - e0->value) / denom;
  return LambdaInterval{0.0, std::max(hi, 0.0), false};
}

DualResult solve_dual(const Instance& inst, const LagrangianOptions& opts) {
  if (!inst.tmax) throw std::invalid_argument("solve_dual requires tmax");
  DualResult result;

  auto e0_opt = evaluate_dual(inst, 0.0, opts);
  if (!e0_opt) return result;  // relaxed (hence original) infeasible
  DualEvaluation e0 = *e0_opt;
  result.history.push_back(e0);
  result.status = SolveStatus::Solved;

  if (e0.feasible()) {
    // The unconstrained optimum already satisfies the duration limit.
    result.best = e0;
    result.feasible_primal = e0.primal;
    result.optimal = true;
    return result;
  }

  LambdaInterval interval;
  try {
    interval = initial_interval(inst, opts);
  } catch (const std::runtime_error&) {
    result.status = SolveStatus::Infeasible;
    return result;
  }

  double eps = opts.eps > 0
                   ? opts.eps
                   : 1e-6 * (1.0 + std::fabs(e0.value));
  const double cap = lambda_safe_cap(inst);

  if (interval.degenerate) {
    // The whole budget goes to the fastest route: the feasible set is
    // exactly the minimum-time routes, solved directly over their arcs.
    auto exact = fastest_subdag_solve(inst, opts);
    if (!exact) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    DualEvaluation atopt;
    atopt.lambda = cap;
    atopt.value = exact->solution.objective;  // sup of L(lambda)
    atopt.primal = exact->solution;
    atopt.relaxed_value = exact->dp_value;
    atopt.slack = *inst.tmax - exact->solution.duration;
    result.best = atopt;
    result.feasible_primal = exact->solution;
    result.optimal = true;
    return result;
  }

  DualEvaluation best = e0;
  auto maybe_update_best = [&best](const DualEvaluation& e) {
    if (e.value > best.value) best = e;
  };

  DualEvaluation lo = e0;  // slack < 0 throughout
  double hi_lambda = std::min(std::max(interval.hi, eps), cap);
  std::optional<DualEvaluation> hi;
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto e = evaluate_dual(inst, hi_lambda, opts);
    if (!e) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    result.history.push_back(*e);
    maybe_update_best(*e);
    if (e->feasible()) {
      hi = *e;
      break;
    }
    if (hi_lambda >= cap) break;
    hi_lambda = std::min(hi_lambda * 2.0, cap);
  }
  if (!hi) {
    // No feasible primal within the precision-safe multiplier range
    // (near-degenerate budget).  The bounds stay valid: keep the best
    // dual value and fall back to the fastest-route sub-DAG for a
    // feasible upper bound.
    auto fallback = fastest_subdag_solve(inst, opts);
    if (!fallback) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    result.best = best;
    result.feasible_primal = fallback->solution;
    result.optimal =
        fallback->solution.objective <=
        best.value + opts.eps_cs * (1.0 + std::fabs(best.value));
    return result;
  }

  while (hi->lambda - lo.lambda >= eps) {
    double s_lo = lo.slack, s_hi = hi->slack;
    double lambda_b = 0.0;
    double denom = s_lo - s_hi;
    bool ok = std::fabs(denom) > kEps;
    if (ok) {
      lambda_b = (hi->value - lo.value + s_lo * lo.lambda -
                  s_hi * hi->lambda) /
                 denom;
    }
    if (!ok || lambda_b <= lo.lambda + kEps * std::max(1.0, lo.lambda) ||
        lambda_b >= hi->lambda - kEps * std::max(1.0, hi->lambda)) {
      lambda_b = 0.5 * (lo.lambda + hi->lambda);  // bisection fallback
    }
    auto eb_opt = evaluate_dual(inst, lambda_b, opts);
    if (!eb_opt) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    DualEvaluation eb = *eb_opt;
    result.history.push_back(eb);
    maybe_update_best(eb);
    if (eb.feasible()) {
      hi = eb;
      if (lambda_b * eb.slack <= opts.eps_cs) {
        // Complementary slackness: the feasible primal is optimal.
        result.optimal = true;
        break;
      }
    } else {
      lo = eb;
    }
  }

  result.best = best;
  result.feasible_primal = hi->primal;
  return result;
}

}  // namespace pwlship
