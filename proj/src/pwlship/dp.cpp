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

#include "pwlship/dp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pwlship {

namespace {

struct Restriction {
  std::vector<char> mandatory, excluded;

  static Restriction from(const Instance& inst, const DpOptions& opts) {
    Restriction r;
    r.mandatory.assign(inst.n, 0);
    r.excluded.assign(inst.n, 0);
    if (!opts.mandatory.empty()) {
      for (int i = 0; i < inst.n && i < (int)opts.mandatory.size(); ++i) {
        r.mandatory[i] = opts.mandatory[i];
      }
    }
    if (!opts.excluded.empty()) {
      for (int i = 0; i < inst.n && i < (int)opts.excluded.size(); ++i) {
        r.excluded[i] = opts.excluded[i];
      }
    }
    // The source and sink can never be excluded; mandatory there is moot.
    r.excluded[0] = r.excluded[inst.n - 1] = 0;
    r.mandatory[0] = r.mandatory[inst.n - 1] = 0;
    if (!opts.mandatory.empty() && !opts.excluded.empty()) {
      for (int i = 0; i < inst.n; ++i) {
        if (r.mandatory[i] && r.excluded[i]) {
          throw std::invalid_argument(
              "node marked both mandatory and excluded");
        }
      }
    }
    return r;
  }

  // Arc (j,i) survives when neither endpoint is excluded and it does not
  // skip a mandatory customer.
  bool arc_allowed(int j, int i) const {
    if (excluded[j] || excluded[i]) return false;
    for (int s = j + 1; s < i; ++s) {
      if (mandatory[s]) return false;
    }
    return true;
  }
};

PwlFunction post_process(PwlFunction f, double qmax, bool integer_mode) {
  f = f.clipped(0.0, qmax);
  if (integer_mode && !f.empty()) f = integerize(f);
  f.normalize();
  return f;
}

// Recovers y and the value of a tagged value-function segment at load q.
double y_from_tag(const SegmentTag& tag, double q) {
  switch (tag.rule) {
    case YRule::Const:
      return tag.rule_value;
    case YRule::OffsetFromQ:
      return q - tag.rule_value;
    case YRule::None:
      return q;  // first node: the whole load was picked up there
  }
  return q;
}

}  // namespace

DpResult solve_no_duration(const Instance& inst, const DpOptions& opts) {
  WeightFn direct = [&inst](int j, int i) { return inst.cost.get(j, i); };
  return solve_no_duration_weighted(inst, opts, direct, nullptr);
}

DpResult solve_no_duration_weighted(const Instance& inst,
                                    const DpOptions& opts,
                                    const WeightFn& weight,
                                    const Closure* vias) {
  const int n = inst.n;
  if (n < 2) throw std::invalid_argument("instance needs at least 2 nodes");
  Restriction r = Restriction::from(inst, opts);

  std::vector<PwlFunction> v(n);
  v[0] = post_process(inst.profit[0], inst.qmax, opts.integer_mode);
  if (v[0].empty()) {
    return DpResult{};  // no feasible load at the first node
  }

  for (int i = 1; i < n; ++i) {
    if (r.excluded[i]) continue;
    std::vector<PwlFunction> candidates;
    for (int j = 0; j < i; ++j) {
      if (v[j].empty() || !r.arc_allowed(j, i)) continue;
      auto w = weight(j, i);
      if (!w) continue;
      candidates.push_back(v[j].shifted(*w).with_pred(j));
    }
    if (candidates.empty()) continue;
    PwlFunction tilde = envelope(std::span<const PwlFunction>(candidates));
    if (opts.integer_mode) tilde = integerize(tilde);
    if (tilde.empty()) continue;
    v[i] = post_process(superpose(tilde, inst.profit[i]), inst.qmax,
                        opts.integer_mode);
  }

  DpResult result;
  result.value_functions = v;
  const PwlFunction& last = v[n - 1];
  if (last.empty()) return result;

  double q_star, value;
  if (opts.force_empty_end) {
    auto at_zero = last.evaluate(0.0);
    if (!at_zero) return result;
    q_star = 0.0;
    value = *at_zero;
  } else {
    std::tie(q_star, value) = last.min_point();
  }

  // Backtrack along segment tags, smallest predecessor on ties.
  Solution sol;
  sol.y.assign(n, 0.0);
  std::vector<int> rev;
  int node = n - 1;
  double q = q_star;
  while (node != 0) {
    auto seg_idx = v[node].argmin_segment(q);
    if (!seg_idx) {
      throw std::logic_error("backtrack fell outside the value function");
    }
    const Segment& seg = v[node].segments()[*seg_idx];
    double y = y_from_tag(seg.tag, q);
    int pred = seg.tag.pred;
    if (pred < 0 || pred >= node) {
      throw std::logic_error("corrupt backtracking tag");
    }
    rev.push_back(node);
    sol.y[node] = y;
    // Expand closure arcs: interior nodes are visited without transfer.
    if (vias && vias->path[pred][node]) {
      const auto& via = vias->path[pred][node]->via;
      for (auto it = via.rbegin(); it != via.rend(); ++it) {
        rev.push_back(*it);
      }
    }
    q -= y;
    node = pred;
  }
  rev.push_back(0);
  sol.y[0] = q;
  sol.visits.assign(rev.rbegin(), rev.rend());
  finalize_solution(inst, sol);

  result.status = SolveStatus::Solved;
  result.solution = std::move(sol);
  result.dp_value = value;
  return result;
}

const PwlFunction* BudgetedValueFunction::at_budget(double budget) const {
  const PwlFunction* best = nullptr;
  for (const BudgetPair& p : pairs) {
    if (p.threshold <= budget + kEps * std::max(1.0, std::fabs(budget))) {
      best = &p.fn;
    } else {
      break;
    }
  }
  return best;
}

namespace {

// Pointwise equality over the union of breakpoints plus midpoints; the
// budget tables drop a pair only when it adds nothing over its
// predecessor class.
bool same_function(const PwlFunction& a, const PwlFunction& b) {
  if (a.empty() != b.empty()) return false;
  if (a.empty()) return true;
  std::vector<double> qs;
  for (const PwlFunction* f : {&a, &b}) {
    for (const Segment& s : f->segments()) {
      qs.push_back(s.lo);
      qs.push_back(s.hi);
    }
  }
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  std::vector<double> probes = qs;
  for (std::size_t i = 1; i < qs.size(); ++i) {
    probes.push_back(0.5 * (qs[i - 1] + qs[i]));
  }
  for (double q : probes) {
    auto va = a.evaluate(q);
    auto vb = b.evaluate(q);
    if (va.has_value() != vb.has_value()) return false;
    if (va && !nearly_equal(*va, *vb)) return false;
  }
  return true;
}

struct Connection {
  double cost = 0.0;
  double time = 0.0;
  int path_id = -1;  // index into Dp3dState::paths, -1 = direct arc
};

struct Dp3dState {
  std::vector<std::vector<int>> via_of_path;  // path_id -> interior nodes
};

}  // namespace

Dp3dResult solve_with_duration(const Instance& inst, const DpOptions& opts) {
  if (!inst.tmax) {
    throw std::invalid_argument("solve_with_duration requires tmax");
  }
  const int n = inst.n;
  const double tmax = *inst.tmax;
  Restriction r = Restriction::from(inst, opts);

  // Connections between every allowed pair.  With both matrices metric the
  // direct arc dominates every detour; otherwise all (cost,time) Pareto
  // paths are considered, their interior nodes priced as y = 0 visits.
  Dp3dState state;
  std::vector<std::vector<std::vector<Connection>>> conn(
      n, std::vector<std::vector<Connection>>(n));
  bool metric = inst.cost_metric && inst.time_metric;
  std::optional<ParetoPathSet> pareto;
  if (!metric) {
    std::vector<double> node_cost(n, 0.0);
    std::vector<char> usable(n, 1);
    for (int k = 0; k < n; ++k) {
      if (r.excluded[k] || r.mandatory[k]) {
        // Mandatory nodes must appear as real visits, never as interior
        // pass-throughs of a connection; excluded nodes not at all.
        usable[k] = 0;
        continue;
      }
      auto f0 = inst.profit[k].evaluate(0.0);
      node_cost[k] = f0 ? *f0 : 0.0;
      if (!f0) usable[k] = 0;
    }
    pareto = pareto_paths_with_node_costs(inst, node_cost, usable);
  }
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      if (!r.arc_allowed(j, i)) continue;
      if (metric || !pareto) {
        if (inst.cost.has(j, i) && inst.time.has(j, i)) {
          conn[j][i].push_back(
              Connection{inst.cost.at(j, i), inst.time.at(j, i), -1});
        }
      } else {
        for (const ParetoPath& p : pareto->paths(j, i)) {
          // Paths may only pass through nodes allowed between j and i;
          // arc-level restrictions were encoded in `usable` above except
          // for skip-arcs, checked here.
          bool ok = true;
          for (int k : p.via) {
            if (!r.arc_allowed(j, k) || !r.arc_allowed(k, i)) ok = false;
          }
          if (!ok) continue;
          int path_id = -1;
          if (!p.via.empty()) {
            path_id = static_cast<int>(state.via_of_path.size());
            state.via_of_path.push_back(p.via);
          }
          conn[j][i].push_back(Connection{p.cost, p.time, path_id});
        }
      }
    }
  }

  std::vector<BudgetedValueFunction> u(n);
  {
    PwlFunction first =
        post_process(inst.profit[0], inst.qmax, opts.integer_mode);
    if (!first.empty()) {
      u[0].pairs.push_back(BudgetPair{0.0, std::move(first)});
    }
  }

  for (int i = 1; i < n; ++i) {
    if (r.excluded[i]) continue;

    struct Candidate {
      double threshold;
      int pred;
      std::size_t pair_idx;
      std::size_t conn_idx;
    };
    std::vector<Candidate> cands;
    for (int j = 0; j < i; ++j) {
      if (u[j].pairs.empty()) continue;
      for (std::size_t pi = 0; pi < u[j].pairs.size(); ++pi) {
        for (std::size_t ci = 0; ci < conn[j][i].size(); ++ci) {
          double t = u[j].pairs[pi].threshold + conn[j][i][ci].time;
          if (t <= tmax + kEps * std::max(1.0, tmax)) {
            cands.push_back(Candidate{t, j, pi, ci});
          }
        }
      }
    }
    if (cands.empty()) continue;
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return a.threshold < b.threshold;
                     });

    PwlFunction cumulative;  // envelope of all candidates so far
    std::size_t k = 0;
    while (k < cands.size()) {
      double t = cands[k].threshold;
      std::vector<PwlFunction> group;
      if (!cumulative.empty()) group.push_back(cumulative);
      while (k < cands.size() &&
             nearly_equal(cands[k].threshold, t)) {
        const Candidate& c = cands[k];
        const Connection& cn = conn[c.pred][i][c.conn_idx];
        PwlFunction g =
            u[c.pred].pairs[c.pair_idx].fn.shifted(cn.cost).with_pred(c.pred);
        // Stamp budget provenance for backtracking.
        std::vector<Segment> segs = g.segments();
        for (Segment& s : segs) {
          s.tag.pred_budget = u[c.pred].pairs[c.pair_idx].threshold;
          s.tag.path_id = cn.path_id;
        }
        group.push_back(PwlFunction(std::move(segs)));
        ++k;
      }
      PwlFunction next = envelope(std::span<const PwlFunction>(group));
      if (opts.integer_mode) next = integerize(next);
      if (!cumulative.empty() && same_function(next, cumulative)) {
        continue;  // this budget class adds nothing before superposition
      }
      cumulative = std::move(next);
      PwlFunction vi = post_process(superpose(cumulative, inst.profit[i]),
                                    inst.qmax, opts.integer_mode);
      if (vi.empty()) continue;
      if (!u[i].pairs.empty() && same_function(vi, u[i].pairs.back().fn)) {
        continue;  // dominated budget class
      }
      u[i].pairs.push_back(BudgetPair{t, std::move(vi)});
    }
  }

  Dp3dResult result;
  result.tables = u;
  if (u[n - 1].pairs.empty()) return result;

  const BudgetPair& final_pair = u[n - 1].pairs.back();
  double q_star, value;
  if (opts.force_empty_end) {
    // The terminal load is pinned to zero; scan budget classes for the
    // best pair that covers q = 0.
    const BudgetPair* best = nullptr;
    double best_v = 0.0;
    for (const BudgetPair& p : u[n - 1].pairs) {
      auto v0 = p.fn.evaluate(0.0);
      if (v0 && (!best || *v0 < best_v - kEps)) {
        best = &p;
        best_v = *v0;
      }
    }
    if (!best) return result;
    q_star = 0.0;
    value = best_v;
  } else {
    std::tie(q_star, value) = final_pair.fn.min_point();
  }
  (void)value;

  // Backtrack across nodes and budget classes.
  Solution sol;
  sol.y.assign(n, 0.0);
  std::vector<int> rev;
  int node = n - 1;
  double q = q_star;
  // Locate the budget pair attaining the answer at node n.
  const PwlFunction* fn = nullptr;
  double fn_threshold = 0.0;
  for (const BudgetPair& p : u[n - 1].pairs) {
    auto vq = p.fn.evaluate(q);
    if (vq && nearly_equal(*vq, value)) {
      fn = &p.fn;
      fn_threshold = p.threshold;
      break;
    }
  }
  if (!fn) {
    fn = &final_pair.fn;
    fn_threshold = final_pair.threshold;
  }
  (void)fn_threshold;

  while (node != 0) {
    auto seg_idx = fn->argmin_segment(q);
    if (!seg_idx) throw std::logic_error("budgeted backtrack out of domain");
    const Segment& seg = fn->segments()[*seg_idx];
    double y = y_from_tag(seg.tag, q);
    int pred = seg.tag.pred;
    if (pred < 0 || pred >= node) {
      throw std::logic_error("corrupt budgeted backtracking tag");
    }
    rev.push_back(node);
    sol.y[node] = y;
    if (seg.tag.path_id >= 0) {
      const auto& via = state.via_of_path[seg.tag.path_id];
      for (auto it = via.rbegin(); it != via.rend(); ++it) rev.push_back(*it);
    }
    q -= y;
    // Find the predecessor's budget pair by its stored threshold.
    const PwlFunction* next_fn = nullptr;
    for (const BudgetPair& p : u[pred].pairs) {
      if (nearly_equal(p.threshold, seg.tag.pred_budget)) {
        next_fn = &p.fn;
        break;
      }
    }
    if (!next_fn) throw std::logic_error("missing predecessor budget pair");
    fn = next_fn;
    node = pred;
  }
  rev.push_back(0);
  sol.y[0] = q;
  sol.visits.assign(rev.rbegin(), rev.rend());
  finalize_solution(inst, sol);

  result.status = SolveStatus::Solved;
  result.solution = std::move(sol);
  return result;
}

}  // namespace pwlship
