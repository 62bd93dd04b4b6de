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

#ifndef PWLSHIP_MODEL_HPP
#define PWLSHIP_MODEL_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pwlship/pwl.hpp"

namespace pwlship {

// Dense upper-triangular arc weights on the forward DAG 1 -> n.  Missing
// entries are forbidden arcs (Example-style infinite costs are stored as
// absent, never as a large number).
class ArcMatrix {
 public:
  ArcMatrix() = default;
  explicit ArcMatrix(int n)
      : n_(n), w_(static_cast<std::size_t>(n) * n,
                  std::numeric_limits<double>::quiet_NaN()) {}

  int n() const { return n_; }
  bool has(int i, int j) const { return !std::isnan(raw(i, j)); }
  double at(int i, int j) const { return raw(i, j); }
  std::optional<double> get(int i, int j) const {
    double v = raw(i, j);
    if (std::isnan(v)) return std::nullopt;
    return v;
  }
  void set(int i, int j, double v) { w_[idx(i, j)] = v; }
  void unset(int i, int j) {
    w_[idx(i, j)] = std::numeric_limits<double>::quiet_NaN();
  }

  // Triangle inequality over present arcs (absent arcs impose nothing).
  bool satisfies_triangle(double eps = kEps) const;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }
  double raw(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i >= j) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return w_[idx(i, j)];
  }
  int n_ = 0;
  std::vector<double> w_;
};

// An a-priori route instance: nodes 0..n-1 in visiting order (node 0 is
// the paper's location 1), forward arc costs/times, per-node profit-change
// functions f_i with a_i <= 0 <= b_i, load cap and optional duration cap.
struct Instance {
  int n = 0;
  ArcMatrix cost;
  ArcMatrix time;
  std::vector<PwlFunction> profit;
  double qmax = 0.0;
  std::optional<double> tmax;
  bool cost_metric = true;  // declared; see verify_metric_flags
  bool time_metric = true;
  bool integral = false;         // borders, costs, times, qmax all integral
  bool integer_domains = false;  // borders and qmax integral (enables
                                 // integer-domain value functions)

  double profit_lo(int i) const { return profit[i].domain_min(); }
  double profit_hi(int i) const { return profit[i].domain_max(); }

  // Recomputes integral/metric properties from the data.
  void refresh_integrality();
  std::pair<bool, bool> verify_metric_flags() const;

  // Structural checks on the instance itself (not on solutions).
  std::vector<std::string> validate_instance() const;
};

struct Solution {
  std::vector<int> visits;       // 0-based, starts at 0, ends at n-1
  std::vector<double> y;         // size n, zero at skipped nodes
  double objective = 0.0;        // psi: travel cost + profit-change cost
  double duration = 0.0;         // sum of arc times along visits
  std::vector<double> load_profile;  // prefix sums of y over visits

  std::string method;
  std::optional<double> dual_bound;
  std::optional<long> nodes_expanded;
};

// psi(sol) = sum of arc costs over consecutive visits plus sum f_i(y_i)
// over visited nodes.  Throws std::invalid_argument when the solution is
// structurally broken (wrong endpoints, y outside f's domain, forbidden
// arc), naming the violated invariant.
double objective(const Instance& inst, const Solution& sol);

// Total arc time along the visit sequence; throws on forbidden arcs.
double route_duration(const Instance& inst, const std::vector<int>& visits);

// All violated solution invariants, empty when feasible.
std::vector<std::string> validate(const Instance& inst, const Solution& sol);

// Fills objective/duration/load_profile from visits and y.
void finalize_solution(const Instance& inst, Solution& sol);

}  // namespace pwlship

#endif  // PWLSHIP_MODEL_HPP
