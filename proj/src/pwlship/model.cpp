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

#include "pwlship/model.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace pwlship {

bool ArcMatrix::satisfies_triangle(double eps) const {
  for (int i = 0; i < n_; ++i) {
    for (int k = i + 1; k < n_; ++k) {
      if (!has(i, k)) continue;
      for (int j = i + 1; j < k; ++j) {
        if (!has(i, j) || !has(j, k)) continue;
        double direct = at(i, k);
        double through = at(i, j) + at(j, k);
        if (direct > through + eps * std::max(1.0, std::fabs(through))) {
          return false;
        }
      }
    }
  }
  return true;
}

void Instance::refresh_integrality() {
  auto all_int = [](const ArcMatrix& m, int n) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (m.has(i, j) && !is_integral(m.at(i, j))) return false;
      }
    }
    return true;
  };
  integer_domains = is_integral(qmax);
  for (const PwlFunction& f : profit) {
    for (const Segment& s : f.segments()) {
      if (!is_integral(s.lo) || !is_integral(s.hi)) {
        integer_domains = false;
        break;
      }
    }
    if (!integer_domains) break;
  }
  // T_max stays out: the duration bound never touches the load domains.
  integral = integer_domains && all_int(cost, n) && all_int(time, n);
}

std::pair<bool, bool> Instance::verify_metric_flags() const {
  return {cost.satisfies_triangle(), time.satisfies_triangle()};
}

std::vector<std::string> Instance::validate_instance() const {
  std::vector<std::string> out;
  if (n < 2) out.push_back("instance needs at least 2 nodes");
  if (static_cast<int>(profit.size()) != n) {
    out.push_back("profit function count differs from n");
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (profit[i].empty()) {
      out.push_back("node " + std::to_string(i + 1) +
                    ": empty profit function");
      continue;
    }
    if (profit[i].domain_min() > kEps || profit[i].domain_max() < -kEps) {
      out.push_back("node " + std::to_string(i + 1) +
                    ": profit domain violates a_i <= 0 <= b_i");
    }
    if (!profit[i].evaluate(0.0)) {
      out.push_back("node " + std::to_string(i + 1) +
                    ": f_i(0) undefined");
    }
  }
  if (qmax < 0) out.push_back("qmax must be nonnegative");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (time.has(i, j) && time.at(i, j) < -kEps) {
        out.push_back("negative travel time on arc (" +
                      std::to_string(i + 1) + "," + std::to_string(j + 1) +
                      ")");
      }
    }
  }
  return out;
}

namespace {

void check_structure(const Instance& inst, const Solution& sol) {
  if (sol.visits.empty() || sol.visits.front() != 0 ||
      sol.visits.back() != inst.n - 1) {
    throw std::invalid_argument(
        "solution visits must start at node 1 and end at node n");
  }
  for (std::size_t k = 1; k < sol.visits.size(); ++k) {
    if (sol.visits[k] <= sol.visits[k - 1]) {
      throw std::invalid_argument("visits must be strictly increasing");
    }
  }
  if (static_cast<int>(sol.y.size()) != inst.n) {
    throw std::invalid_argument("y must have one entry per node");
  }
}

}  // namespace

double objective(const Instance& inst, const Solution& sol) {
  check_structure(inst, sol);
  double total = 0.0;
  for (std::size_t k = 1; k < sol.visits.size(); ++k) {
    int a = sol.visits[k - 1], b = sol.visits[k];
    if (!inst.cost.has(a, b)) {
      throw std::invalid_argument("solution uses forbidden arc (" +
                                  std::to_string(a + 1) + "," +
                                  std::to_string(b + 1) + ")");
    }
    total += inst.cost.at(a, b);
  }
  for (int i : sol.visits) {
    auto v = inst.profit[i].evaluate(sol.y[i]);
    if (!v) {
      throw std::invalid_argument("y outside profit domain at node " +
                                  std::to_string(i + 1));
    }
    total += *v;
  }
  return total;
}

double route_duration(const Instance& inst, const std::vector<int>& visits) {
  double total = 0.0;
  for (std::size_t k = 1; k < visits.size(); ++k) {
    int a = visits[k - 1], b = visits[k];
    if (!inst.time.has(a, b)) {
      throw std::invalid_argument("route uses forbidden arc (" +
                                  std::to_string(a + 1) + "," +
                                  std::to_string(b + 1) + ")");
    }
    total += inst.time.at(a, b);
  }
  return total;
}

std::vector<std::string> validate(const Instance& inst, const Solution& sol) {
  std::vector<std::string> out;
  if (sol.visits.empty() || sol.visits.front() != 0) {
    out.push_back("route must start at node 1");
  }
  if (sol.visits.empty() || sol.visits.back() != inst.n - 1) {
    out.push_back("route must end at node n");
  }
  for (std::size_t k = 1; k < sol.visits.size(); ++k) {
    if (sol.visits[k] <= sol.visits[k - 1]) {
      out.push_back("visits not strictly increasing");
      break;
    }
  }
  if (static_cast<int>(sol.y.size()) != inst.n) {
    out.push_back("y size differs from n");
    return out;
  }

  std::vector<bool> visited(inst.n, false);
  for (int i : sol.visits) {
    if (i >= 0 && i < inst.n) visited[i] = true;
  }
  for (int i = 0; i < inst.n; ++i) {
    if (visited[i]) {
      if (!inst.profit[i].evaluate(sol.y[i])) {
        out.push_back("y outside [a,b] at node " + std::to_string(i + 1));
      }
    } else if (std::fabs(sol.y[i]) > kEps) {
      out.push_back("nonzero y at skipped node " + std::to_string(i + 1));
    }
  }

  double load = 0.0;
  double scale_q = std::max(1.0, inst.qmax);
  for (int i : sol.visits) {
    load += sol.y[i];
    if (load < -kEps * scale_q) {
      out.push_back("load below 0 after node " + std::to_string(i + 1));
    }
    if (load > inst.qmax + kEps * scale_q) {
      out.push_back("load above Q_max after node " + std::to_string(i + 1));
    }
  }

  bool arcs_ok = true;
  for (std::size_t k = 1; k < sol.visits.size(); ++k) {
    int a = sol.visits[k - 1], b = sol.visits[k];
    if (a < 0 || b >= inst.n || !inst.cost.has(a, b) || !inst.time.has(a, b)) {
      out.push_back("forbidden arc (" + std::to_string(a + 1) + "," +
                    std::to_string(b + 1) + ")");
      arcs_ok = false;
    }
  }
  if (arcs_ok && inst.tmax && !sol.visits.empty() &&
      sol.visits.front() == 0 && sol.visits.back() == inst.n - 1) {
    double dur = route_duration(inst, sol.visits);
    if (dur > *inst.tmax + kEps * std::max(1.0, *inst.tmax)) {
      out.push_back("duration limit exceeded");
    }
  }
  return out;
}

void finalize_solution(const Instance& inst, Solution& sol) {
  sol.objective = objective(inst, sol);
  sol.duration = route_duration(inst, sol.visits);
  sol.load_profile.clear();
  double load = 0.0;
  for (int i : sol.visits) {
    load += sol.y[i];
    sol.load_profile.push_back(load);
  }
}

}  // namespace pwlship
