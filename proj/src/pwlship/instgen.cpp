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

#include "pwlship/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pwlship/metric.hpp"
#include "pwlship/rng.hpp"

namespace pwlship {

SizeClass size_class_from_string(const std::string& s) {
  if (s == "small") return SizeClass::Small;
  if (s == "medium") return SizeClass::Medium;
  if (s == "large") return SizeClass::Large;
  throw std::invalid_argument("unknown size class: " + s);
}

std::string to_string(SizeClass c) {
  switch (c) {
    case SizeClass::Small: return "small";
    case SizeClass::Medium: return "medium";
    case SizeClass::Large: return "large";
  }
  return "?";
}

double qmax_of_class(SizeClass c) {
  switch (c) {
    case SizeClass::Small: return 10;
    case SizeClass::Medium: return 50;
    case SizeClass::Large: return 100;
  }
  return 10;
}

double theta_of_class(SizeClass c) {
  switch (c) {
    case SizeClass::Small: return 2.0 / 5.0;
    case SizeClass::Medium: return 3.0 / 5.0;
    case SizeClass::Large: return 4.0 / 5.0;
  }
  return 2.0 / 5.0;
}

LotSizingInstance generate_lswrc(int n, SizeClass qmax_class,
                                 SizeClass theta_class, std::uint64_t seed,
                                 const LswrcGenConfig& cfg) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  Rng rng(seed);
  LotSizingInstance ls;
  ls.n = n;
  ls.qmax = qmax_of_class(qmax_class);
  ls.demand.resize(n);
  ls.holding.resize(n);
  ls.prod_cost.resize(n);

  for (int i = 0; i < n; ++i) {
    ls.demand[i] = static_cast<double>(
        rng.uniform_int(cfg.demand_lo, cfg.demand_hi));
    ls.holding[i] = static_cast<double>(
        rng.uniform_int(cfg.holding_lo, cfg.holding_hi));
  }
  for (int i = 0; i < n; ++i) {
    double b = ls.demand[i] +
               static_cast<double>(
                   rng.uniform_int(cfg.headroom_lo, cfg.headroom_hi));
    std::int64_t bi = static_cast<std::int64_t>(b);
    std::int64_t x1 = rng.uniform_int(1, bi - 2);
    std::int64_t x2 = rng.uniform_int(x1 + 1, bi - 1);
    double s1 = static_cast<double>(rng.uniform_int(cfg.slope1_lo, cfg.slope1_hi));
    double s2 = static_cast<double>(rng.uniform_int(cfg.slope2_lo, cfg.slope2_hi));
    double s3 = static_cast<double>(rng.uniform_int(cfg.slope3_lo, cfg.slope3_hi));
    double y1 = s1 * static_cast<double>(x1);
    double y2 = y1 + s2 * static_cast<double>(x2 - x1);
    double y3 = y2 + s3 * (b - static_cast<double>(x2));
    PwlFunction raw = PwlFunction::from_breakpoints(
        {{0.0, 0.0},
         {static_cast<double>(x1), y1},
         {static_cast<double>(x2), y2},
         {b, y3}});
    // Normalize at the default lot: costs measure the deviation from the
    // standard run, so L4L carries pure setup cost (the T_max formula's
    // SC_L4L) and producing the demanded quantity is cost neutral.
    ls.prod_cost[i] = raw.shifted(-*raw.evaluate(ls.demand[i]));
  }

  ls.cost = ArcMatrix(n);
  ls.time = ArcMatrix(n);
  double max_t = 0.0, consec_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int gap = j - i - 1;
      double c = static_cast<double>(rng.uniform_int(cfg.setup_lo, cfg.setup_hi));
      if (gap > 0) {
        c += static_cast<double>(cfg.setup_gap_slope) * gap +
             static_cast<double>(rng.uniform_int(0, cfg.setup_noise));
      }
      ls.cost.set(i, j, c);
      ls.time.set(i, j, c);  // setup resource defaults to setup cost
      max_t = std::max(max_t, c);
      if (gap == 0) consec_sum += c;
    }
  }
  ls.tmax = max_t + theta_of_class(theta_class) * consec_sum;
  return ls;
}

OrienteeringData parse_orienteering(std::istream& in) {
  OrienteeringData data;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::vector<double> nums;
    double v;
    while (row >> v) nums.push_back(v);
    std::string trailing;
    if (!row.eof() && row.fail()) {
      row.clear();
      row >> trailing;
    }
    if (!trailing.empty()) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": non-numeric token '" + trailing + "'");
    }
    if (nums.empty()) continue;  // blank line
    if (!header_seen) {
      if (nums.size() > 2) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": header must be 'T_max [vehicles]'");
      }
      data.tmax = nums[0];
      header_seen = true;
      continue;
    }
    if (nums.size() != 3) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 'x y score'");
    }
    data.x.push_back(nums[0]);
    data.y.push_back(nums[1]);
    data.score.push_back(nums[2]);
  }
  if (!header_seen) {
    throw std::runtime_error("line 1: missing T_max header");
  }
  return data;
}

OrienteeringData parse_orienteering_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_orienteering(in);
}

void write_orienteering(std::ostream& out, const OrienteeringData& data) {
  out << data.tmax << "\n";
  for (int i = 0; i < data.n(); ++i) {
    out << data.x[i] << "\t" << data.y[i] << "\t" << data.score[i] << "\n";
  }
}

OrienteeringData synthetic_orienteering(int n, std::uint64_t seed) {
  Rng rng(seed);
  OrienteeringData data;
  for (int i = 0; i < n; ++i) {
    data.x.push_back(static_cast<double>(rng.uniform_int(0, 100)));
    data.y.push_back(static_cast<double>(rng.uniform_int(0, 100)));
    data.score.push_back(static_cast<double>(rng.uniform_int(1, 10)));
  }
  double chain = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    chain += std::hypot(data.x[i + 1] - data.x[i], data.y[i + 1] - data.y[i]);
  }
  data.tmax = std::ceil(0.6 * chain);
  return data;
}

SrltpInstance generate_srltp(const OrienteeringData& base, double qmax,
                             std::uint64_t seed, const SrltpGenConfig& cfg) {
  const int n = base.n();
  if (n < 2) throw std::invalid_argument("base needs at least 2 nodes");
  Rng rng(seed);

  // Randomized nearest neighbour route over the base nodes.
  std::vector<int> route;
  std::vector<char> used(n, 0);
  int cur = 0;
  route.push_back(0);
  used[0] = 1;
  while (static_cast<int>(route.size()) < n) {
    std::vector<std::pair<double, int>> dist;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      dist.emplace_back(
          std::hypot(base.x[j] - base.x[cur], base.y[j] - base.y[cur]), j);
    }
    std::sort(dist.begin(), dist.end());
    int k = std::min<int>(cfg.nn_k, static_cast<int>(dist.size()));
    int pick = dist[static_cast<std::size_t>(rng.uniform_int(0, k - 1))].second;
    route.push_back(pick);
    used[pick] = 1;
    cur = pick;
  }

  SrltpInstance out;
  out.route = route;
  Instance& inst = out.instance;
  inst.n = n;
  inst.qmax = qmax;
  inst.tmax = base.tmax;
  inst.cost = ArcMatrix(n);
  inst.time = ArcMatrix(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = std::hypot(base.x[route[i]] - base.x[route[j]],
                            base.y[route[i]] - base.y[route[j]]);
      inst.cost.set(i, j, d);
      inst.time.set(i, j, d);
    }
  }

  // Four-step profit-change function per node: two segments of diminishing
  // gains on each side of zero, anchored at f(0) = 0.
  inst.profit.resize(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t reach_l = rng.uniform_int(cfg.reach_lo, cfg.reach_hi);
    std::int64_t reach_r = rng.uniform_int(cfg.reach_lo, cfg.reach_hi);
    std::int64_t m1 = reach_l == 2 ? -1 : -rng.uniform_int(1, reach_l - 1);
    std::int64_t m2 = reach_r == 2 ? 1 : rng.uniform_int(1, reach_r - 1);
    double s = base.score[route[i]];
    double u1 = std::round(s) + static_cast<double>(rng.uniform_int(1, 3));
    double u2 = static_cast<double>(
        rng.uniform_int(1, std::max<std::int64_t>(1, (std::int64_t)u1 - 1)));
    double w1 = std::round(s) + static_cast<double>(rng.uniform_int(1, 3));
    double w2 = static_cast<double>(
        rng.uniform_int(1, std::max<std::int64_t>(1, (std::int64_t)w1 - 1)));
    double a = static_cast<double>(-reach_l);
    double b = static_cast<double>(reach_r);
    double y_m1 = w1 * static_cast<double>(m1);
    double y_a = y_m1 + w2 * (a - static_cast<double>(m1));
    double y_m2 = -u1 * static_cast<double>(m2);
    double y_b = y_m2 - u2 * (b - static_cast<double>(m2));
    inst.profit[i] = PwlFunction::from_breakpoints(
        {{a, y_a},
         {static_cast<double>(m1), y_m1},
         {0.0, 0.0},
         {static_cast<double>(m2), y_m2},
         {b, y_b}});
  }
  inst.refresh_integrality();
  auto [cm, tm] = inst.verify_metric_flags();
  inst.cost_metric = cm;
  inst.time_metric = tm;
  return out;
}

Instance generate_random_areltp(const RandomAreltpConfig& cfg,
                                std::uint64_t seed) {
  Rng rng(seed);
  const int n = cfg.n;
  Instance inst;
  inst.n = n;
  inst.qmax = cfg.qmax;
  inst.cost = ArcMatrix(n);
  inst.time = ArcMatrix(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool forbid = j > i + 1 && rng.uniform_int(0, 9) == 0;
      double c = static_cast<double>(rng.uniform_int(1, 20));
      double t = static_cast<double>(rng.uniform_int(1, 10));
      if (!forbid) {
        inst.cost.set(i, j, c);
        inst.time.set(i, j, t);
      }
    }
  }

  inst.profit.resize(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t left = rng.uniform_int(0, 4);
    std::int64_t right = rng.uniform_int(0, 4);
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<double, double>> left_pts;
    double x = 0.0;
    // Walk left from (0, 0) assigning integer slopes per unit step.
    double yv = 0.0;
    for (std::int64_t step = 0; step < left; ++step) {
      double slope = static_cast<double>(
          cfg.monotone_profits ? rng.uniform_int(0, 5)
                               : rng.uniform_int(-5, 5));
      yv -= slope;  // moving one unit left
      left_pts.push_back({x - 1, yv});
      x -= 1.0;
    }
    std::reverse(left_pts.begin(), left_pts.end());
    pts = left_pts;
    pts.push_back({0.0, 0.0});
    x = 0.0;
    yv = 0.0;
    for (std::int64_t step = 0; step < right; ++step) {
      double slope = static_cast<double>(
          cfg.monotone_profits ? rng.uniform_int(0, 5)
                               : rng.uniform_int(-5, 5));
      yv += slope;
      pts.push_back({x + 1, yv});
      x += 1.0;
    }
    // Occasionally introduce a lower-semicontinuous jump.
    if (!cfg.monotone_profits && pts.size() >= 3 &&
        rng.uniform_int(0, 5) == 0) {
      std::size_t at = static_cast<std::size_t>(
          rng.uniform_int(1, static_cast<std::int64_t>(pts.size()) - 2));
      if (pts[at].first != 0.0) {
        double bump = static_cast<double>(rng.uniform_int(1, 4));
        pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(at) + 1,
                   {pts[at].first, pts[at].second + bump});
      }
    }
    inst.profit[i] = PwlFunction::from_breakpoints(pts);
  }

  if (cfg.with_tmax) {
    double full = 0.0;
    for (int i = 0; i + 1 < n; ++i) full += inst.time.at(i, i + 1);
    WeightFn times = [&inst](int j, int i) { return inst.time.get(j, i); };
    Closure c = metric_closure(n, times);
    double fastest = c.path[0][n - 1] ? c.path[0][n - 1]->weight : full;
    inst.tmax = std::max(std::ceil(cfg.tmax_tightness * full), fastest);
  }
  inst.refresh_integrality();
  auto [cm, tm] = inst.verify_metric_flags();
  inst.cost_metric = cm;
  inst.time_metric = tm;
  return inst;
}

}  // namespace pwlship
