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

#ifndef PWLSHIP_INSTGEN_HPP
#define PWLSHIP_INSTGEN_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pwlship/lswrc.hpp"
#include "pwlship/model.hpp"

namespace pwlship {

enum class SizeClass { Small, Medium, Large };

SizeClass size_class_from_string(const std::string& s);
std::string to_string(SizeClass c);

double qmax_of_class(SizeClass c);   // 10 / 50 / 100
double theta_of_class(SizeClass c);  // 2/5 / 3/5 / 4/5

// Knobs the experiment design leaves open; every generated file records
// the values used.
struct LswrcGenConfig {
  int demand_lo = 1, demand_hi = 9;
  int holding_lo = 1, holding_hi = 3;
  int setup_lo = 5, setup_hi = 15;       // consecutive-period setups
  int setup_gap_slope = 3;               // growth per idle period
  int setup_noise = 5;                   // extra U{0..noise} on longer idles
  int headroom_lo = 6, headroom_hi = 15; // b_i = d_i + U{lo..hi}
  int slope1_lo = 6, slope1_hi = 9;      // three concave cost steps
  int slope2_lo = 3, slope2_hi = 5;
  int slope3_lo = 1, slope3_hi = 2;
};

// Deterministic for fixed arguments.  Setup resource equals setup cost and
// T_max = max_ij t_ij + theta * sum_i t_{i,i+1}.  Production costs are
// concave with exactly three steps on [0, b_i], demands always inside the
// production bounds.
LotSizingInstance generate_lswrc(int n, SizeClass qmax_class,
                                 SizeClass theta_class, std::uint64_t seed,
                                 const LswrcGenConfig& config = {});

struct OrienteeringData {
  double tmax = 0.0;
  std::vector<double> x, y, score;
  int n() const { return static_cast<int>(x.size()); }
};

// Classic whitespace-separated layout: a header line with T_max (a second
// header number is ignored), then one "x y score" line per node.  Throws
// std::runtime_error naming the offending line.
OrienteeringData parse_orienteering(std::istream& in);
OrienteeringData parse_orienteering_file(const std::string& path);
void write_orienteering(std::ostream& out, const OrienteeringData& data);

OrienteeringData synthetic_orienteering(int n, std::uint64_t seed);

struct SrltpGenConfig {
  int nn_k = 3;             // randomized nearest neighbour candidate count
  int reach_lo = 2, reach_hi = 6;  // half-width of the transfer domain
};

struct SrltpInstance {
  Instance instance;
  std::vector<int> route;  // base-node index per route position
};

// One a-priori route over the base nodes by randomized nearest neighbour
// (uniform among the nn_k nearest unvisited), with distance doubling as
// cost and time, and a four-step profit-change function per node.
SrltpInstance generate_srltp(const OrienteeringData& base, double qmax,
                             std::uint64_t seed,
                             const SrltpGenConfig& config = {});

// Seeded random integral test instances (used by the oracle-equivalence
// suites and the benchmark harness).
struct RandomAreltpConfig {
  int n = 6;
  double qmax = 8;
  bool with_tmax = false;
  double tmax_tightness = 0.6;  // fraction of the full-route duration
  bool monotone_profits = false;
};

Instance generate_random_areltp(const RandomAreltpConfig& config,
                                std::uint64_t seed);

}  // namespace pwlship

#endif  // PWLSHIP_INSTGEN_HPP
