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

#ifndef PWLSHIP_ORACLE_HPP
#define PWLSHIP_ORACLE_HPP

#include <optional>
#include <vector>

#include "pwlship/lswrc.hpp"
#include "pwlship/model.hpp"

namespace pwlship {

struct OracleOptions {
  bool respect_tmax = true;
  bool force_empty_end = false;
  // Required for non-integral data: y is searched on {a_i + k*grid}.
  std::optional<double> grid;
  // Restricted enumeration (branch-and-bound node checks): subsequences
  // must contain every mandatory customer and avoid every excluded one.
  std::vector<char> mandatory;
  std::vector<char> excluded;
};

struct OracleResult {
  bool feasible = false;
  Solution solution;
};

// Exhaustive ground truth for small instances: every subsequence through
// nodes 1 and n, and for each an exhaustive search of the transfer grid
// under domain, prefix-load and (optionally) duration constraints.  Ties
// break towards the lexicographically smallest visit set.  Never touches
// the envelope/superposition machinery.
OracleResult brute_force(const Instance& inst, const OracleOptions& opts = {});

struct LswrcOracleResult {
  bool feasible = false;
  ProductionPlan plan;
};

// Direct enumeration of the lot-sizing model: setup chains through periods
// 1 and n, integer productions on the chain, default lots off it,
// inventory kept within [0, Q_max] and the setup-resource budget enforced.
LswrcOracleResult brute_force_lswrc(const LotSizingInstance& ls);

}  // namespace pwlship

#endif  // PWLSHIP_ORACLE_HPP
