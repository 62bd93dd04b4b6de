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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pwlship/instgen.hpp"
#include "pwlship/mipexport.hpp"
#include "testutil.hpp"

using namespace pwlship;

namespace {

std::string export_to_string(const Instance& inst, MipVariant v) {
  std::ostringstream out;
  export_mip(inst, v, out);
  return out.str();
}

// Lines outside the marked linearization blocks and the SOS section.
std::vector<std::string> common_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  bool in_block = false;
  while (std::getline(in, line)) {
    if (line.find("\\ begin linearization") != std::string::npos) {
      in_block = true;
      continue;
    }
    if (line.find("\\ end linearization") != std::string::npos) {
      in_block = false;
      continue;
    }
    if (in_block) continue;
    if (line.rfind("\\", 0) == 0) continue;  // header comments name the variant
    out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("smallest model: two nodes, one segment each") {
  Instance inst;
  inst.n = 2;
  inst.qmax = 4;
  inst.cost = ArcMatrix(2);
  inst.time = ArcMatrix(2);
  inst.cost.set(0, 1, 3);
  inst.time.set(0, 1, 2);
  inst.profit = {PwlFunction::from_breakpoints({{0, 0}, {2, -4}}),
                 PwlFunction::from_breakpoints({{-1, 1}, {0, 0}})};

  std::string text = export_to_string(inst, MipVariant::Beta);
  // One arc variable.
  CHECK(text.find("x_1_2") != std::string::npos);
  LpSummary sum;
  {
    std::istringstream in(text);
    sum = read_lp_summary(in);
  }
  LpExpectedCounts want = expected_counts(inst, MipVariant::Beta);
  CHECK(sum.n_rows == want.n_rows);
  CHECK(static_cast<int>(sum.variables.size()) == want.n_variables);
  CHECK(static_cast<int>(sum.binaries.size()) == want.n_binaries);
  // Hand count: flow rows none (n=2), source+sink 2, visit 4, capacity 4,
  // duration 0 (no tmax), convex 6, beta block: per node with 2 breakpoints:
  // lamlink 2 + alpsum 1 + betsum 1 + betlink 1 = 5, twice.
  CHECK(want.n_rows == 2 + 4 + 4 + 6 + 10);
}

TEST_CASE("beta binary counts per node match the formula") {
  Instance inst = testutil::example1();
  std::string text = export_to_string(inst, MipVariant::Beta);
  // Node 2 has one segment (two breakpoints): one beta, two alphas.
  CHECK(text.find("bet_2_0") != std::string::npos);
  CHECK(text.find("bet_2_1") == std::string::npos);
  CHECK(text.find("alp_2_0") != std::string::npos);
  CHECK(text.find("alp_2_1") != std::string::npos);
  CHECK(text.find("alp_2_2") == std::string::npos);

  LpSummary sum;
  {
    std::istringstream in(text);
    sum = read_lp_summary(in);
  }
  LpExpectedCounts want = expected_counts(inst, MipVariant::Beta);
  CHECK(sum.n_rows == want.n_rows);
  CHECK(static_cast<int>(sum.variables.size()) == want.n_variables);
  CHECK(static_cast<int>(sum.binaries.size()) == want.n_binaries);
}

TEST_CASE("reader reproduces writer counts on random instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    RandomAreltpConfig cfg;
    cfg.n = 5 + static_cast<int>(seed % 3);
    cfg.with_tmax = seed % 2 == 0;
    Instance inst = generate_random_areltp(cfg, seed);
    for (MipVariant v :
         {MipVariant::Sos2, MipVariant::Alpha, MipVariant::Beta}) {
      std::string text = export_to_string(inst, v);
      std::istringstream in(text);
      LpSummary sum = read_lp_summary(in);
      LpExpectedCounts want = expected_counts(inst, v);
      REQUIRE(sum.n_rows == want.n_rows);
      REQUIRE(static_cast<int>(sum.variables.size()) == want.n_variables);
      REQUIRE(static_cast<int>(sum.binaries.size()) == want.n_binaries);
      REQUIRE(sum.n_sos_sets == want.n_sos_sets);
    }
  }
}

TEST_CASE("variants differ only in the linearization block") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    RandomAreltpConfig cfg;
    cfg.n = 6;
    cfg.with_tmax = true;
    Instance inst = generate_random_areltp(cfg, seed);
    auto sos2 = common_lines(export_to_string(inst, MipVariant::Sos2));
    auto alpha = common_lines(export_to_string(inst, MipVariant::Alpha));
    auto beta = common_lines(export_to_string(inst, MipVariant::Beta));
    CHECK(sos2 == alpha);
    CHECK(alpha == beta);
  }
}

TEST_CASE("the sign convention is documented in the header") {
  Instance inst = testutil::example1();
  std::string text = export_to_string(inst, MipVariant::Beta);
  CHECK(text.find("profit-change COST") != std::string::npos);
}

TEST_CASE("forbidden arcs are omitted, never big-M'd") {
  Instance inst = testutil::example1();  // arc 2->3 forbidden
  for (MipVariant v :
       {MipVariant::Sos2, MipVariant::Alpha, MipVariant::Beta}) {
    std::string text = export_to_string(inst, v);
    CHECK(text.find("x_2_3") == std::string::npos);
  }
}
