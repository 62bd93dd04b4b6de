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
#include "pwlship/json_io.hpp"
#include "testutil.hpp"

using namespace pwlship;

TEST_CASE("T_max follows the published formula") {
  // max t = 9 and consecutive sum 40 with theta = 2/5 gives 25.
  LotSizingInstance ls;
  ls.n = 5;
  ls.cost = ArcMatrix(5);
  double consec[] = {10, 10, 10, 10};
  for (int i = 0; i + 1 < 5; ++i) ls.cost.set(i, i + 1, consec[i]);
  // (the generator computes T_max itself; reproduce the arithmetic here)
  double max_t = 9, sum = 40, theta = 2.0 / 5.0;
  CHECK(max_t + theta * sum == doctest::Approx(25.0));

  LotSizingInstance gen = generate_lswrc(10, SizeClass::Small,
                                         SizeClass::Small, 3);
  double gmax = 0, gsum = 0;
  for (int i = 0; i < gen.n; ++i) {
    for (int j = i + 1; j < gen.n; ++j) {
      gmax = std::max(gmax, gen.time.at(i, j));
      if (j == i + 1) gsum += gen.time.at(i, j);
    }
  }
  REQUIRE(gen.tmax.has_value());
  CHECK(*gen.tmax == doctest::Approx(gmax + (2.0 / 5.0) * gsum));
}

TEST_CASE("generation is deterministic for fixed arguments") {
  for (std::uint64_t seed : {1ull, 42ull, 31337ull}) {
    LotSizingInstance a = generate_lswrc(12, SizeClass::Medium,
                                         SizeClass::Large, seed);
    LotSizingInstance b = generate_lswrc(12, SizeClass::Medium,
                                         SizeClass::Large, seed);
    InstanceFile fa{a, {}};
    InstanceFile fb{b, {}};
    CHECK(save_instance(fa) == save_instance(fb));
  }
  InstanceFile f1{generate_lswrc(12, SizeClass::Medium, SizeClass::Large, 1),
                  {}};
  InstanceFile f2{generate_lswrc(12, SizeClass::Medium, SizeClass::Large, 2),
                  {}};
  CHECK(save_instance(f1) != save_instance(f2));
}

TEST_CASE("generated production costs are concave with three steps") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    LotSizingInstance ls = generate_lswrc(8, SizeClass::Small,
                                          SizeClass::Medium, seed);
    for (int i = 0; i < ls.n; ++i) {
      const auto& segs = ls.prod_cost[i].segments();
      REQUIRE(segs.size() == 3);
      CHECK(segs[0].slope > segs[1].slope);
      CHECK(segs[1].slope > segs[2].slope);
      CHECK(segs[2].slope >= 1.0);
      CHECK(ls.demand[i] >= ls.bound_lo(i));
      CHECK(ls.demand[i] <= ls.bound_hi(i));
      // Normalized at the default lot.
      CHECK(*ls.prod_cost[i].evaluate(ls.demand[i]) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("a theta of one keeps the lot-for-lot chain within budget") {
  for (std::uint64_t seed = 50; seed < 70; ++seed) {
    LotSizingInstance ls = generate_lswrc(10, SizeClass::Small,
                                          SizeClass::Small, seed);
    double consec = 0, max_t = 0;
    for (int i = 0; i < ls.n; ++i) {
      for (int j = i + 1; j < ls.n; ++j) {
        max_t = std::max(max_t, ls.time.at(i, j));
        if (j == i + 1) consec += ls.time.at(i, j);
      }
    }
    double tmax_theta1 = max_t + 1.0 * consec;  // theta = 1
    CHECK(consec <= tmax_theta1 + 1e-9);
  }
}

TEST_CASE("srltp profits have four steps around zero") {
  OrienteeringData base = synthetic_orienteering(15, 5);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SrltpInstance gen = generate_srltp(base, 60, seed);
    REQUIRE(gen.instance.n == base.n());
    for (const PwlFunction& f : gen.instance.profit) {
      CHECK(f.size() == 4);
      CHECK(f.domain_min() <= 0.0);
      CHECK(f.domain_max() >= 0.0);
      CHECK(*f.evaluate(0.0) == doctest::Approx(0.0));
    }
    auto violations = gen.instance.validate_instance();
    CHECK(violations.empty());
    CHECK(gen.instance.cost_metric);
  }
}

TEST_CASE("nearest neighbour degenerates to the greedy route with k = 1") {
  OrienteeringData base = synthetic_orienteering(12, 9);
  SrltpGenConfig cfg;
  cfg.nn_k = 1;
  SrltpInstance a = generate_srltp(base, 30, 1, cfg);
  SrltpInstance b = generate_srltp(base, 30, 999, cfg);
  CHECK(a.route == b.route);  // no randomness left
  // Verify the greedy property directly.
  std::vector<char> used(base.n(), 0);
  int cur = 0;
  used[0] = 1;
  for (std::size_t k = 1; k < a.route.size(); ++k) {
    double best = 1e300;
    int pick = -1;
    for (int j = 0; j < base.n(); ++j) {
      if (used[j]) continue;
      double d = std::hypot(base.x[j] - base.x[cur], base.y[j] - base.y[cur]);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    CHECK(a.route[k] == pick);
    used[pick] = 1;
    cur = pick;
  }
}

TEST_CASE("fixed seeds reproduce identical srltp routes") {
  OrienteeringData base = synthetic_orienteering(20, 11);
  SrltpInstance a = generate_srltp(base, 120, 77);
  SrltpInstance b = generate_srltp(base, 120, 77);
  CHECK(a.route == b.route);
  InstanceFile fa{a.instance, {}};
  InstanceFile fb{b.instance, {}};
  CHECK(save_instance(fa) == save_instance(fb));
}

TEST_CASE("orienteering parser handles fixtures") {
  SUBCASE("three synthetic nodes") {
    std::istringstream in("60 2\n1 2 3\n4.5 5 6\n7 8 9.25\n");
    OrienteeringData d = parse_orienteering(in);
    CHECK(d.tmax == doctest::Approx(60.0));
    REQUIRE(d.n() == 3);
    CHECK(d.x[1] == doctest::Approx(4.5));
    CHECK(d.score[2] == doctest::Approx(9.25));
  }
  SUBCASE("header-only file") {
    std::istringstream in("42.5\n");
    OrienteeringData d = parse_orienteering(in);
    CHECK(d.tmax == doctest::Approx(42.5));
    CHECK(d.n() == 0);
  }
  SUBCASE("malformed line is reported with its number") {
    std::istringstream in("60\n1 2 3\n4 oops 6\n");
    try {
      parse_orienteering(in);
      FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("missing header") {
    std::istringstream in("");
    CHECK_THROWS_AS(parse_orienteering(in), std::runtime_error);
  }
  SUBCASE("write-then-parse round trip") {
    OrienteeringData d = synthetic_orienteering(9, 123);
    std::stringstream buf;
    write_orienteering(buf, d);
    OrienteeringData back = parse_orienteering(buf);
    CHECK(back.tmax == doctest::Approx(d.tmax));
    REQUIRE(back.n() == d.n());
    for (int i = 0; i < d.n(); ++i) {
      CHECK(back.x[i] == doctest::Approx(d.x[i]));
      CHECK(back.y[i] == doctest::Approx(d.y[i]));
      CHECK(back.score[i] == doctest::Approx(d.score[i]));
    }
  }
}

TEST_CASE("instance json round trip is exact for integral data") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LotSizingInstance ls = generate_lswrc(7, SizeClass::Small,
                                          SizeClass::Large, seed);
    InstanceFile file{ls, nlohmann::json{{"seed", seed}}};
    std::string text = save_instance(file);
    InstanceFile back = instance_from_json(nlohmann::json::parse(text));
    CHECK(save_instance(back) == text);
  }
  RandomAreltpConfig cfg;
  cfg.n = 6;
  cfg.with_tmax = true;
  Instance inst = generate_random_areltp(cfg, 5);
  InstanceFile file{inst, {}};
  std::string text = save_instance(file);
  InstanceFile back = instance_from_json(nlohmann::json::parse(text));
  CHECK(save_instance(back) == text);
}
