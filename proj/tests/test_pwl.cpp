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

#include <cmath>

#include "pwlship/pwl.hpp"
#include "testutil.hpp"

using namespace pwlship;
using testutil::probe_points;
using testutil::random_pwl;
using testutil::superpose_brute;

namespace {

PwlFunction line(double slope, double intercept, double lo, double hi) {
  Segment s;
  s.slope = slope;
  s.intercept = intercept;
  s.lo = lo;
  s.hi = hi;
  return PwlFunction({s});
}

}  // namespace

TEST_CASE("evaluate inside and outside the domain") {
  PwlFunction f = line(-4, 0, 0, 1);
  CHECK(*f.evaluate(0.5) == doctest::Approx(-2.0));
  CHECK(!f.evaluate(2.0).has_value());
  CHECK(!f.evaluate(-0.5).has_value());
}

TEST_CASE("evaluate takes the minimum at a shared border") {
  // V2 of the worked example: 2q on [0,1], 4q-2 on [1,2] (continuous),
  // plus a deliberately dominated point at q=1.
  PwlFunction v2 = PwlFunction::from_breakpoints({{0, 0}, {1, 2}, {2, 6}});
  CHECK(*v2.evaluate(1.5) == doctest::Approx(4.0));
  CHECK(*v2.evaluate(1.0) == doctest::Approx(2.0));

  PwlFunction with_jump =
      PwlFunction::from_breakpoints({{0, 0}, {1, -2}, {1, -1}, {2, -3}});
  CHECK(*with_jump.evaluate(1.0) == doctest::Approx(-2.0));
}

TEST_CASE("from_breakpoints builds points and jumps") {
  PwlFunction pt = PwlFunction::from_breakpoints({{0, 0}});
  CHECK(pt.size() == 1);
  CHECK(pt.segments()[0].is_point());

  PwlFunction jump =
      PwlFunction::from_breakpoints({{0, 0}, {1, -2}, {1, -1}, {2, -3}});
  CHECK(jump.size() == 2);
}

TEST_CASE("shift adds a constant everywhere") {
  PwlFunction f = line(4, 0, 0, 1);
  PwlFunction g = f.shifted(3);
  CHECK(*g.evaluate(0.0) == doctest::Approx(3.0));
  CHECK(*g.evaluate(1.0) == doctest::Approx(7.0));
  PwlFunction id = f.shifted(0);
  for (double q : probe_points(f)) {
    CHECK(*id.evaluate(q) == doctest::Approx(*f.evaluate(q)));
  }
  Rng rng(11);
  for (int it = 0; it < 50; ++it) {
    PwlFunction h = random_pwl(rng);
    double c = static_cast<double>(rng.uniform_int(-9, 9));
    PwlFunction hc = h.shifted(c);
    for (double q : probe_points(h)) {
      CHECK(*hc.evaluate(q) == doctest::Approx(*h.evaluate(q) + c));
    }
  }
}

TEST_CASE("envelope of one function is that function") {
  PwlFunction f = line(1, 0, 0, 2);
  std::vector<PwlFunction> fs{f};
  PwlFunction e = envelope(std::span<const PwlFunction>(fs));
  for (double q : probe_points(f)) {
    CHECK(*e.evaluate(q) == doctest::Approx(*f.evaluate(q)));
  }
}

TEST_CASE("envelope of a symmetric crossing") {
  PwlFunction a = line(1, 0, 0, 2);     // q
  PwlFunction b = line(-1, 2, 0, 2);    // 2 - q
  PwlFunction e = envelope(a, b);
  CHECK(*e.evaluate(0.0) == doctest::Approx(0.0));
  CHECK(*e.evaluate(0.5) == doctest::Approx(0.5));
  CHECK(*e.evaluate(1.0) == doctest::Approx(1.0));
  CHECK(*e.evaluate(1.5) == doctest::Approx(0.5));
  CHECK(*e.evaluate(2.0) == doctest::Approx(0.0));
  CHECK(e.size() == 2);
}

TEST_CASE("envelope throws on empty input") {
  std::vector<PwlFunction> none;
  CHECK_THROWS_AS(envelope(std::span<const PwlFunction>(none)),
                  std::invalid_argument);
}

TEST_CASE("envelope keeps disjoint domains and point segments") {
  PwlFunction a = line(0, 5, 0, 1);
  PwlFunction b = line(0, 1, 3, 4);
  PwlFunction e = envelope(a, b);
  CHECK(*e.evaluate(0.5) == doctest::Approx(5.0));
  CHECK(!e.evaluate(2.0).has_value());
  CHECK(*e.evaluate(3.5) == doctest::Approx(1.0));

  // A point strictly below a covering segment must stay reachable.
  PwlFunction pt = PwlFunction({Segment::point(0.5, -7.0)});
  PwlFunction e2 = envelope(a, pt);
  CHECK(*e2.evaluate(0.5) == doctest::Approx(-7.0));
  CHECK(*e2.evaluate(0.25) == doctest::Approx(5.0));
}

TEST_CASE("envelope ties keep the earlier input") {
  PwlFunction a = line(1, 0, 0, 2);
  PwlFunction b = line(1, 0, 0, 2);
  std::vector<Segment> tagged = b.segments();
  tagged[0].tag.pred = 7;
  PwlFunction b2(tagged);
  PwlFunction e = envelope(a, b2);
  REQUIRE(e.size() == 1);
  CHECK(e.segments()[0].tag.pred == -1);  // from a, not from b2
}

TEST_CASE("pointwise envelope correctness on random pairs") {
  Rng rng(2026);
  for (int it = 0; it < 300; ++it) {
    bool integral = it % 2 == 0;
    PwlFunction a = random_pwl(rng, integral);
    PwlFunction b = random_pwl(rng, integral);
    PwlFunction e = envelope(a, b);
    for (double q : probe_points({&a, &b, &e})) {
      auto va = a.evaluate(q);
      auto vb = b.evaluate(q);
      auto ve = e.evaluate(q);
      std::optional<double> want;
      if (va && vb) want = std::min(*va, *vb);
      else if (va) want = va;
      else if (vb) want = vb;
      REQUIRE(ve.has_value() == want.has_value());
      if (want) {
        REQUIRE(*ve == doctest::Approx(*want).epsilon(1e-9));
      }
    }
    std::string why;
    REQUIRE(e.is_valid(&why));
  }
}

TEST_CASE("envelope output stays within a small factor of its input") {
  Rng rng(5);
  for (int it = 0; it < 50; ++it) {
    std::vector<PwlFunction> fs;
    std::size_t total = 0;
    int count = static_cast<int>(rng.uniform_int(2, 9));
    for (int k = 0; k < count; ++k) {
      fs.push_back(random_pwl(rng, false));
      total += fs.back().size();
    }
    PwlFunction e = envelope(std::span<const PwlFunction>(fs));
    CHECK(e.size() <= 4 * total + 16);
  }
}

TEST_CASE("superpose identity element") {
  PwlFunction zero_point = PwlFunction({Segment::point(0.0, 0.0)});
  Rng rng(3);
  for (int it = 0; it < 30; ++it) {
    PwlFunction f = random_pwl(rng);
    PwlFunction s = superpose(zero_point, f);
    for (double q : probe_points(f)) {
      REQUIRE(*s.evaluate(q) == doctest::Approx(*f.evaluate(q)));
    }
  }
}

TEST_CASE("superpose of two increasing lines") {
  PwlFunction v = line(1, 0, 0, 1);   // q on [0,1]
  PwlFunction f = line(2, 0, 0, 1);   // 2y on [0,1]
  PwlFunction s = superpose(v, f);
  // Derived by brute force: q on [0,1], 2q-1 on (1,2].
  CHECK(*s.evaluate(0.0) == doctest::Approx(0.0));
  CHECK(*s.evaluate(0.5) == doctest::Approx(0.5));
  CHECK(*s.evaluate(1.0) == doctest::Approx(1.0));
  CHECK(*s.evaluate(1.5) == doctest::Approx(2.0));
  CHECK(*s.evaluate(2.0) == doctest::Approx(3.0));
  for (double q = 0.0; q <= 2.0; q += 1e-3 * 7) {
    auto got = s.evaluate(q);
    auto want = superpose_brute(v, f, q, 1e-3);
    REQUIRE(got.has_value());
    REQUIRE(*got == doctest::Approx(*want).epsilon(1e-6));
  }
}

TEST_CASE("superpose against brute force on random pairs") {
  Rng rng(99);
  for (int it = 0; it < 200; ++it) {
    bool integral = it % 2 == 0;
    PwlFunction v = random_pwl(rng, integral);
    PwlFunction f = random_pwl(rng, integral);
    PwlFunction s = superpose(v, f);
    std::string why;
    REQUIRE(s.is_valid(&why));
    // Probe at sums of breakpoints and midpoints between them.
    std::vector<double> qs;
    for (const Segment& sv : v.segments()) {
      for (const Segment& sf : f.segments()) {
        qs.push_back(sv.lo + sf.lo);
        qs.push_back(sv.lo + sf.hi);
        qs.push_back(sv.hi + sf.lo);
        qs.push_back(sv.hi + sf.hi);
      }
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    std::vector<double> probes = qs;
    for (std::size_t i = 1; i < qs.size(); ++i) {
      probes.push_back(0.5 * (qs[i - 1] + qs[i]));
    }
    for (double q : probes) {
      auto got = s.evaluate(q);
      auto want = superpose_brute(v, f, q);
      REQUIRE(got.has_value() == want.has_value());
      if (want) {
        REQUIRE(*got == doctest::Approx(*want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("superpose preserves monotonicity and continuity") {
  Rng rng(0xC0FFEE);
  int monotone_checked = 0, continuous_checked = 0;
  for (int it = 0; it < 250; ++it) {
    PwlFunction v = random_pwl(rng, true, false, true);
    PwlFunction f = random_pwl(rng, true, false, true);
    REQUIRE(v.is_monotone_nondecreasing());
    REQUIRE(f.is_monotone_nondecreasing());
    PwlFunction s = superpose(v, f);
    CHECK(s.is_monotone_nondecreasing(1e-7));
    ++monotone_checked;
  }
  for (int it = 0; it < 250; ++it) {
    PwlFunction v = random_pwl(rng, true, true, false);
    PwlFunction f = random_pwl(rng, true, true, false);
    REQUIRE(v.is_continuous());
    REQUIRE(f.is_continuous());
    PwlFunction s = superpose(v, f);
    CHECK(s.is_continuous(1e-7));
    ++continuous_checked;
  }
  CHECK(monotone_checked == 250);
  CHECK(continuous_checked == 250);
}

TEST_CASE("integerize on plain segments") {
  PwlFunction f = line(2, 0, 0.3, 2.7);
  PwlFunction g = integerize(f);
  REQUIRE(g.size() == 1);
  CHECK(g.segments()[0].lo == 1.0);
  CHECK(g.segments()[0].hi == 2.0);

  PwlFunction tiny = line(1, 0, 0.3, 0.7);
  CHECK(integerize(tiny).empty());
}

TEST_CASE("integerize shrinks the dominated side of a touching border") {
  // Two touching segments with different values at the shared border.
  Segment left;
  left.slope = 0;
  left.intercept = 5;
  left.lo = 0;
  left.hi = 2;
  Segment right;
  right.slope = 0;
  right.intercept = 1;
  right.lo = 2;
  right.hi = 4;
  PwlFunction f({left, right});
  PwlFunction g = integerize(f);
  // Left is dominated at q=2: shrink to [0,1].
  REQUIRE(g.size() == 2);
  CHECK(g.segments()[0].hi == 1.0);
  CHECK(g.segments()[1].lo == 2.0);
  for (int k = 0; k <= 4; ++k) {
    REQUIRE(*g.evaluate(k) == doctest::Approx(*f.evaluate(k)));
  }
}

TEST_CASE("integerize preserves every integer value on random functions") {
  Rng rng(77);
  for (int it = 0; it < 300; ++it) {
    PwlFunction f = random_pwl(rng, it % 3 != 0);  // mix of borders
    PwlFunction g = integerize(f);
    std::string why;
    REQUIRE(g.is_valid(&why));
    CHECK(g.size() <= f.size());
    for (const Segment& s : g.segments()) {
      CHECK(is_integral(s.lo));
      CHECK(is_integral(s.hi));
    }
    if (f.empty()) continue;
    long lo = static_cast<long>(std::ceil(f.domain_min() - 1));
    long hi = static_cast<long>(std::floor(f.domain_max() + 1));
    for (long k = lo; k <= hi; ++k) {
      auto vf = f.evaluate(static_cast<double>(k));
      auto vg = g.evaluate(static_cast<double>(k));
      REQUIRE(vf.has_value() == vg.has_value());
      if (vf) {
        REQUIRE(*vg == doctest::Approx(*vf).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("worked example value functions") {
  Instance inst = testutil::example1();
  // V2 = (V1 + c12) [+] f2.
  PwlFunction v1 = inst.profit[0].clipped(0, 3);
  PwlFunction v2 = superpose(v1, inst.profit[1]);
  CHECK(*v2.evaluate(0.5) == doctest::Approx(1.0));
  CHECK(*v2.evaluate(1.0) == doctest::Approx(2.0));
  CHECK(*v2.evaluate(1.5) == doctest::Approx(4.0));
  CHECK(*v2.evaluate(2.0) == doctest::Approx(6.0));

  PwlFunction v3 = superpose(v1, inst.profit[2]);
  for (double q = 0; q <= 3.0; q += 0.5) {
    CHECK(*v3.evaluate(q) == doctest::Approx(4 * q));
  }

  std::vector<PwlFunction> preds{v1, v2, v3};
  PwlFunction tilde4 = envelope(std::span<const PwlFunction>(preds));
  CHECK(*tilde4.evaluate(0.5) == doctest::Approx(1.0));
  CHECK(*tilde4.evaluate(1.5) == doctest::Approx(4.0));
  CHECK(*tilde4.evaluate(2.5) == doctest::Approx(10.0));

  PwlFunction v4 = superpose(tilde4, inst.profit[3]).clipped(0, 3);
  CHECK(*v4.evaluate(0.0) == doctest::Approx(-4.0));
  CHECK(*v4.evaluate(2.0) == doctest::Approx(6.0));
  CHECK(*v4.evaluate(3.0) == doctest::Approx(12.0));
  auto [qstar, vstar] = v4.min_point();
  CHECK(qstar == doctest::Approx(0.0));
  CHECK(vstar == doctest::Approx(-4.0));
}
