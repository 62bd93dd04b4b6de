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

#ifndef PWLSHIP_PWL_HPP
#define PWLSHIP_PWL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pwlship {

// Global comparison tolerance for slope/value ties on floating-point data.
// Integral instances never rely on it: all arithmetic on them stays exact
// in double precision (sums and products of small integers).
inline constexpr double kEps = 1e-9;

inline bool nearly_equal(double a, double b, double eps = kEps) {
  double scale = std::max({1.0, a < 0 ? -a : a, b < 0 ? -b : b});
  return (a > b ? a - b : b - a) <= eps * scale;
}

// Snaps x to the nearest integer when it is within tolerance, so that
// ceil/floor on values like 2.9999999996 behave as if exact.
double snap_to_int(double x);
double int_ceil(double x);
double int_floor(double x);
bool is_integral(double x);

// How to recover the transfer quantity y from the load q on a segment of a
// value function.  Const: y is fixed (an f-segment border).  OffsetFromQ:
// the predecessor load is fixed, y = q - value.
enum class YRule : std::uint8_t { None, Const, OffsetFromQ };

// Back-pointer payload carried by value-function segments so an optimal
// solution can be reconstructed without re-running the recursion.
struct SegmentTag {
  int pred = -1;            // predecessor node index, -1 = none
  YRule rule = YRule::None; // how to recover y at this segment
  double rule_value = 0.0;  // y = rule_value, or y = q - rule_value
  double pred_budget = 0.0; // duration budget of the predecessor pair (DP3d)
  int path_id = -1;         // connection path used to reach this node, -1 = direct

  bool operator==(const SegmentTag&) const = default;
};

// One linear piece on a closed interval [lo, hi].  lo == hi encodes a
// single point, which is first class: profit domains like [0,0] encode
// "visit without transfer".
struct Segment {
  double slope = 0.0;
  double intercept = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  SegmentTag tag;

  double value_at(double q) const { return slope * q + intercept; }
  double value_lo() const { return value_at(lo); }
  double value_hi() const { return value_at(hi); }
  bool is_point() const { return lo >= hi; }
  bool contains(double q, double eps = kEps) const {
    return q >= lo - eps && q <= hi + eps;
  }

  static Segment through(double x1, double y1, double x2, double y2,
                         SegmentTag tag = {});
  static Segment point(double x, double y, SegmentTag tag = {});
};

// A lower-semicontinuous piecewise-linear function stored as an ordered
// sequence of segments.  Consecutive segments satisfy prev.hi <= next.lo;
// gaps are allowed, overlap is not.  At a shared border the function value
// is the minimum over the segments containing the point, so dominated
// values never hide smaller reachable ones.
class PwlFunction {
 public:
  PwlFunction() = default;
  explicit PwlFunction(std::vector<Segment> segments);

  // Builds a function from breakpoint pairs (x, y).  Strictly increasing x
  // values produce closed segments between consecutive pairs; a repeated x
  // starts a new piece (a jump).  A single pair yields a point segment.
  static PwlFunction from_breakpoints(
      const std::vector<std::pair<double, double>>& pts);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  std::size_t size() const { return segments_.size(); }

  double domain_min() const { return segments_.front().lo; }
  double domain_max() const { return segments_.back().hi; }

  // Minimum over segments containing q; nullopt outside the domain.
  std::optional<double> evaluate(double q) const;

  // The segment index attaining evaluate(q), ties broken by smallest
  // tag.pred then storage order.  nullopt outside the domain.
  std::optional<std::size_t> argmin_segment(double q) const;

  // (q*, value) minimizing the function over its whole domain; ties go to
  // the smallest q*.  Requires a nonempty function.
  std::pair<double, double> min_point() const;

  PwlFunction shifted(double c) const;
  PwlFunction clipped(double lo, double hi) const;
  PwlFunction with_pred(int pred) const;  // stamps tag.pred on every segment

  // Structural invariants: ordered, non-overlapping, lo <= hi.
  bool is_valid(std::string* why = nullptr) const;
  bool is_monotone_nondecreasing(double eps = kEps) const;
  // Gap-free domain and matching values at interior borders.
  bool is_continuous(double eps = kEps) const;

  // Merges touching collinear segments with identical tags and drops point
  // segments that duplicate a neighbour's value.
  void normalize();

 private:
  std::vector<Segment> segments_;
};

// Pointwise minimum of a family of functions over the union of their
// domains, computed divide-and-conquer.  Ties keep the earlier input.
// Throws std::invalid_argument on an empty family.
PwlFunction envelope(std::span<const PwlFunction> fs);
PwlFunction envelope(const PwlFunction& a, const PwlFunction& b);

// (V ⊞ f)(q) = min { V(q-y) + f(y) : y in D(f), q-y in D(V) }.
// Built per pair of segments from the corner points of the feasible-state
// parallelogram; output tags keep the V-side provenance and record how to
// recover y.  Throws std::invalid_argument if either input is empty.
PwlFunction superpose(const PwlFunction& v, const PwlFunction& f);

// Restricts segment domains to integer borders while preserving the value
// at every integer point of the input domain.  Touching segments whose
// shared integer border carries two values get the dominated side shrunk
// by one unit; emptied segments are removed.  May return an empty function
// when the domain contains no integer.
PwlFunction integerize(const PwlFunction& f);

}  // namespace pwlship

#endif  // PWLSHIP_PWL_HPP
