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

#include "pwlship/pwl.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pwlship {

namespace {

constexpr double kPointEps = 1e-12;

double eps_scale(double a, double b) {
  return std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

double snap_to_int(double x) {
  double r = std::round(x);
  if (std::fabs(x - r) <= kEps * std::max(1.0, std::fabs(x))) return r;
  return x;
}

double int_ceil(double x) { return std::ceil(snap_to_int(x)); }

double int_floor(double x) { return std::floor(snap_to_int(x)); }

bool is_integral(double x) {
  double s = snap_to_int(x);
  return s == std::floor(s) && std::fabs(s) < 9.0e15;
}

Segment Segment::through(double x1, double y1, double x2, double y2,
                         SegmentTag tag) {
  Segment s;
  s.lo = x1;
  s.hi = x2;
  s.tag = tag;
  if (x2 - x1 <= kPointEps) {
    s.hi = s.lo;
    s.slope = 0.0;
    s.intercept = y1;
  } else {
    s.slope = (y2 - y1) / (x2 - x1);
    s.intercept = y1 - s.slope * x1;
  }
  return s;
}

Segment Segment::point(double x, double y, SegmentTag tag) {
  Segment s;
  s.lo = s.hi = x;
  s.slope = 0.0;
  s.intercept = y;
  s.tag = tag;
  return s;
}

PwlFunction::PwlFunction(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  std::stable_sort(segments_.begin(), segments_.end(),
                   [](const Segment& a, const Segment& b) {
                     if (a.lo != b.lo) return a.lo < b.lo;
                     return a.hi < b.hi;
                   });
  std::string why;
  if (!is_valid(&why)) {
    throw std::invalid_argument("invalid piecewise-linear function: " + why);
  }
}

PwlFunction PwlFunction::from_breakpoints(
    const std::vector<std::pair<double, double>>& pts) {
  if (pts.empty()) return PwlFunction();
  std::vector<Segment> segs;
  std::vector<bool> covered(pts.size(), false);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1].first < pts[i].first) {
      throw std::invalid_argument("breakpoints not sorted by x");
    }
    if (pts[i + 1].first > pts[i].first) {
      segs.push_back(Segment::through(pts[i].first, pts[i].second,
                                      pts[i + 1].first, pts[i + 1].second));
      covered[i] = covered[i + 1] = true;
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!covered[i]) {
      segs.push_back(Segment::point(pts[i].first, pts[i].second));
    }
  }
  return PwlFunction(std::move(segs));
}

std::optional<double> PwlFunction::evaluate(double q) const {
  std::optional<double> best;
  if (segments_.empty()) return best;
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), q,
      [](double value, const Segment& s) { return value < s.lo; });
  // Segments after `it` may still contain q through eps slack on lo.
  std::size_t idx = static_cast<std::size_t>(it - segments_.begin());
  if (idx < segments_.size() && segments_[idx].contains(q)) {
    best = segments_[idx].value_at(q);
  }
  while (idx > 0) {
    const Segment& s = segments_[--idx];
    if (s.hi < q - kEps * eps_scale(s.hi, q)) break;
    if (s.contains(q)) {
      double v = s.value_at(q);
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

std::optional<std::size_t> PwlFunction::argmin_segment(double q) const {
  std::optional<std::size_t> best;
  double best_value = 0.0;
  auto consider = [&](std::size_t i) {
    const Segment& s = segments_[i];
    if (!s.contains(q)) return;
    double v = s.value_at(q);
    if (!best || v < best_value - kEps * eps_scale(v, best_value)) {
      best = i;
      best_value = v;
    } else if (nearly_equal(v, best_value) &&
               s.tag.pred < segments_[*best].tag.pred) {
      best = i;
      best_value = std::min(best_value, v);
    }
  };
  if (segments_.empty()) return best;
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), q,
      [](double value, const Segment& s) { return value < s.lo; });
  std::size_t idx = static_cast<std::size_t>(it - segments_.begin());
  if (idx < segments_.size()) consider(idx);
  while (idx > 0) {
    --idx;
    if (segments_[idx].hi < q - kEps * eps_scale(segments_[idx].hi, q)) break;
    consider(idx);
  }
  return best;
}

std::pair<double, double> PwlFunction::min_point() const {
  if (segments_.empty()) {
    throw std::logic_error("min_point on empty function");
  }
  double best_q = segments_.front().lo;
  double best_v = segments_.front().value_lo();
  auto consider = [&](double q, double v) {
    if (v < best_v - kEps * eps_scale(v, best_v) ||
        (nearly_equal(v, best_v) && q < best_q)) {
      best_q = q;
      best_v = std::min(best_v, v);
    }
  };
  for (const Segment& s : segments_) {
    consider(s.lo, s.value_lo());
    consider(s.hi, s.value_hi());
  }
  return {best_q, best_v};
}

PwlFunction PwlFunction::shifted(double c) const {
  PwlFunction out = *this;
  for (Segment& s : out.segments_) s.intercept += c;
  return out;
}

PwlFunction PwlFunction::clipped(double lo, double hi) const {
  std::vector<Segment> segs;
  for (const Segment& s : segments_) {
    double a = std::max(s.lo, lo);
    double b = std::min(s.hi, hi);
    if (a > b) continue;
    Segment t = s;
    t.lo = a;
    t.hi = b;
    segs.push_back(t);
  }
  PwlFunction out;
  out.segments_ = std::move(segs);
  return out;
}

PwlFunction PwlFunction::with_pred(int pred) const {
  PwlFunction out = *this;
  for (Segment& s : out.segments_) {
    s.tag = SegmentTag{};
    s.tag.pred = pred;
  }
  return out;
}

bool PwlFunction::is_valid(std::string* why) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!(s.lo <= s.hi)) {
      if (why) *why = "segment with lo > hi";
      return false;
    }
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) ||
        !std::isfinite(s.slope) || !std::isfinite(s.intercept)) {
      if (why) *why = "non-finite segment data";
      return false;
    }
    if (i > 0 && segments_[i - 1].hi > s.lo + kPointEps) {
      if (why) *why = "overlapping segment domains";
      return false;
    }
  }
  return true;
}

bool PwlFunction::is_monotone_nondecreasing(double eps) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!s.is_point() && s.slope < -eps) return false;
    if (i > 0) {
      const Segment& p = segments_[i - 1];
      // Function value at the next piece's start must not drop below the
      // value reachable at the previous piece's end.
      double prev_end = *evaluate(p.hi);
      double next_start = *evaluate(s.lo);
      if (next_start < prev_end - eps * eps_scale(next_start, prev_end)) {
        return false;
      }
    }
  }
  return true;
}

bool PwlFunction::is_continuous(double eps) const {
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const Segment& p = segments_[i - 1];
    const Segment& s = segments_[i];
    if (s.lo > p.hi + eps * eps_scale(s.lo, p.hi)) return false;  // gap
    if (!nearly_equal(p.value_hi(), s.value_lo(), eps)) return false;
  }
  return true;
}

void PwlFunction::normalize() {
  if (segments_.empty()) return;
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (const Segment& s : segments_) {
    if (!out.empty()) {
      Segment& p = out.back();
      bool touching = nearly_equal(p.hi, s.lo, kPointEps);
      bool same_line = p.slope == s.slope && p.intercept == s.intercept;
      if (touching && same_line && p.tag == s.tag) {
        p.hi = s.hi;
        continue;
      }
      // A point segment that merely repeats the neighbour's value is noise.
      if (s.is_point() && touching &&
          nearly_equal(p.value_hi(), s.value_at(s.lo), kPointEps)) {
        continue;
      }
      if (p.is_point() && touching &&
          nearly_equal(p.value_at(p.lo), s.value_lo(), kPointEps)) {
        out.back() = s;
        continue;
      }
    }
    out.push_back(s);
  }
  segments_ = std::move(out);
}

namespace {

// Lower envelope of two functions by sweeping the elementary intervals
// between domain borders; crossings split intervals, ties keep `a`.
PwlFunction envelope_pair(const PwlFunction& a, const PwlFunction& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;

  std::vector<double> events;
  events.reserve(2 * (a.size() + b.size()));
  for (const Segment& s : a.segments()) {
    events.push_back(s.lo);
    events.push_back(s.hi);
  }
  for (const Segment& s : b.segments()) {
    events.push_back(s.lo);
    events.push_back(s.hi);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double x, double y) {
                             return y - x <= kPointEps;
                           }),
               events.end());

  // Covering segment of f over the open interval (e1, e2); nullptr if none.
  auto covering = [](const PwlFunction& f, double e1,
                     double e2) -> const Segment* {
    double mid = 0.5 * (e1 + e2);
    auto it = std::upper_bound(
        f.segments().begin(), f.segments().end(), mid,
        [](double value, const Segment& s) { return value < s.lo; });
    if (it == f.segments().begin()) return nullptr;
    --it;
    if (it->lo <= e1 + kPointEps && it->hi >= e2 - kPointEps) return &*it;
    return nullptr;
  };

  std::vector<Segment> pieces;
  auto emit = [&pieces](const Segment& src, double lo, double hi) {
    if (hi - lo <= kPointEps && !(src.is_point() && lo == hi)) {
      // Degenerate slivers are recovered by the point-repair pass.
      return;
    }
    Segment t = src;
    t.lo = lo;
    t.hi = hi;
    if (t.hi < t.lo) t.hi = t.lo;
    pieces.push_back(t);
  };

  for (std::size_t e = 0; e + 1 < events.size(); ++e) {
    double e1 = events[e];
    double e2 = events[e + 1];
    const Segment* sa = covering(a, e1, e2);
    const Segment* sb = covering(b, e1, e2);
    if (!sa && !sb) continue;
    if (sa && !sb) {
      emit(*sa, e1, e2);
      continue;
    }
    if (sb && !sa) {
      emit(*sb, e1, e2);
      continue;
    }
    double dk = sa->slope - sb->slope;
    double cross = std::numeric_limits<double>::quiet_NaN();
    if (std::fabs(dk) > kPointEps) {
      cross = (sb->intercept - sa->intercept) / dk;
    }
    auto lower_on = [&](double x1, double x2) -> const Segment* {
      double mid = 0.5 * (x1 + x2);
      double va = sa->value_at(mid);
      double vb = sb->value_at(mid);
      if (nearly_equal(va, vb)) return sa;  // tie keeps the earlier input
      return va < vb ? sa : sb;
    };
    if (std::isfinite(cross) && cross > e1 + kPointEps &&
        cross < e2 - kPointEps) {
      emit(*lower_on(e1, cross), e1, cross);
      emit(*lower_on(cross, e2), cross, e2);
    } else {
      emit(*lower_on(e1, e2), e1, e2);
    }
  }

  PwlFunction result;
  {
    std::vector<Segment> sorted = std::move(pieces);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Segment& x, const Segment& y) {
                       if (x.lo != y.lo) return x.lo < y.lo;
                       return x.hi < y.hi;
                     });
    result = PwlFunction(std::move(sorted));
  }

  // Point repair: make sure the true minimum stays reachable at every
  // border (jumps, point segments, slivers dropped above).
  std::vector<Segment> extras;
  for (double x : events) {
    std::optional<double> va = a.evaluate(x);
    std::optional<double> vb = b.evaluate(x);
    if (!va && !vb) continue;
    double truth;
    const PwlFunction* winner;
    if (va && (!vb || *va <= *vb + kPointEps)) {
      truth = vb ? std::min(*va, *vb) : *va;
      winner = (vb && *vb < *va) ? &b : &a;
    } else {
      truth = *vb;
      winner = &b;
    }
    std::optional<double> got = result.evaluate(x);
    if (!got || *got > truth + kEps * eps_scale(*got, truth)) {
      auto seg_idx = winner->argmin_segment(x);
      SegmentTag tag = seg_idx ? winner->segments()[*seg_idx].tag
                               : SegmentTag{};
      extras.push_back(Segment::point(x, truth, tag));
    }
  }
  if (!extras.empty()) {
    std::vector<Segment> merged = result.segments();
    // Carve the extras' positions out of any covering piece.
    for (const Segment& pt : extras) {
      std::vector<Segment> next;
      next.reserve(merged.size() + 2);
      for (const Segment& s : merged) {
        if (s.lo < pt.lo && s.hi > pt.lo) {
          Segment left = s, right = s;
          left.hi = pt.lo;
          right.lo = pt.lo;
          // Keep the original pieces open around the point by nudging the
          // shared borders onto the point itself; values above the point
          // value at pt.lo are dominated there anyway.
          next.push_back(left);
          next.push_back(pt);
          next.push_back(right);
        } else {
          next.push_back(s);
        }
      }
      bool inserted =
          next.size() != merged.size();
      merged = std::move(next);
      if (!inserted) {
        merged.push_back(pt);
      }
    }
    std::stable_sort(merged.begin(), merged.end(),
                     [](const Segment& x, const Segment& y) {
                       if (x.lo != y.lo) return x.lo < y.lo;
                       return x.hi < y.hi;
                     });
    result = PwlFunction(std::move(merged));
  }

  result.normalize();
  return result;
}

PwlFunction envelope_range(std::span<const PwlFunction> fs, std::size_t lo,
                           std::size_t hi) {
  if (hi - lo == 1) return fs[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return envelope_pair(envelope_range(fs, lo, mid), envelope_range(fs, mid, hi));
}

}  // namespace

PwlFunction envelope(const PwlFunction& a, const PwlFunction& b) {
  return envelope_pair(a, b);
}

PwlFunction envelope(std::span<const PwlFunction> fs) {
  if (fs.empty()) throw std::invalid_argument("empty envelope");
  return envelope_range(fs, 0, fs.size());
}

namespace {

// Envelope of a bag of segments treated as one-segment functions.
PwlFunction envelope_of_segments(std::vector<Segment> segs) {
  if (segs.empty()) return PwlFunction();
  std::vector<PwlFunction> fs;
  fs.reserve(segs.size());
  for (Segment& s : segs) {
    fs.push_back(PwlFunction(std::vector<Segment>{s}));
  }
  return envelope(std::span<const PwlFunction>(fs));
}

}  // namespace

PwlFunction superpose(const PwlFunction& v, const PwlFunction& f) {
  if (v.empty() || f.empty()) {
    throw std::invalid_argument("superpose needs nonempty operands");
  }

  std::vector<PwlFunction> per_f_segment;
  per_f_segment.reserve(f.size());

  for (const Segment& fs : f.segments()) {
    const double alpha = fs.lo;
    const double beta = fs.hi;
    const double w_alpha = fs.value_lo();
    const double w_beta = fs.value_hi();

    // The feasible states of a (V segment, f segment) pair form a
    // parallelogram with corners P1..P4; its lower border consists of the
    // edges below, and the envelope discards whichever pair is dominated.
    std::vector<Segment> gamma1, gamma2;  // chained edge sequences
    std::vector<Segment> bag;             // collinear leftovers (gaps allowed)

    const auto& vsegs = v.segments();
    for (std::size_t l = 0; l < vsegs.size(); ++l) {
      const Segment& vs = vsegs[l];
      const double A = vs.lo, B = vs.hi;
      const double vA = vs.value_lo(), vB = vs.value_hi();

      SegmentTag tag_y_alpha = vs.tag;
      tag_y_alpha.rule = YRule::Const;
      tag_y_alpha.rule_value = alpha;
      SegmentTag tag_y_beta = vs.tag;
      tag_y_beta.rule = YRule::Const;
      tag_y_beta.rule_value = beta;
      SegmentTag tag_q_at_A = vs.tag;
      tag_q_at_A.rule = YRule::OffsetFromQ;
      tag_q_at_A.rule_value = A;
      SegmentTag tag_q_at_B = vs.tag;
      tag_q_at_B.rule = YRule::OffsetFromQ;
      tag_q_at_B.rule_value = B;

      if (fs.is_point() && vs.is_point()) {
        gamma1.push_back(Segment::point(A + alpha, vA + w_alpha, tag_y_alpha));
        continue;
      }
      if (fs.is_point()) {
        gamma1.push_back(Segment::through(A + alpha, vA + w_alpha, B + alpha,
                                          vB + w_alpha, tag_y_alpha));
        continue;
      }
      if (vs.is_point()) {
        bag.push_back(Segment::through(A + alpha, vA + w_alpha, A + beta,
                                       vA + w_beta, tag_q_at_A));
        continue;
      }

      // omega1: f fixed at alpha, sweep V.
      gamma1.push_back(Segment::through(A + alpha, vA + w_alpha, B + alpha,
                                        vB + w_alpha, tag_y_alpha));
      // omega4: f fixed at beta, sweep V.
      gamma2.push_back(Segment::through(A + beta, vA + w_beta, B + beta,
                                        vB + w_beta, tag_y_beta));
      // omega2: V fixed at A, sweep f.
      Segment omega2 = Segment::through(A + alpha, vA + w_alpha, A + beta,
                                        vA + w_beta, tag_q_at_A);
      // omega3: V fixed at B, sweep f.
      Segment omega3 = Segment::through(B + alpha, vB + w_alpha, B + beta,
                                        vB + w_beta, tag_q_at_B);
      if (l == 0) {
        gamma2.insert(gamma2.begin(), omega2);
      } else {
        bag.push_back(omega2);
      }
      if (l + 1 == vsegs.size()) {
        gamma1.push_back(omega3);
      } else {
        bag.push_back(omega3);
      }
    }

    std::vector<PwlFunction> parts;
    if (!gamma1.empty()) parts.push_back(PwlFunction(std::move(gamma1)));
    if (!gamma2.empty()) parts.push_back(PwlFunction(std::move(gamma2)));
    if (!bag.empty()) parts.push_back(envelope_of_segments(std::move(bag)));
    per_f_segment.push_back(envelope(std::span<const PwlFunction>(parts)));
  }

  PwlFunction out = envelope(std::span<const PwlFunction>(per_f_segment));
  out.normalize();
  return out;
}

PwlFunction integerize(const PwlFunction& f) {
  std::vector<Segment> segs;
  segs.reserve(f.size());
  for (Segment s : f.segments()) {
    s.lo = int_ceil(s.lo);
    s.hi = int_floor(s.hi);
    if (s.lo > s.hi) continue;
    segs.push_back(s);
  }
  // Resolve touching borders where two values coexist: shrink the side
  // that is larger at the shared point by one unit.
  std::size_t l = 1;
  while (l < segs.size()) {
    Segment& left = segs[l - 1];
    Segment& right = segs[l];
    if (left.hi == right.lo) {
      double x = left.hi;
      double vl = left.value_at(x);
      double vr = right.value_at(x);
      if (!nearly_equal(vl, vr)) {
        if (vl < vr) {
          right.lo = x + 1;
          if (right.lo > right.hi) {
            segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(l));
            continue;
          }
        } else {
          left.hi = x - 1;
          if (left.lo > left.hi) {
            segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(l - 1));
            if (l > 1) --l;
            continue;
          }
        }
      }
    }
    ++l;
  }
  PwlFunction out;
  out = PwlFunction(std::move(segs));
  return out;
}

}  // namespace pwlship
