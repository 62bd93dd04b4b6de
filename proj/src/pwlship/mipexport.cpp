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

#include "pwlship/mipexport.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pwlship {

MipVariant mip_variant_from_string(const std::string& s) {
  if (s == "sos2") return MipVariant::Sos2;
  if (s == "alpha") return MipVariant::Alpha;
  if (s == "beta") return MipVariant::Beta;
  throw std::invalid_argument("unknown MIP variant: " + s);
}

std::string to_string(MipVariant v) {
  switch (v) {
    case MipVariant::Sos2: return "sos2";
    case MipVariant::Alpha: return "alpha";
    case MipVariant::Beta: return "beta";
  }
  return "?";
}

namespace {

std::string fmt(double v) {
  if (is_integral(v)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld",
                  static_cast<long long>(std::llround(v)));
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Breakpoint polyline (X_k, Y_k) of a profit function; repeated X encodes
// a jump.  The exporter needs a gap-free domain.
std::vector<std::pair<double, double>> breakpoints_of(const PwlFunction& f,
                                                      int node) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < f.segments().size(); ++k) {
    const Segment& s = f.segments()[k];
    if (k > 0 && f.segments()[k - 1].hi < s.lo - kEps) {
      throw std::invalid_argument(
          "MIP export needs gap-free profit domains (node " +
          std::to_string(node + 1) + ")");
    }
    bool continues = false;
    if (k > 0) {
      const Segment& p = f.segments()[k - 1];
      continues = nearly_equal(p.hi, s.lo, 1e-12) &&
                  nearly_equal(p.value_hi(), s.value_lo(), 1e-12);
    }
    if (!continues) pts.emplace_back(s.lo, s.value_lo());
    if (!s.is_point()) pts.emplace_back(s.hi, s.value_hi());
  }
  return pts;
}

struct Term {
  double coef;
  std::string var;
};

std::string row(const std::string& label, const std::vector<Term>& terms,
                const std::string& rel, double rhs) {
  std::ostringstream out;
  out << " " << label << ":";
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    double c = t.coef;
    if (first) {
      out << " ";
      if (c < 0) {
        out << "- ";
        c = -c;
      }
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
      c = std::fabs(c);
    }
    if (c != 1.0) out << fmt(c) << " ";
    out << t.var;
  }
  if (first) out << " 0 " << (terms.empty() ? "x_dummy" : terms.front().var);
  out << " " << rel << " " << fmt(rhs);
  return out.str();
}

std::string var_x(int i, int j) {
  return "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}
std::string var_y(int i) { return "y_" + std::to_string(i + 1); }
std::string var_bigy(int i) { return "Y_" + std::to_string(i + 1); }
std::string var_lam(int i, int k) {
  return "lam_" + std::to_string(i + 1) + "_" + std::to_string(k);
}
std::string var_alp(int i, int k) {
  return "alp_" + std::to_string(i + 1) + "_" + std::to_string(k);
}
std::string var_bet(int i, int k) {
  return "bet_" + std::to_string(i + 1) + "_" + std::to_string(k);
}

// Visit indicator of node i as arc terms: outflow, or inflow for node n.
std::vector<Term> visit_terms(const Instance& inst, int i, double coef) {
  std::vector<Term> terms;
  if (i == inst.n - 1) {
    for (int j = 0; j < inst.n - 1; ++j) {
      if (inst.cost.has(j, i)) terms.push_back({coef, var_x(j, i)});
    }
  } else {
    for (int j = i + 1; j < inst.n; ++j) {
      if (inst.cost.has(i, j)) terms.push_back({coef, var_x(i, j)});
    }
  }
  return terms;
}

}  // namespace

void export_mip(const Instance& inst, MipVariant variant, std::ostream& out) {
  const int n = inst.n;
  std::vector<std::vector<std::pair<double, double>>> bp(n);
  for (int i = 0; i < n; ++i) bp[i] = breakpoints_of(inst.profit[i], i);

  out << "\\ pwlship ARELTP export, variant=" << to_string(variant) << "\n";
  out << "\\ minimization form: obj = sum c_ij x_i_j + sum Y_i where\n";
  out << "\\ Y_i = f_i(y_i) is the profit-change COST of node i (a gain is\n";
  out << "\\ negative); skipped nodes contribute neither term.\n";
  out << "Minimize\n";
  {
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (inst.cost.has(i, j)) terms.push_back({inst.cost.at(i, j), var_x(i, j)});
      }
    }
    for (int i = 0; i < n; ++i) terms.push_back({1.0, var_bigy(i)});
    std::ostringstream obj;
    obj << " obj:";
    bool first = true;
    for (const Term& t : terms) {
      double c = t.coef;
      if (first) {
        obj << " ";
        if (c < 0) {
          obj << "- ";
          c = -c;
        }
        first = false;
      } else {
        obj << (c < 0 ? " - " : " + ");
        c = std::fabs(c);
      }
      if (c != 1.0) obj << fmt(c) << " ";
      obj << t.var;
    }
    out << obj.str() << "\n";
  }

  out << "Subject To\n";
  for (int i = 1; i + 1 < n; ++i) {
    std::vector<Term> terms;
    for (int j = 0; j < i; ++j) {
      if (inst.cost.has(j, i)) terms.push_back({1.0, var_x(j, i)});
    }
    for (int j = i + 1; j < n; ++j) {
      if (inst.cost.has(i, j)) terms.push_back({-1.0, var_x(i, j)});
    }
    out << row("flow_" + std::to_string(i + 1), terms, "=", 0) << "\n";
  }
  out << row("source", visit_terms(inst, 0, 1.0), "=", 1) << "\n";
  out << row("sink", visit_terms(inst, n - 1, 1.0), "=", 1) << "\n";

  for (int i = 0; i < n; ++i) {
    double a = inst.profit_lo(i), b = inst.profit_hi(i);
    std::vector<Term> lo_terms = visit_terms(inst, i, -a);
    lo_terms.insert(lo_terms.begin(), {1.0, var_y(i)});
    out << row("visitlo_" + std::to_string(i + 1), lo_terms, ">=", 0) << "\n";
    std::vector<Term> hi_terms = visit_terms(inst, i, -b);
    hi_terms.insert(hi_terms.begin(), {1.0, var_y(i)});
    out << row("visithi_" + std::to_string(i + 1), hi_terms, "<=", 0) << "\n";
  }

  for (int i = 0; i < n; ++i) {
    std::vector<Term> prefix;
    for (int j = 0; j <= i; ++j) prefix.push_back({1.0, var_y(j)});
    out << row("caplo_" + std::to_string(i + 1), prefix, ">=", 0) << "\n";
    out << row("caphi_" + std::to_string(i + 1), prefix, "<=", inst.qmax)
        << "\n";
  }

  if (inst.tmax) {
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (inst.time.has(i, j)) terms.push_back({inst.time.at(i, j), var_x(i, j)});
      }
    }
    out << row("duration", terms, "<=", *inst.tmax) << "\n";
  }

  for (int i = 0; i < n; ++i) {
    const auto& pts = bp[i];
    std::vector<Term> ccx, ccy, ccs;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      ccx.push_back({pts[k].first, var_lam(i, (int)k)});
      ccy.push_back({pts[k].second, var_lam(i, (int)k)});
      ccs.push_back({1.0, var_lam(i, (int)k)});
    }
    ccx.push_back({-1.0, var_y(i)});
    ccy.push_back({-1.0, var_bigy(i)});
    auto link = visit_terms(inst, i, -1.0);
    ccs.insert(ccs.end(), link.begin(), link.end());
    out << row("ccx_" + std::to_string(i + 1), ccx, "=", 0) << "\n";
    out << row("ccy_" + std::to_string(i + 1), ccy, "=", 0) << "\n";
    out << row("ccs_" + std::to_string(i + 1), ccs, "=", 0) << "\n";
  }

  if (variant != MipVariant::Sos2) {
    out << "\\ begin linearization " << to_string(variant) << "\n";
    for (int i = 0; i < n; ++i) {
      const int K = static_cast<int>(bp[i].size());
      if (K < 2) continue;
      for (int k = 0; k < K; ++k) {
        out << row("lamlink_" + std::to_string(i + 1) + "_" + std::to_string(k),
                   {{1.0, var_lam(i, k)}, {-1.0, var_alp(i, k)}}, "<=", 0)
            << "\n";
      }
      {
        std::vector<Term> terms;
        for (int k = 0; k < K; ++k) terms.push_back({1.0, var_alp(i, k)});
        out << row("alpsum_" + std::to_string(i + 1), terms, "=", 2) << "\n";
      }
      if (variant == MipVariant::Alpha) {
        for (int k = 0; k + 2 < K; ++k) {
          for (int k2 = k + 2; k2 < K; ++k2) {
            out << row("alppair_" + std::to_string(i + 1) + "_" +
                           std::to_string(k) + "_" + std::to_string(k2),
                       {{1.0, var_alp(i, k)}, {1.0, var_alp(i, k2)}}, "<=", 1)
                << "\n";
          }
        }
      } else {
        std::vector<Term> bsum;
        for (int k = 0; k + 1 < K; ++k) bsum.push_back({1.0, var_bet(i, k)});
        out << row("betsum_" + std::to_string(i + 1), bsum, "=", 1) << "\n";
        for (int k = 0; k + 1 < K; ++k) {
          out << row("betlink_" + std::to_string(i + 1) + "_" +
                         std::to_string(k),
                     {{2.0, var_bet(i, k)},
                      {-1.0, var_alp(i, k)},
                      {-1.0, var_alp(i, k + 1)}},
                     "<=", 0)
              << "\n";
        }
      }
    }
    out << "\\ end linearization\n";
  }

  out << "Bounds\n";
  for (int i = 0; i < n; ++i) {
    double lo = std::min(inst.profit_lo(i), 0.0);
    double hi = std::max(inst.profit_hi(i), 0.0);
    out << " " << fmt(lo) << " <= " << var_y(i) << " <= " << fmt(hi) << "\n";
  }
  for (int i = 0; i < n; ++i) {
    out << " " << var_bigy(i) << " free\n";
  }
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < bp[i].size(); ++k) {
      out << " 0 <= " << var_lam(i, (int)k) << " <= 1\n";
    }
  }

  out << "Binary\n";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (inst.cost.has(i, j)) out << " " << var_x(i, j) << "\n";
    }
  }
  if (variant != MipVariant::Sos2) {
    out << "\\ begin linearization binaries " << to_string(variant) << "\n";
    for (int i = 0; i < n; ++i) {
      const int K = static_cast<int>(bp[i].size());
      if (K < 2) continue;
      for (int k = 0; k < K; ++k) out << " " << var_alp(i, k) << "\n";
      if (variant == MipVariant::Beta) {
        for (int k = 0; k + 1 < K; ++k) out << " " << var_bet(i, k) << "\n";
      }
    }
    out << "\\ end linearization\n";
  }

  if (variant == MipVariant::Sos2) {
    out << "\\ begin linearization sos2\n";
    out << "SOS\n";
    for (int i = 0; i < n; ++i) {
      const int K = static_cast<int>(bp[i].size());
      if (K < 2) continue;
      out << " sos_" << (i + 1) << ": S2::";
      for (int k = 0; k < K; ++k) {
        out << " " << var_lam(i, k) << ":" << (k + 1);
      }
      out << "\n";
    }
    out << "\\ end linearization\n";
  }
  out << "End\n";
}

void export_mip_file(const Instance& inst, MipVariant variant,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  export_mip(inst, variant, out);
}

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<std::string> identifiers(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isalpha(static_cast<unsigned char>(line[i])) || line[i] == '_') {
      std::size_t j = i;
      while (j < line.size() && is_ident_char(line[j])) ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

LpSummary read_lp_summary(std::istream& in) {
  LpSummary sum;
  enum Section { None, Objective, Rows, BoundsSec, BinarySec, SosSec };
  Section section = None;
  std::string line;
  while (std::getline(in, line)) {
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '\\') continue;
    std::string low = lower(trimmed);
    if (low.rfind("minimize", 0) == 0 || low.rfind("maximize", 0) == 0) {
      section = Objective;
      continue;
    }
    if (low.rfind("subject to", 0) == 0 || low == "st" || low == "s.t.") {
      section = Rows;
      continue;
    }
    if (low.rfind("bounds", 0) == 0) {
      section = BoundsSec;
      continue;
    }
    if (low.rfind("binar", 0) == 0 || low == "bin") {
      section = BinarySec;
      continue;
    }
    if (low.rfind("sos", 0) == 0 && low.size() <= 4) {
      section = SosSec;
      continue;
    }
    if (low.rfind("end", 0) == 0) break;

    switch (section) {
      case Objective:
      case Rows: {
        auto colon = trimmed.find(':');
        std::string body = trimmed;
        if (colon != std::string::npos) {
          if (section == Rows) ++sum.n_rows;
          body = trimmed.substr(colon + 1);
        }
        for (const std::string& id : identifiers(body)) {
          sum.variables.insert(id);
        }
        break;
      }
      case BoundsSec: {
        for (const std::string& id : identifiers(trimmed)) {
          if (lower(id) == "free") continue;
          sum.variables.insert(id);
        }
        break;
      }
      case BinarySec: {
        for (const std::string& id : identifiers(trimmed)) {
          sum.binaries.insert(id);
          sum.variables.insert(id);
        }
        break;
      }
      case SosSec: {
        if (trimmed.find("S2") != std::string::npos) ++sum.n_sos_sets;
        for (const std::string& id : identifiers(trimmed)) {
          if (id == "S2" || id == "S1") continue;
          auto colon = trimmed.find(':');
          (void)colon;
          if (id.rfind("sos_", 0) == 0) continue;
          sum.variables.insert(id);
        }
        break;
      }
      case None:
        break;
    }
  }
  return sum;
}

LpSummary read_lp_summary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_lp_summary(in);
}

LpExpectedCounts expected_counts(const Instance& inst, MipVariant variant) {
  const int n = inst.n;
  LpExpectedCounts c;
  int arcs = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (inst.cost.has(i, j)) ++arcs;
    }
  }
  int total_bp = 0;
  std::vector<int> K(n);
  for (int i = 0; i < n; ++i) {
    K[i] = static_cast<int>(breakpoints_of(inst.profit[i], i).size());
    total_bp += K[i];
  }

  c.n_rows = (n - 2) + 2      // flow, source, sink
             + 2 * n          // visit link
             + 2 * n          // capacity prefixes
             + (inst.tmax ? 1 : 0) + 3 * n;  // convex combination
  c.n_variables = arcs + 2 * n + total_bp;
  c.n_binaries = arcs;
  for (int i = 0; i < n; ++i) {
    if (K[i] < 2) continue;
    switch (variant) {
      case MipVariant::Sos2:
        ++c.n_sos_sets;
        break;
      case MipVariant::Alpha:
        c.n_rows += K[i] + 1 + (K[i] - 1) * (K[i] - 2) / 2;
        c.n_variables += K[i];
        c.n_binaries += K[i];
        break;
      case MipVariant::Beta:
        c.n_rows += K[i] + 1 + 1 + (K[i] - 1);
        c.n_variables += K[i] + (K[i] - 1);
        c.n_binaries += K[i] + (K[i] - 1);
        break;
    }
  }
  return c;
}

}  // namespace pwlship
