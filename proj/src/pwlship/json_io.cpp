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

#include "pwlship/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pwlship {

using nlohmann::json;

json number(double v) {
  if (is_integral(v) && std::fabs(v) < 9.0e15) {
    return json(static_cast<std::int64_t>(std::llround(v)));
  }
  return json(v);
}

namespace {

json matrix_to_json(const ArcMatrix& m, int n) {
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) {
      if (j > i && m.has(i, j)) {
        row.push_back(number(m.at(i, j)));
      } else {
        row.push_back(nullptr);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

ArcMatrix matrix_from_json(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw std::runtime_error(std::string(what) + " must be an n x n array");
  }
  ArcMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw std::runtime_error(std::string(what) + " row " +
                               std::to_string(i + 1) + " must have n entries");
    }
    for (int jcol = i + 1; jcol < n; ++jcol) {
      const json& cell = row[static_cast<std::size_t>(jcol)];
      if (cell.is_null()) continue;
      if (!cell.is_number()) {
        throw std::runtime_error(std::string(what) + " entry (" +
                                 std::to_string(i + 1) + "," +
                                 std::to_string(jcol + 1) +
                                 ") must be a number or null");
      }
      m.set(i, jcol, cell.get<double>());
    }
  }
  return m;
}

json profile_to_json(const PwlFunction& f) {
  // Breakpoint pairs; a repeated x encodes a jump, a single isolated pair
  // a point segment.
  json pts = json::array();
  for (std::size_t k = 0; k < f.segments().size(); ++k) {
    const Segment& s = f.segments()[k];
    bool continues_prev = false;
    if (k > 0) {
      const Segment& p = f.segments()[k - 1];
      continues_prev =
          p.hi == s.lo && nearly_equal(p.value_hi(), s.value_lo(), 1e-12);
    }
    if (!continues_prev) {
      pts.push_back(json::array({number(s.lo), number(s.value_lo())}));
    }
    if (!s.is_point()) {
      pts.push_back(json::array({number(s.hi), number(s.value_hi())}));
    }
  }
  return pts;
}

PwlFunction profile_from_json(const json& j, int node) {
  if (!j.is_array() || j.empty()) {
    throw std::runtime_error("profit " + std::to_string(node + 1) +
                             ": breakpoints must be a nonempty array");
  }
  std::vector<std::pair<double, double>> pts;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      throw std::runtime_error("profit " + std::to_string(node + 1) +
                               ": each breakpoint must be [x, y]");
    }
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return PwlFunction::from_breakpoints(pts);
}

}  // namespace

json instance_to_json(const InstanceFile& file) {
  json j;
  j["format"] = 1;
  if (file.is_lswrc()) {
    const LotSizingInstance& ls = file.lswrc();
    j["type"] = "lswrc";
    j["n"] = ls.n;
    j["cost"] = matrix_to_json(ls.cost, ls.n);
    j["time"] = matrix_to_json(ls.time, ls.n);
    j["qmax"] = number(ls.qmax);
    j["tmax"] = ls.tmax ? number(*ls.tmax) : json(nullptr);
    json profit = json::array();
    for (const PwlFunction& f : ls.prod_cost) {
      profit.push_back(json{{"breakpoints", profile_to_json(f)}});
    }
    j["profit"] = profit;
    json demand = json::array();
    for (double d : ls.demand) demand.push_back(number(d));
    j["demand"] = demand;
    json holding = json::array();
    for (double h : ls.holding) holding.push_back(number(h));
    j["holding"] = holding;
  } else {
    const Instance& inst = file.areltp();
    j["type"] = "areltp";
    j["n"] = inst.n;
    j["cost"] = matrix_to_json(inst.cost, inst.n);
    j["time"] = matrix_to_json(inst.time, inst.n);
    j["qmax"] = number(inst.qmax);
    j["tmax"] = inst.tmax ? number(*inst.tmax) : json(nullptr);
    json profit = json::array();
    for (const PwlFunction& f : inst.profit) {
      profit.push_back(json{{"breakpoints", profile_to_json(f)}});
    }
    j["profit"] = profit;
    j["metric"] = json{{"cost", inst.cost_metric}, {"time", inst.time_metric}};
  }
  if (!file.meta.is_null()) j["meta"] = file.meta;
  return j;
}

InstanceFile instance_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("instance must be an object");
  std::string type = j.value("type", "areltp");
  int n = j.at("n").get<int>();
  if (n < 2) throw std::runtime_error("n must be at least 2");

  ArcMatrix cost = matrix_from_json(j.at("cost"), n, "cost");
  ArcMatrix time = j.contains("time") && !j.at("time").is_null()
                       ? matrix_from_json(j.at("time"), n, "time")
                       : cost;

  const json& profit_json = j.at("profit");
  if (!profit_json.is_array() || static_cast<int>(profit_json.size()) != n) {
    throw std::runtime_error("profit must list one function per node");
  }
  std::vector<PwlFunction> profit(n);
  for (int i = 0; i < n; ++i) {
    const json& entry = profit_json[static_cast<std::size_t>(i)];
    profit[static_cast<std::size_t>(i)] = profile_from_json(
        entry.is_object() ? entry.at("breakpoints") : entry, i);
  }

  double qmax = j.at("qmax").get<double>();
  std::optional<double> tmax;
  if (j.contains("tmax") && !j.at("tmax").is_null()) {
    tmax = j.at("tmax").get<double>();
  }

  InstanceFile file;
  if (j.contains("meta")) file.meta = j.at("meta");

  if (type == "lswrc") {
    LotSizingInstance ls;
    ls.n = n;
    ls.cost = std::move(cost);
    ls.time = std::move(time);
    ls.prod_cost = std::move(profit);
    ls.qmax = qmax;
    ls.tmax = tmax;
    const json& demand = j.at("demand");
    const json& holding = j.at("holding");
    if (static_cast<int>(demand.size()) != n ||
        static_cast<int>(holding.size()) != n) {
      throw std::runtime_error("demand/holding must list one value per period");
    }
    for (const json& d : demand) ls.demand.push_back(d.get<double>());
    for (const json& h : holding) ls.holding.push_back(h.get<double>());
    auto problems = ls.validate_instance();
    if (!problems.empty()) throw std::runtime_error(problems.front());
    file.payload = std::move(ls);
  } else if (type == "areltp") {
    Instance inst;
    inst.n = n;
    inst.cost = std::move(cost);
    inst.time = std::move(time);
    inst.profit = std::move(profit);
    inst.qmax = qmax;
    inst.tmax = tmax;
    inst.refresh_integrality();
    if (j.contains("metric") && j.at("metric").is_object()) {
      inst.cost_metric = j.at("metric").value("cost", true);
      inst.time_metric = j.at("metric").value("time", true);
    } else {
      auto [cm, tm] = inst.verify_metric_flags();
      inst.cost_metric = cm;
      inst.time_metric = tm;
    }
    auto problems = inst.validate_instance();
    if (!problems.empty()) throw std::runtime_error(problems.front());
    file.payload = std::move(inst);
  } else {
    throw std::runtime_error("unknown instance type: " + type);
  }
  return file;
}

std::string save_instance(const InstanceFile& file) {
  return instance_to_json(file).dump(2) + "\n";
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("parse error in " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance_file(const InstanceFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << save_instance(file);
}

json solution_to_json(const Solution& sol) {
  json j;
  j["objective"] = number(sol.objective);
  json visits = json::array();
  for (int v : sol.visits) visits.push_back(v + 1);  // 1-based on disk
  j["visits"] = visits;
  json y = json::array();
  for (double v : sol.y) y.push_back(number(v));
  j["y"] = y;
  j["duration"] = number(sol.duration);
  json loads = json::array();
  for (double v : sol.load_profile) loads.push_back(number(v));
  j["load_profile"] = loads;
  j["method"] = sol.method;
  if (sol.dual_bound) j["dual_bound"] = *sol.dual_bound;
  if (sol.nodes_expanded) j["nodes_expanded"] = *sol.nodes_expanded;
  return j;
}

Solution solution_from_json(const json& j, int n) {
  Solution sol;
  sol.objective = j.at("objective").get<double>();
  for (const json& v : j.at("visits")) {
    sol.visits.push_back(v.get<int>() - 1);
  }
  sol.y.assign(static_cast<std::size_t>(n), 0.0);
  const json& y = j.at("y");
  if (static_cast<int>(y.size()) != n) {
    throw std::runtime_error("y must have one entry per node");
  }
  for (int i = 0; i < n; ++i) {
    sol.y[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)].get<double>();
  }
  sol.duration = j.value("duration", 0.0);
  if (j.contains("load_profile")) {
    for (const json& v : j.at("load_profile")) {
      sol.load_profile.push_back(v.get<double>());
    }
  }
  sol.method = j.value("method", "");
  if (j.contains("dual_bound")) sol.dual_bound = j.at("dual_bound").get<double>();
  if (j.contains("nodes_expanded")) {
    sol.nodes_expanded = j.at("nodes_expanded").get<long>();
  }
  return sol;
}

}  // namespace pwlship
