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

#include "pwlship/pwlship.h"

#include <cstring>
#include <new>
#include <string>

#include "pwlship/bnb.hpp"
#include "pwlship/dp.hpp"
#include "pwlship/instgen.hpp"
#include "pwlship/json_io.hpp"
#include "pwlship/lswrc.hpp"
#include "pwlship/mipexport.hpp"
#include "pwlship/oracle.hpp"

using nlohmann::json;

struct pwlship_instance {
  pwlship::InstanceFile file;
};

struct pwlship_solution {
  pwlship::Solution solution;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
pwlship_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const nlohmann::json::exception& e) {
    set_error(e.what());
    return PWLSHIP_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return PWLSHIP_ERR_INVALID;
  } catch (const std::runtime_error& e) {
    set_error(e.what());
    return PWLSHIP_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PWLSHIP_ERR_INTERNAL;
  }
}

// The instance the solvers run on: lot sizing files are reduced first.
pwlship::Instance solver_instance(const pwlship::InstanceFile& file) {
  if (file.is_lswrc()) {
    return pwlship::reduce_to_areltp(file.lswrc()).instance;
  }
  return file.areltp();
}

}  // namespace

extern "C" {

const char* pwlship_version(void) { return "1.0.0"; }

const char* pwlship_last_error(void) { return g_last_error.c_str(); }

pwlship_status pwlship_instance_load_file(const char* path,
                                          pwlship_instance** out) {
  if (!path || !out) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    auto* handle = new pwlship_instance{pwlship::load_instance_file(path)};
    *out = handle;
    return PWLSHIP_OK;
  });
}

pwlship_status pwlship_instance_from_json(const char* json_text,
                                          pwlship_instance** out) {
  if (!json_text || !out) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    json j = json::parse(json_text);
    auto* handle = new pwlship_instance{pwlship::instance_from_json(j)};
    *out = handle;
    return PWLSHIP_OK;
  });
}

pwlship_status pwlship_instance_to_json(const pwlship_instance* inst,
                                        char** out_json) {
  if (!inst || !out_json) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    *out_json = dup_string(pwlship::save_instance(inst->file));
    return *out_json ? PWLSHIP_OK : PWLSHIP_ERR_INTERNAL;
  });
}

pwlship_status pwlship_instance_save_file(const pwlship_instance* inst,
                                          const char* path) {
  if (!inst || !path) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    pwlship::save_instance_file(inst->file, path);
    return PWLSHIP_OK;
  });
}

void pwlship_instance_free(pwlship_instance* inst) { delete inst; }

int pwlship_instance_n(const pwlship_instance* inst) {
  if (!inst) return 0;
  return inst->file.is_lswrc() ? inst->file.lswrc().n : inst->file.areltp().n;
}

int pwlship_instance_is_lswrc(const pwlship_instance* inst) {
  return inst && inst->file.is_lswrc() ? 1 : 0;
}

int pwlship_instance_has_tmax(const pwlship_instance* inst) {
  if (!inst) return 0;
  auto tmax = inst->file.is_lswrc() ? inst->file.lswrc().tmax
                                    : inst->file.areltp().tmax;
  return tmax ? 1 : 0;
}

pwlship_status pwlship_generate_lswrc(const char* params_json,
                                      pwlship_instance** out) {
  if (!params_json || !out) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    json p = json::parse(params_json);
    pwlship::LswrcGenConfig cfg;
    if (p.contains("config")) {
      const json& c = p.at("config");
      cfg.demand_lo = c.value("demand_lo", cfg.demand_lo);
      cfg.demand_hi = c.value("demand_hi", cfg.demand_hi);
      cfg.holding_lo = c.value("holding_lo", cfg.holding_lo);
      cfg.holding_hi = c.value("holding_hi", cfg.holding_hi);
      cfg.setup_lo = c.value("setup_lo", cfg.setup_lo);
      cfg.setup_hi = c.value("setup_hi", cfg.setup_hi);
      cfg.setup_gap_slope = c.value("setup_gap_slope", cfg.setup_gap_slope);
      cfg.setup_noise = c.value("setup_noise", cfg.setup_noise);
      cfg.headroom_lo = c.value("headroom_lo", cfg.headroom_lo);
      cfg.headroom_hi = c.value("headroom_hi", cfg.headroom_hi);
    }
    int n = p.at("n").get<int>();
    auto qc = pwlship::size_class_from_string(
        p.value("qmax_class", std::string("small")));
    auto tc = pwlship::size_class_from_string(
        p.value("theta_class", std::string("small")));
    std::uint64_t seed = p.value("seed", 1ull);
    pwlship::InstanceFile file;
    file.payload = pwlship::generate_lswrc(n, qc, tc, seed, cfg);
    file.meta = json{{"generator", "lswrc"},
                     {"seed", seed},
                     {"n", n},
                     {"qmax_class", pwlship::to_string(qc)},
                     {"theta_class", pwlship::to_string(tc)},
                     {"config",
                      json{{"demand", {cfg.demand_lo, cfg.demand_hi}},
                           {"holding", {cfg.holding_lo, cfg.holding_hi}},
                           {"setup", {cfg.setup_lo, cfg.setup_hi}},
                           {"setup_gap_slope", cfg.setup_gap_slope},
                           {"setup_noise", cfg.setup_noise},
                           {"headroom", {cfg.headroom_lo, cfg.headroom_hi}}}}};
    *out = new pwlship_instance{std::move(file)};
    return PWLSHIP_OK;
  });
}

pwlship_status pwlship_generate_srltp(const char* params_json,
                                      pwlship_instance** out) {
  if (!params_json || !out) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    json p = json::parse(params_json);
    pwlship::SrltpGenConfig cfg;
    if (p.contains("config")) {
      cfg.nn_k = p.at("config").value("nn_k", cfg.nn_k);
    }
    pwlship::OrienteeringData base;
    if (p.contains("base_path")) {
      base = pwlship::parse_orienteering_file(
          p.at("base_path").get<std::string>());
    } else {
      int sn = p.value("synthetic_n", 20);
      std::uint64_t sseed = p.value("synthetic_seed", 7ull);
      base = pwlship::synthetic_orienteering(sn, sseed);
    }
    double qmax = p.value("qmax", 30.0);
    std::uint64_t seed = p.value("seed", 1ull);
    pwlship::SrltpInstance gen = pwlship::generate_srltp(base, qmax, seed, cfg);
    pwlship::InstanceFile file;
    file.payload = std::move(gen.instance);
    file.meta = json{{"generator", "srltp"},
                     {"seed", seed},
                     {"qmax", qmax},
                     {"route", gen.route},
                     {"config", json{{"nn_k", cfg.nn_k}}}};
    *out = new pwlship_instance{std::move(file)};
    return PWLSHIP_OK;
  });
}

pwlship_status pwlship_solve(const pwlship_instance* inst,
                             const char* options_json,
                             pwlship_solution** out) {
  if (!inst || !out) return PWLSHIP_ERR_INVALID;
  return guard([&]() -> pwlship_status {
    json opts = options_json && *options_json ? json::parse(options_json)
                                              : json::object();
    pwlship::Instance solver_inst = solver_instance(inst->file);

    std::string method = opts.value("method", std::string("auto"));
    if (method == "auto") {
      method = solver_inst.tmax ? "bbdp" : "dp";
    }
    std::string integer_mode = opts.value("integer_mode", std::string("auto"));
    bool use_integer = integer_mode == "on" ||
                       (integer_mode == "auto" && solver_inst.integer_domains);
    bool force_empty_end = opts.value("force_empty_end", false);
    std::uint64_t seed = opts.value("seed", 1ull);

    pwlship::Solution sol;
    if (method == "dp") {
      pwlship::DpOptions d;
      d.integer_mode = use_integer;
      d.force_empty_end = force_empty_end;
      auto res = pwlship::solve_no_duration(solver_inst, d);
      if (res.status != pwlship::SolveStatus::Solved) {
        set_error("no feasible route");
        return PWLSHIP_INFEASIBLE;
      }
      sol = std::move(res.solution);
      sol.method = "dp";
    } else if (method == "dp3d") {
      if (!solver_inst.tmax) {
        set_error("dp3d needs a duration limit");
        return PWLSHIP_ERR_INVALID;
      }
      pwlship::DpOptions d;
      d.integer_mode = use_integer;
      d.force_empty_end = force_empty_end;
      auto res = pwlship::solve_with_duration(solver_inst, d);
      if (res.status != pwlship::SolveStatus::Solved) {
        set_error("no feasible route within the duration limit");
        return PWLSHIP_INFEASIBLE;
      }
      sol = std::move(res.solution);
      sol.method = "dp3d";
    } else if (method == "bbdp") {
      if (!solver_inst.tmax) {
        set_error("bbdp needs a duration limit");
        return PWLSHIP_ERR_INVALID;
      }
      pwlship::BnbOptions b;
      b.seed = seed;
      b.integer_mode = use_integer;
      b.force_empty_end = force_empty_end;
      auto res = pwlship::solve_bbdp(solver_inst, b);
      if (res.status != pwlship::SolveStatus::Solved) {
        set_error("no feasible route within the duration limit");
        return PWLSHIP_INFEASIBLE;
      }
      sol = std::move(res.best);
      sol.method = "bbdp";
    } else {
      set_error("unknown method: " + method);
      return PWLSHIP_ERR_INVALID;
    }
    *out = new pwlship_solution{std::move(sol)};
    return PWLSHIP_OK;
  });
}

double pwlship_solution_objective(const pwlship_solution* sol) {
  return sol ? sol->solution.objective : 0.0;
}

double pwlship_solution_duration(const pwlship_solution* sol) {
  return sol ? sol->solution.duration : 0.0;
}

double pwlship_solution_dual_bound(const pwlship_solution* sol) {
  return sol && sol->solution.dual_bound ? *sol->solution.dual_bound : -1.0;
}

long pwlship_solution_nodes_expanded(const pwlship_solution* sol) {
  return sol && sol->solution.nodes_expanded ? *sol->solution.nodes_expanded
                                             : -1;
}

pwlship_status pwlship_solution_to_json(const pwlship_solution* sol,
                                        char** out_json) {
  if (!sol || !out_json) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    *out_json = dup_string(pwlship::solution_to_json(sol->solution).dump(2) +
                           "\n");
    return *out_json ? PWLSHIP_OK : PWLSHIP_ERR_INTERNAL;
  });
}

void pwlship_solution_free(pwlship_solution* sol) { delete sol; }

pwlship_status pwlship_lswrc_savings(const pwlship_instance* inst,
                                     const pwlship_solution* sol,
                                     char** out_json) {
  if (!inst || !sol || !out_json) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    if (!inst->file.is_lswrc()) {
      throw std::invalid_argument("savings need a lot sizing instance");
    }
    auto dec = pwlship::savings_decomposition(inst->file.lswrc(),
                                              sol->solution);
    json j{{"z_l4l", dec.z_l4l},   {"z_opt", dec.z_opt},
           {"dz", dec.dz},         {"dz_prod", dec.dz_prod},
           {"dz_setup", dec.dz_setup}, {"dz_inv", dec.dz_inv}};
    *out_json = dup_string(j.dump(2) + "\n");
    return *out_json ? PWLSHIP_OK : PWLSHIP_ERR_INTERNAL;
  });
}

pwlship_status pwlship_mip_export(const pwlship_instance* inst,
                                  const char* variant, const char* path) {
  if (!inst || !variant || !path) return PWLSHIP_ERR_INVALID;
  return guard([&]() {
    pwlship::Instance solver_inst = solver_instance(inst->file);
    pwlship::export_mip_file(solver_inst,
                             pwlship::mip_variant_from_string(variant), path);
    return PWLSHIP_OK;
  });
}

void pwlship_string_free(char* s) { delete[] s; }

}  // extern "C"
