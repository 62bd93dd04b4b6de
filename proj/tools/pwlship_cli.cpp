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

// Command-line front end; all solver work goes through the C API.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwlship/pwlship.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct InstanceHandle {
  pwlship_instance* ptr = nullptr;
  ~InstanceHandle() { pwlship_instance_free(ptr); }
};

struct SolutionHandle {
  pwlship_solution* ptr = nullptr;
  ~SolutionHandle() { pwlship_solution_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { pwlship_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

[[noreturn]] void fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitError);
}

std::string last_error() {
  const char* e = pwlship_last_error();
  return e && *e ? e : "unknown error";
}

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  int n = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("PWLSHIP_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

struct SolveOutcome {
  int exit_code = kExitError;
  json solution;
  double wall_ms = 0.0;
  std::string error;
};

SolveOutcome run_solve(pwlship_instance* inst, const std::string& method,
                       std::uint64_t seed, const std::string& integer_mode,
                       bool force_empty_end) {
  SolveOutcome out;
  json options{{"method", method},
               {"seed", seed},
               {"integer_mode", integer_mode},
               {"force_empty_end", force_empty_end}};
  SolutionHandle sol;
  auto begin = std::chrono::steady_clock::now();
  pwlship_status status =
      pwlship_solve(inst, options.dump().c_str(), &sol.ptr);
  auto end = std::chrono::steady_clock::now();
  out.wall_ms =
      std::chrono::duration<double, std::milli>(end - begin).count();
  if (status == PWLSHIP_INFEASIBLE) {
    out.exit_code = kExitInfeasible;
    out.error = last_error();
    return out;
  }
  if (status != PWLSHIP_OK) {
    out.exit_code = kExitError;
    out.error = last_error();
    return out;
  }
  OwnedString text;
  if (pwlship_solution_to_json(sol.ptr, &text.ptr) != PWLSHIP_OK) {
    out.exit_code = kExitError;
    out.error = last_error();
    return out;
  }
  out.solution = json::parse(text.str());
  out.exit_code = kExitSolved;
  return out;
}

int cmd_solve(const std::string& in_path, const std::string& method,
              std::uint64_t seed, const std::string& integer_mode,
              bool force_empty_end, const std::string& out_path) {
  InstanceHandle inst;
  if (pwlship_instance_load_file(in_path.c_str(), &inst.ptr) != PWLSHIP_OK) {
    fail(last_error());
  }
  SolveOutcome outcome =
      run_solve(inst.ptr, method, seed, integer_mode, force_empty_end);
  if (outcome.exit_code == kExitInfeasible) {
    std::cout << "infeasible: " << outcome.error << "\n";
    return kExitInfeasible;
  }
  if (outcome.exit_code != kExitSolved) fail(outcome.error);

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) fail("cannot write " + out_path);
    f << outcome.solution.dump(2) << "\n";
  }
  std::cout << "method:    " << outcome.solution.value("method", method)
            << "\n";
  std::cout << "objective: " << outcome.solution.at("objective") << "\n";
  std::cout << "duration:  " << outcome.solution.value("duration", 0.0)
            << "\n";
  std::cout << "visits:    ";
  for (const auto& v : outcome.solution.at("visits")) std::cout << v << " ";
  std::cout << "\n";
  if (outcome.solution.contains("dual_bound")) {
    std::cout << "dual bound:     " << outcome.solution.at("dual_bound")
              << "\n";
  }
  if (outcome.solution.contains("nodes_expanded")) {
    std::cout << "nodes expanded: " << outcome.solution.at("nodes_expanded")
              << "\n";
  }
  std::cout << "wall ms:   " << outcome.wall_ms << "\n";
  return kExitSolved;
}

int cmd_gen_lswrc(int n, const std::string& qmax_class,
                  const std::string& theta_class, int seeds,
                  std::uint64_t seed0, const std::string& out_dir,
                  const json& config) {
  fs::create_directories(out_dir);
  for (int s = 0; s < seeds; ++s) {
    std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
    json params{{"n", n},
                {"qmax_class", qmax_class},
                {"theta_class", theta_class},
                {"seed", seed}};
    if (!config.is_null()) params["config"] = config;
    InstanceHandle inst;
    if (pwlship_generate_lswrc(params.dump().c_str(), &inst.ptr) !=
        PWLSHIP_OK) {
      fail(last_error());
    }
    std::ostringstream name;
    name << "lswrc_n" << n << "_q" << qmax_class << "_t" << theta_class
         << "_s" << seed << ".json";
    fs::path path = fs::path(out_dir) / name.str();
    if (pwlship_instance_save_file(inst.ptr, path.string().c_str()) !=
        PWLSHIP_OK) {
      fail(last_error());
    }
    std::cout << path.string() << "\n";
  }
  return kExitSolved;
}

int cmd_gen_srltp(const std::string& base, int synthetic_n,
                  std::uint64_t synthetic_seed, double qmax, int routes,
                  std::uint64_t seed0, int nn_k, const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (int r = 0; r < routes; ++r) {
    std::uint64_t seed = seed0 + static_cast<std::uint64_t>(r);
    json params{{"qmax", qmax}, {"seed", seed},
                {"config", json{{"nn_k", nn_k}}}};
    if (!base.empty()) {
      params["base_path"] = base;
    } else {
      params["synthetic_n"] = synthetic_n;
      params["synthetic_seed"] = synthetic_seed;
    }
    InstanceHandle inst;
    if (pwlship_generate_srltp(params.dump().c_str(), &inst.ptr) !=
        PWLSHIP_OK) {
      fail(last_error());
    }
    std::ostringstream name;
    name << "srltp_q" << qmax << "_r" << r << "_s" << seed << ".json";
    fs::path path = fs::path(out_dir) / name.str();
    if (pwlship_instance_save_file(inst.ptr, path.string().c_str()) !=
        PWLSHIP_OK) {
      fail(last_error());
    }
    std::cout << path.string() << "\n";
  }
  return kExitSolved;
}

std::vector<std::string> collect_instances(
    const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.path().extension() == ".json") {
          files.push_back(entry.path().string());
        }
      }
    } else {
      files.push_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_bench(const std::vector<std::string>& inputs,
              const std::vector<std::string>& methods, std::uint64_t seed,
              const std::string& out_path) {
  std::vector<std::string> files = collect_instances(inputs);
  struct Row {
    std::string instance, method, status;
    double objective = 0.0, dual_bound = 0.0, wall_ms = 0.0;
    long nodes = -1;
    bool has_dual = false;
  };
  struct Task {
    std::string file, method;
  };
  std::vector<Task> tasks;
  for (const auto& f : files) {
    for (const auto& m : methods) tasks.push_back({f, m});
  }
  std::vector<Row> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      const Task& task = tasks[k];
      Row row;
      row.instance = fs::path(task.file).filename().string();
      row.method = task.method;
      InstanceHandle inst;
      if (pwlship_instance_load_file(task.file.c_str(), &inst.ptr) !=
          PWLSHIP_OK) {
        row.status = "error";
        rows[k] = row;
        continue;
      }
      SolveOutcome outcome =
          run_solve(inst.ptr, task.method, seed, "auto", false);
      row.wall_ms = outcome.wall_ms;
      if (outcome.exit_code == kExitSolved) {
        row.status = "solved";
        row.objective = outcome.solution.at("objective").get<double>();
        if (outcome.solution.contains("dual_bound")) {
          row.dual_bound = outcome.solution.at("dual_bound").get<double>();
          row.has_dual = true;
        }
        if (outcome.solution.contains("nodes_expanded")) {
          row.nodes = outcome.solution.at("nodes_expanded").get<long>();
        }
      } else if (outcome.exit_code == kExitInfeasible) {
        row.status = "infeasible";
      } else {
        row.status = "error";
      }
      rows[k] = row;
    }
  };
  int workers = std::min<int>(
      thread_budget(), static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostream* out = &std::cout;
  std::ofstream file_out;
  if (!out_path.empty()) {
    file_out.open(out_path);
    if (!file_out) fail("cannot write " + out_path);
    out = &file_out;
  }
  *out << "instance,method,objective,dual_bound,wall_ms,nodes,status\n";
  for (const Row& row : rows) {
    *out << row.instance << "," << row.method << ",";
    if (row.status == "solved") *out << row.objective;
    *out << ",";
    if (row.has_dual) *out << row.dual_bound;
    *out << "," << row.wall_ms << ",";
    if (row.nodes >= 0) *out << row.nodes;
    *out << "," << row.status << "\n";
  }
  return kExitSolved;
}

int cmd_report(const std::vector<std::string>& inputs,
               const std::string& method, std::uint64_t seed,
               const std::string& out_path) {
  std::vector<std::string> files = collect_instances(inputs);
  struct Row {
    std::string instance, qmax_class, theta_class;
    std::uint64_t rng_seed = 0;
    int n = 0;
    json savings;
  };
  std::vector<Row> rows;
  for (const std::string& file : files) {
    InstanceHandle inst;
    if (pwlship_instance_load_file(file.c_str(), &inst.ptr) != PWLSHIP_OK) {
      fail(last_error());
    }
    if (!pwlship_instance_is_lswrc(inst.ptr)) {
      std::cerr << "skipping non-lswrc instance " << file << "\n";
      continue;
    }
    json options{{"method", method}, {"seed", seed}};
    SolutionHandle sol;
    pwlship_status status =
        pwlship_solve(inst.ptr, options.dump().c_str(), &sol.ptr);
    if (status != PWLSHIP_OK) {
      std::cerr << "skipping " << file << ": " << last_error() << "\n";
      continue;
    }
    OwnedString text;
    if (pwlship_lswrc_savings(inst.ptr, sol.ptr, &text.ptr) != PWLSHIP_OK) {
      fail(last_error());
    }
    Row row;
    row.instance = fs::path(file).filename().string();
    row.savings = json::parse(text.str());
    row.n = pwlship_instance_n(inst.ptr);
    OwnedString inst_text;
    if (pwlship_instance_to_json(inst.ptr, &inst_text.ptr) == PWLSHIP_OK) {
      json j = json::parse(inst_text.str());
      if (j.contains("meta")) {
        row.qmax_class = j["meta"].value("qmax_class", "");
        row.theta_class = j["meta"].value("theta_class", "");
        row.rng_seed = j["meta"].value("seed", 0ull);
      }
    }
    rows.push_back(std::move(row));
  }

  json table = json::array();
  std::map<std::pair<std::string, std::string>, std::vector<json>> cells;
  for (const Row& row : rows) {
    json entry{{"instance", row.instance},
               {"n", row.n},
               {"qmax_class", row.qmax_class},
               {"theta_class", row.theta_class},
               {"seed", row.rng_seed}};
    for (auto& [k, v] : row.savings.items()) entry[k] = v;
    table.push_back(entry);
    cells[{row.qmax_class, row.theta_class}].push_back(row.savings);
  }
  json means = json::array();
  for (auto& [cell, entries] : cells) {
    double dz = 0, prod = 0, setup = 0, inv = 0;
    for (const json& e : entries) {
      dz += e.value("dz", 0.0);
      prod += e.value("dz_prod", 0.0);
      setup += e.value("dz_setup", 0.0);
      inv += e.value("dz_inv", 0.0);
    }
    double count = static_cast<double>(entries.size());
    means.push_back(json{{"qmax_class", cell.first},
                         {"theta_class", cell.second},
                         {"count", entries.size()},
                         {"mean_dz", dz / count},
                         {"mean_dz_prod", prod / count},
                         {"mean_dz_setup", setup / count},
                         {"mean_dz_inv", inv / count}});
  }
  json report{{"rows", table}, {"cell_means", means}};

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) fail("cannot write " + out_path);
    f << report.dump(2) << "\n";
  }
  std::cout << "instance,qmax_class,theta_class,seed,z_l4l,z_opt,dz,dz_prod,"
               "dz_setup,dz_inv\n";
  for (const json& entry : table) {
    std::cout << entry.value("instance", "") << ","
              << entry.value("qmax_class", "") << ","
              << entry.value("theta_class", "") << ","
              << entry.value("seed", 0ull) << "," << entry.value("z_l4l", 0.0)
              << "," << entry.value("z_opt", 0.0) << ","
              << entry.value("dz", 0.0) << "," << entry.value("dz_prod", 0.0)
              << "," << entry.value("dz_setup", 0.0) << ","
              << entry.value("dz_inv", 0.0) << "\n";
  }
  return kExitSolved;
}

int cmd_mip(const std::string& in_path, const std::string& variant,
            const std::string& out_path) {
  InstanceHandle inst;
  if (pwlship_instance_load_file(in_path.c_str(), &inst.ptr) != PWLSHIP_OK) {
    fail(last_error());
  }
  if (pwlship_mip_export(inst.ptr, variant.c_str(), out_path.c_str()) !=
      PWLSHIP_OK) {
    fail(last_error());
  }
  std::cout << out_path << "\n";
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers for a-priori route transhipment and lot sizing "
               "with requalification costs"};
  app.require_subcommand(1);

  // solve
  std::string in_path, out_path, method = "auto", integer_mode = "auto";
  std::uint64_t seed = 1;
  bool force_empty_end = false;
  auto* solve = app.add_subcommand("solve", "solve one instance file");
  solve->add_option("--in", in_path, "instance file")->required();
  solve->add_option("--method", method, "dp|dp3d|bbdp|auto");
  solve->add_option("--seed", seed, "branching seed");
  solve->add_option("--integer-mode", integer_mode, "auto|on|off");
  solve->add_flag("--force-empty-end", force_empty_end,
                  "require the vehicle to end empty (q_n = 0)");
  solve->add_option("--out", out_path, "write the solution JSON here");

  // gen
  auto* gen = app.add_subcommand("gen", "generate instance files");
  gen->require_subcommand(1);
  int gen_n = 10, gen_seeds = 11;
  std::uint64_t gen_seed0 = 1;
  std::string gen_qmax = "small", gen_theta = "small", gen_dir = ".";
  std::string gen_config_json;
  auto* gen_lswrc = gen->add_subcommand("lswrc", "lot sizing instances");
  gen_lswrc->add_option("--n", gen_n, "periods")->required();
  gen_lswrc->add_option("--qmax-class", gen_qmax, "small|medium|large");
  gen_lswrc->add_option("--theta-class", gen_theta, "small|medium|large");
  gen_lswrc->add_option("--seeds", gen_seeds, "number of seeds");
  gen_lswrc->add_option("--seed0", gen_seed0, "first seed");
  gen_lswrc->add_option("--out-dir", gen_dir, "output directory");
  gen_lswrc->add_option("--config", gen_config_json,
                        "JSON overrides for the generator knobs");

  std::string srltp_base;
  bool srltp_synthetic = false;
  int srltp_synn = 20, srltp_routes = 20, srltp_nnk = 3;
  std::uint64_t srltp_synseed = 7, srltp_seed0 = 1;
  double srltp_qmax = 30;
  auto* gen_srltp = gen->add_subcommand("srltp", "route-evaluation instances");
  gen_srltp->add_option("--base", srltp_base, "orienteering base file");
  gen_srltp->add_flag("--synthetic", srltp_synthetic,
                      "use a synthetic base instead of a file");
  gen_srltp->add_option("--synthetic-n", srltp_synn, "synthetic base size");
  gen_srltp->add_option("--synthetic-seed", srltp_synseed,
                        "synthetic base seed");
  gen_srltp->add_option("--qmax", srltp_qmax, "vehicle capacity");
  gen_srltp->add_option("--routes", srltp_routes, "routes per base");
  gen_srltp->add_option("--seed0", srltp_seed0, "first route seed");
  gen_srltp->add_option("--nn-k", srltp_nnk,
                        "randomized nearest neighbour candidates");
  gen_srltp->add_option("--out-dir", gen_dir, "output directory");

  // bench
  std::vector<std::string> bench_in, bench_methods{"dp3d", "bbdp"};
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "benchmark methods over files");
  bench->add_option("--in", bench_in, "instance files or directories")
      ->required();
  bench->add_option("--methods", bench_methods, "methods to run");
  bench->add_option("--seed", seed, "branching seed");
  bench->add_option("--out", bench_out, "CSV output path");

  // report
  std::vector<std::string> report_in;
  std::string report_out, report_method = "bbdp";
  auto* report = app.add_subcommand(
      "report", "lot-for-lot savings decomposition over lswrc files");
  report->add_option("--in", report_in, "instance files or directories")
      ->required();
  report->add_option("--method", report_method, "solver to use");
  report->add_option("--seed", seed, "branching seed");
  report->add_option("--out", report_out, "JSON report path");

  // mip
  std::string mip_variant = "beta", mip_out;
  auto* mip = app.add_subcommand("mip", "export the MIP model (LP format)");
  mip->add_option("--in", in_path, "instance file")->required();
  mip->add_option("--variant", mip_variant, "sos2|alpha|beta");
  mip->add_option("--out", mip_out, "LP output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return cmd_solve(in_path, method, seed, integer_mode, force_empty_end,
                       out_path);
    }
    if (gen->parsed()) {
      if (gen_lswrc->parsed()) {
        json config;
        if (!gen_config_json.empty()) config = json::parse(gen_config_json);
        return cmd_gen_lswrc(gen_n, gen_qmax, gen_theta, gen_seeds, gen_seed0,
                             gen_dir, config);
      }
      if (gen_srltp->parsed()) {
        if (srltp_base.empty() && !srltp_synthetic) {
          fail("gen srltp needs --base FILE or --synthetic");
        }
        return cmd_gen_srltp(srltp_base, srltp_synn, srltp_synseed,
                             srltp_qmax, srltp_routes, srltp_seed0,
                             srltp_nnk, gen_dir);
      }
    }
    if (bench->parsed()) {
      return cmd_bench(bench_in, bench_methods, seed, bench_out);
    }
    if (report->parsed()) {
      return cmd_report(report_in, report_method, seed, report_out);
    }
    if (mip->parsed()) {
      return cmd_mip(in_path, mip_variant, mip_out);
    }
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return kExitError;
}
