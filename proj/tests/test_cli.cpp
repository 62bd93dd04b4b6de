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

// Drives the installed binary as a subprocess; PWLSHIP_CLI and
// PWLSHIP_FIXTURES come from the build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(PWLSHIP_CLI) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) {
    res.output += buf.data();
  }
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string fixture(const std::string& name) {
  return std::string(PWLSHIP_FIXTURES) + "/" + name;
}

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("pwlship_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve reports the worked example optimum") {
  fs::path out = temp_dir("solve") / "sol.json";
  RunResult res = run("solve --in " + fixture("example1.json") +
                      " --method dp --out " + out.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("objective: -4") != std::string::npos);
  std::ifstream f(out);
  REQUIRE(f.good());
  json sol;
  f >> sol;
  CHECK(sol["objective"].get<double>() == doctest::Approx(-4.0));
  CHECK(sol["visits"] == json::array({1, 2, 4}));
  CHECK(sol["method"] == "dp");
}

TEST_CASE("missing input file exits with code 1") {
  RunResult res = run("solve --in /no/such/file.json");
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("error") != std::string::npos);
}

TEST_CASE("infeasible instances exit with code 2") {
  fs::path dir = temp_dir("infeasible");
  json j;
  std::ifstream f(fixture("example1.json"));
  f >> j;
  j["time"] = json::parse(
      "[[null,2,2,2],[null,null,null,2],[null,null,null,2],"
      "[null,null,null,null]]");
  j["tmax"] = 1;
  fs::path path = dir / "inf.json";
  std::ofstream(path) << j.dump();
  RunResult res = run("solve --in " + path.string() + " --method bbdp");
  CHECK(res.exit_code == 2);
}

TEST_CASE("dp3d and bbdp agree on a constrained fixture") {
  fs::path dir = temp_dir("agree");
  RunResult gen = run("gen lswrc --n 9 --qmax-class small --theta-class "
                      "medium --seeds 2 --out-dir " +
                      dir.string());
  REQUIRE(gen.exit_code == 0);
  for (const auto& entry : fs::directory_iterator(dir)) {
    RunResult a = run("solve --in " + entry.path().string() + " --method dp3d");
    RunResult b = run("solve --in " + entry.path().string() + " --method bbdp");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    auto objective_of = [](const std::string& text) {
      auto pos = text.find("objective: ");
      REQUIRE(pos != std::string::npos);
      return std::stod(text.substr(pos + 11));
    };
    CHECK(objective_of(a.output) == doctest::Approx(objective_of(b.output)));
  }
}

TEST_CASE("generation is deterministic and auto picks the right method") {
  fs::path dir1 = temp_dir("det1");
  fs::path dir2 = temp_dir("det2");
  REQUIRE(run("gen lswrc --n 10 --qmax-class large --theta-class small "
              "--seeds 2 --out-dir " + dir1.string()).exit_code == 0);
  REQUIRE(run("gen lswrc --n 10 --qmax-class large --theta-class small "
              "--seeds 2 --out-dir " + dir2.string()).exit_code == 0);
  for (const auto& entry : fs::directory_iterator(dir1)) {
    fs::path twin = dir2 / entry.path().filename();
    REQUIRE(fs::exists(twin));
    std::ifstream a(entry.path()), b(twin);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
  }
  // auto => bbdp when tmax is present.
  auto first = fs::directory_iterator(dir1)->path();
  RunResult res = run("solve --in " + first.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("method:    bbdp") != std::string::npos);
}

TEST_CASE("bench emits the documented CSV header and stable objectives") {
  fs::path dir = temp_dir("bench");
  REQUIRE(run("gen lswrc --n 8 --qmax-class small --theta-class large "
              "--seeds 2 --out-dir " + dir.string()).exit_code == 0);
  fs::path csv = dir / "bench.csv";
  RunResult res = run("bench --in " + dir.string() +
                      " --methods dp3d bbdp --out " + csv.string());
  REQUIRE(res.exit_code == 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header == "instance,method,objective,dual_bound,wall_ms,nodes,status");
  // Objectives agree per instance across methods.
  std::map<std::string, std::set<std::string>> by_instance;
  std::string line;
  int rows = 0;
  while (std::getline(f, line)) {
    ++rows;
    std::stringstream ss(line);
    std::string inst, method, objective;
    std::getline(ss, inst, ',');
    std::getline(ss, method, ',');
    std::getline(ss, objective, ',');
    by_instance[inst].insert(objective);
  }
  CHECK(rows == 4);
  for (auto& [inst, objs] : by_instance) {
    CHECK(objs.size() == 1);
  }
}

TEST_CASE("report prints the savings table and honors empty input") {
  fs::path dir = temp_dir("report");
  REQUIRE(run("gen lswrc --n 8 --qmax-class medium --theta-class medium "
              "--seeds 2 --out-dir " + dir.string()).exit_code == 0);
  fs::path out = dir / "report.json";
  RunResult res = run("report --in " + dir.string() + " --out " + out.string());
  REQUIRE(res.exit_code == 0);
  std::ifstream f(out);
  json report;
  f >> report;
  REQUIRE(report["rows"].size() == 2);
  for (const json& row : report["rows"]) {
    double dz = row["dz"].get<double>();
    double rhs = row["dz_prod"].get<double>() - row["dz_setup"].get<double>() -
                 row["dz_inv"].get<double>();
    CHECK(dz == doctest::Approx(rhs).epsilon(1e-9));
  }
  CHECK(report["cell_means"].size() == 1);

  fs::path empty = temp_dir("report_empty");
  RunResult none = run("report --in " + empty.string());
  CHECK(none.exit_code == 0);
  // Header only.
  CHECK(none.output.find("instance,qmax_class") != std::string::npos);
}

TEST_CASE("mip subcommand writes an LP file") {
  fs::path dir = temp_dir("mip");
  fs::path out = dir / "model.lp";
  RunResult res = run("mip --in " + fixture("example1.json") +
                      " --variant sos2 --out " + out.string());
  REQUIRE(res.exit_code == 0);
  std::ifstream f(out);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("SOS") != std::string::npos);
  CHECK(text.find("Minimize") != std::string::npos);
}

TEST_CASE("srltp generation from a base file") {
  fs::path dir = temp_dir("srltp");
  fs::path base = dir / "base.txt";
  std::ofstream(base) << "80\n0 0 5\n10 0 3\n10 10 4\n0 10 2\n5 5 9\n";
  RunResult res = run("gen srltp --base " + base.string() +
                      " --qmax 30 --routes 3 --out-dir " + dir.string());
  REQUIRE(res.exit_code == 0);
  int count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().filename().string().rfind("srltp_", 0) == 0) {
      ++count;
      RunResult solve = run("solve --in " + entry.path().string() +
                            " --method bbdp");
      CHECK(solve.exit_code == 0);
    }
  }
  CHECK(count == 3);
}
