/*
 * Copyright 2026 The lincap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Runs the lincap executable as a subprocess.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LINCAP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_comments(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line + "\n";
  }
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lincap_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("capacity command") {
  const Run r = run("capacity -N 2 -M 4 --ma 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("span bound d_S       8") != std::string::npos);
  CHECK(r.out.find("capacity C (bits)    3") != std::string::npos);
  CHECK(r.out.find("BALANCED") != std::string::npos);

  CHECK(run("capacity -N 3 -M 5 --ma 2").out.find("span bound d_S       18") != std::string::npos);
  CHECK(run("capacity -N 2 -M 4 --ma 4").exit_code == 2);
  CHECK(run("capacity -N 2 -M 4").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("capacity -N x -M 4 --ma 2").exit_code == 2);

  const Run j = run("capacity -N 2 -M 4 --ma 2 --json");
  CHECK(j.exit_code == 0);
  CHECK(j.out.find("\"metadata\"") != std::string::npos);
  CHECK(j.out.find("\"span_bound\": 8") != std::string::npos);
}

TEST_CASE("span command is byte-reproducible") {
  const Run a = run("span -N 1 -M 2 --ma 1");
  const Run b = run("span -N 1 -M 2 --ma 1");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("1,2,1,2,2,true,") != std::string::npos);
  CHECK(a.out.find("# seed: 42") != std::string::npos);
  const Run t1 = run("span -N 3 -M 6 --ma 3 --threads 1");
  const Run t3 = run("span -N 3 -M 6 --ma 3 --threads 3");
  CHECK(t1.out == t3.out);
  CHECK(t1.out.find("3,6,3,38,38,true,") != std::string::npos);
}

TEST_CASE("indecisive rank gap exits with 3") {
  CHECK(run("span -N 2 -M 4 --ma 2 --rank-tol 0.5").exit_code == 3);
  CHECK(run("span -N 2 -M 4 --ma 2 --rank-tol 0.5 --strict").exit_code == 3);
}

TEST_CASE("protocol verification, codebook emission and warm start") {
  const fs::path dir = scratch_dir("protocol");
  const Run v = run("verify-protocol --emit-codebook " + (dir / "code.json").string());
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("PASS") != std::string::npos);
  REQUIRE(fs::exists(dir / "code.json"));

  const Run o = run("optimize -N 2 -M 4 --ma 2 -X 8 --restarts 1 --threads 1 --warm-start " +
                    (dir / "code.json").string() + " -o " + (dir / "opt.json").string());
  CHECK(o.exit_code == 0);
  CHECK(o.out.find("S_max bits           3") != std::string::npos);
  CHECK(slurp(dir / "opt.json").find("\"warm_start\"") != std::string::npos);

  std::ofstream(dir / "broken.json") << R"({"c": [0.6123724356957945, 0, 0.3535533905932738, 0.3535533905932738, 0,
    0.3535533905932738, 0.3535533905932738, 0.3535533905932738, 0, 0], "d": [0,0,0,0,0,0,0,0,0,0], "q3": 0})";
  const Run broken = run("verify-protocol --params " + (dir / "broken.json").string());
  CHECK(broken.exit_code == 1);
  CHECK(broken.out.find("FAIL") != std::string::npos);
  CHECK(run("verify-protocol --params " + (dir / "missing.json").string()).exit_code == 2);
  CHECK(run("verify-protocol --random --seed 5").exit_code == 0);
}

TEST_CASE("optimize and sweep payloads do not depend on the thread count") {
  const fs::path dir = scratch_dir("threads");
  run("optimize -N 2 -M 4 --ma 2 -X 6 --threads 1 -o " + (dir / "a.json").string());
  run("optimize -N 2 -M 4 --ma 2 -X 6 --threads 4 -o " + (dir / "b.json").string());
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  const Run s1 = run("sweep -N 2 -M 4 --ma 2 --x-range 2:5 --restarts 3 --threads 1");
  const Run s2 = run("sweep -N 2 -M 4 --ma 2 --x-range 2:5 --restarts 3 --threads 2");
  CHECK(s1.exit_code == 0);
  CHECK(strip_comments(s1.out) == strip_comments(s2.out));
  CHECK(strip_comments(s1.out).rfind("X,S_max_bits,log2X,capacity_bits,converged,restarts_used\n", 0) == 0);
  CHECK(run("sweep -N 2 -M 4 --ma 2 --x-range 5").exit_code == 2);
}

TEST_CASE("asymptotics and output directory") {
  const Run a = run("asymptotics --n-list 2,64");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("N,M,M_A,log2_dS,log2_dH,dualrail_bits\n") != std::string::npos);
  CHECK(a.out.find("\n2,4,1,") != std::string::npos);
  CHECK(run("asymptotics --ratios abc").exit_code == 2);

  const fs::path dir = scratch_dir("outdir");
  const std::string cmd = "env LINCAP_OUTPUT_DIR=" + dir.string() + " " + std::string(LINCAP_CLI_PATH) +
                          " asymptotics --n-list 4 -o table.csv > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "table.csv"));
  CHECK(slurp(dir / "table.csv").find("# command: asymptotics") == 0);
}
