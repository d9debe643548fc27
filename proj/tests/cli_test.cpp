// Copyright 2026 The gamebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// End-to-end runs of the gamebound binary.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path kTmp = GAMEBOUND_TEST_TMPDIR;

struct Result {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result cli(const std::string& args, const std::string& name) {
  fs::create_directories(kTmp);
  const fs::path out = kTmp / (name + ".stdout"), err = kTmp / (name + ".stderr");
  const std::string cmd = std::string("\"") + GAMEBOUND_CLI_PATH + "\" " + args + " > \"" + out.string() +
                          "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

std::string tmp(const std::string& name) { return (kTmp / name).string(); }

TEST(CliGen, DominoBasicAnalysis) {
  const Result r = cli("gen domino-basic --mu1 1 --mu2 1 --c 1 --dim 64 --out " + tmp("db64.json"), "gen_db");
  ASSERT_EQ(r.code, 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(tmp("db64.json")));
  EXPECT_NEAR(j["analysis"]["chi"].get<double>(), 0.381966, 1e-6);
  EXPECT_EQ(j["dims"], nlohmann::json::array({64, 64}));
}

TEST(CliGen, Pscli2Instance) {
  const Result r = cli("gen pscli2 --mu1 1 --L1 4 --mu2 2 --L2 5 --mu12 3 --L12 6", "gen_p2");
  ASSERT_EQ(r.code, 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dims"], nlohmann::json::array({2, 2}));
  EXPECT_NEAR(j["analysis"]["kappa_jacobian"].get<double>(), std::sqrt(56.0 / 11.0), 1e-10);
}

TEST(CliGen, RandomIsByteStable) {
  const Result a = cli("gen random --dims 4,4 --seed 7", "gen_r1");
  const Result b = cli("gen random --dims 4,4 --seed 7", "gen_r2");
  const Result c = cli("gen random --dims 4,4 --seed 8", "gen_r3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(CliGen, ValidationErrorsExitTwo) {
  EXPECT_EQ(cli("gen domino-basic --mu1 0", "gen_bad1").code, 2);
  EXPECT_EQ(cli("gen domino-basic --dim 3", "gen_bad2").code, 2);
  EXPECT_EQ(cli("gen domino-improved --mu12 3 --L12 2", "gen_bad3").code, 2);
  EXPECT_EQ(cli("gen nonsense", "gen_bad4").code, 2);
  EXPECT_EQ(cli("frobnicate", "gen_bad5").code, 2);
}

TEST(CliCertify, TunedGradientDescentOnDiagonal) {
  ASSERT_EQ(cli("gen diagonal --diag 1,9 --out " + tmp("diag19.json"), "gen_d19").code, 0);
  const Result r = cli("certify " + tmp("diag19.json") + " --method gd --eta tune --T 400", "cert_d19");
  ASSERT_EQ(r.code, 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["rho_hat"].get<double>(), 0.8, 2e-2);
  EXPECT_EQ(j["bounds"][0]["name"], "pscli_n");
  EXPECT_NEAR(j["bounds"][0]["value"].get<double>(), 0.8, 1e-12);
  EXPECT_EQ(j["bounds"][0]["verdict"], "respected");
}

TEST(CliCertify, StrictToleranceTurnsEqualityIntoFinding) {
  ASSERT_EQ(cli("gen diagonal --diag 1,9 --out " + tmp("diag19s.json"), "gen_d19s").code, 0);
  const Result r =
      cli("certify " + tmp("diag19s.json") + " --method gd --eta tune --tolerance -0.1", "cert_strict");
  EXPECT_EQ(r.code, 1);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["bounds"][0]["verdict"], "violated");
}

TEST(CliCertify, ExtragradientOnDominoFile) {
  ASSERT_EQ(cli("gen domino-basic --dim 256 --out " + tmp("db256.json"), "gen_db256").code, 0);
  const Result r = cli("certify " + tmp("db256.json") + " --method eg --eta tune --T 200 --csv " + tmp("db256.csv"),
                       "cert_db");
  ASSERT_EQ(r.code, 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["per_iterate"]["ok"].get<bool>());
  EXPECT_TRUE(j["sparsity_ok"].get<bool>());
  bool found = false;
  for (const auto& b : j["bounds"]) {
    if (b["name"] != "domino_basic") continue;
    found = true;
    EXPECT_EQ(b["verdict"], "respected");
    EXPECT_EQ(b["mode"], "certified");
  }
  EXPECT_TRUE(found);
  const std::string csv = slurp(tmp("db256.csv"));
  EXPECT_EQ(csv.substr(0, 9), "t,dist,w_");
}

TEST(CliCertify, DivergentGradientDescentOnBilinear) {
  const std::string game = R"('{"blocks":{"1,2":[[1]],"2,1":[[-1]]},"dims":[1,1]}')";
  const Result r = cli("certify " + game + " --method gd --eta 0.1 --T 200", "cert_bil");
  ASSERT_EQ(r.code, 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["rho_hat"].get<double>(), 1.0);
  EXPECT_FALSE(j["certifying"].get<bool>());
  for (const auto& b : j["bounds"]) EXPECT_NE(b["verdict"], "violated");
}

TEST(CliCertify, ErrorsExitTwo) {
  EXPECT_EQ(cli("certify /nonexistent/game.json --method gd", "cert_e1").code, 2);
  EXPECT_EQ(cli("certify '{\"dims\":[2]}' --method gd --eta 0.1", "cert_e2").code, 2);
  EXPECT_EQ(cli("certify '{\"dims\":[1],\"blocks\":{\"1,1\":[[1]]}}' --method adam", "cert_e3").code, 2);
  EXPECT_EQ(cli("certify '{nope' --method gd", "cert_e4").code, 2);
}

TEST(CliRun, TrajectoryCsv) {
  const std::string game = R"('{"blocks":{"1,1":[[1,0],[0,3]]},"dims":[2]}')";
  const Result r = cli("run " + game + " --method gd --eta 0.5 --T 2 --zero-init", "run_gd");
  ASSERT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,dist,w_0,w_1");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(CliSweep, EtaMinimumOnDiagonal) {
  ASSERT_EQ(cli("gen diagonal --diag 1,9 --out " + tmp("diag19w.json"), "gen_d19w").code, 0);
  const Result r =
      cli("sweep " + tmp("diag19w.json") + " --method gd --param eta --grid log:0.01:0.3:32", "sweep_eta");
  ASSERT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line.substr(0, 13), "eta,rho_asym,");
  double best_eta = 0, best_rho = 1e9, prev_eta = 0, step = 0;
  int rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string a, b;
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    const double eta = std::stod(a), rho = std::stod(b);
    if (rows) step = std::max(step, eta - prev_eta);
    prev_eta = eta;
    if (rho < best_rho) {
      best_rho = rho;
      best_eta = eta;
    }
    ++rows;
  }
  EXPECT_EQ(rows, 32);
  EXPECT_NEAR(best_eta, 0.2, step);
  EXPECT_NEAR(best_rho, 0.8, 9 * step);
  EXPECT_GE(best_rho, 0.8 - 1e-12);
}

TEST(CliSweep, DominoImprovedChiMonotoneInL12) {
  ASSERT_EQ(cli("gen domino-improved --mu1 0.1 --mu2 0.1 --mu12 1 --L12 2 --dim 64 --out " + tmp("di.json"), "gen_di")
                .code,
            0);
  const Result r = cli("sweep " + tmp("di.json") + " --method gd --param L12 --grid 1,2,3,4,5,6,7,8", "sweep_l12");
  ASSERT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line.substr(0, 13), "L12,kappa,chi");
  double prev = -1;
  int rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string a, b, c;
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    std::getline(ls, c, ',');
    const double chi = std::stod(c);
    if (rows) EXPECT_GT(chi, prev);
    prev = chi;
    ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST(CliSweep, EmptyGridExitsTwo) {
  const std::string game = R"('{"blocks":{"1,1":[[1]]},"dims":[1]}')";
  EXPECT_EQ(cli("sweep " + game + " --method gd --param eta --grid ''", "sweep_empty").code, 2);
  EXPECT_EQ(cli("sweep " + game + " --method gd --param eta --grid log:1:2:0", "sweep_empty2").code, 2);
}

TEST(CliSearch, EmptyAndDeterministic) {
  const Result a = cli("search --trials 50 --dims 3,3 --p 1 --seed 1", "search_a");
  ASSERT_EQ(a.code, 0);
  const nlohmann::json j = nlohmann::json::parse(a.out);
  EXPECT_TRUE(j["violations"].empty());
  const Result b = cli("search --trials 50 --dims 3,3 --p 1 --seed 1 --threads 1", "search_b");
  EXPECT_EQ(a.out, b.out);
  const Result c = cli("search --trials 0", "search_zero");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(c.out)["violations"].empty());
}

TEST(CliSearch, ThreadEnvironmentDoesNotChangeOutput) {
  const Result a = cli("search --trials 20 --dims 2,2 --p 2 --seed 5", "search_env_a");
  const Result b = cli("search --trials 20 --dims 2,2 --p 2 --seed 5", "search_env_b");
  setenv("GAMEBOUND_THREADS", "1", 1);
  const Result c = cli("search --trials 20 --dims 2,2 --p 2 --seed 5", "search_env_c");
  unsetenv("GAMEBOUND_THREADS");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(CliSearch, BadArgumentsExitTwo) {
  EXPECT_EQ(cli("search --p 3 --trials 1", "search_bad1").code, 2);
  EXPECT_EQ(cli("search --dims 3", "search_bad2").code, 2);
}

}  // namespace
