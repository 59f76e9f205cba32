// Copyright 2026 The phase-ovm Authors
//
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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "phase_ovm/fock.hpp"
#include "phase_ovm/quasiprob.hpp"
#include "phase_ovm/serialize.hpp"

namespace phase_ovm {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(PHASE_OVM_CLI) + " " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_json(const std::string& args, int expect_code = 0) {
  const CliResult r = run(args);
  EXPECT_EQ(r.code, expect_code) << args << "\n" << r.out;
  return Json::parse(r.out);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("phase-ovm-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("build --dim 48").code, 2);
  EXPECT_EQ(run("build --region hexagon:1 --dim 48").code, 2);
  EXPECT_EQ(run("build --region interval:1,0 --dim 48").code, 2);
  EXPECT_EQ(run("build --region interval:-1,1 --dim 4").code, 2);
  EXPECT_EQ(run("build --region interval:-1,1 --dim 300").code, 2);
  EXPECT_EQ(run("verify --target bogus --dim 48").code, 2);
  EXPECT_EQ(run("mass --region interval:-1,1 --state vacuum --dim 16").code, 2);
  EXPECT_EQ(run("field --state fock:1 --s 1 --dim 16 --grid -1,1,-1,1,32,32").code, 2);
  EXPECT_EQ(run("field --state fock:1 --dim 16 --grid -1,1,-1,1,4,4").code, 2);
}

TEST_F(Cli, TruncationIsExitThree) {
  EXPECT_EQ(run("build --region 'fourier:a0=1;a=0,0,0,0,0,0,0,0,1;L=0.3' --dim 8").code, 3);
}

TEST_F(Cli, BuildCircleWritesLaguerreDiagonal) {
  const std::string out = path("circle.json");
  const CliResult r = run("build --region circle:a=1 --dim 48 --output " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  std::ifstream is(out);
  const Json j = Json::parse(is);
  const Matrix m = matrix_from_json(j.at("matrix"));
  ASSERT_EQ(m.rows(), 48);
  for (Index n = 0; n < 48; ++n)
    EXPECT_NEAR(m(n, n).real(), 2.0 * kPi * (n % 2 ? -1.0 : 1.0) * std::exp(-0.5) * laguerre(static_cast<int>(n), 1.0), 1e-12);
  EXPECT_TRUE(j.at("hermitian").get<bool>());
  EXPECT_TRUE(j.at("parity_commutes").get<bool>());
  EXPECT_EQ(j.at("eigenvalues").size(), 48u);
  EXPECT_EQ(j.at("provenance").at("dim"), 48);
  EXPECT_EQ(j.at("provenance").at("path"), "analytic");
  EXPECT_TRUE(j.at("provenance").contains("conventions"));
}

TEST_F(Cli, BuildFlags) {
  const Json sym = run_json("build --region interval:-1,1 --dim 48");
  EXPECT_TRUE(sym.at("hermitian").get<bool>());
  EXPECT_TRUE(sym.at("transform_real").get<bool>());
  const Json comb = run_json("build --region integers:n=3 --dim 48");
  // a sum of displaced parities is Hermitian; the asymmetry shows in the transform
  EXPECT_TRUE(comb.at("hermitian").get<bool>());
  EXPECT_FALSE(comb.at("transform_real").get<bool>());
  EXPECT_FALSE(comb.at("parity_commutes").get<bool>());
}

TEST_F(Cli, BuildBinaryWithSidecar) {
  const std::string out = path("k.bin");
  ASSERT_EQ(run("build --region interval:-1,1 --dim 16 --format bin --output " + out).code, 0);
  std::ifstream is(out, std::ios::binary);
  const Matrix m = read_matrix_binary(is);
  EXPECT_EQ(m.rows(), 16);
  std::ifstream side(out + ".json");
  const Json j = Json::parse(side);
  EXPECT_EQ(j.at("provenance").at("command"), "build");
  EXPECT_FALSE(j.contains("matrix"));
}

TEST_F(Cli, BuildPathsAgree) {
  const Matrix a = matrix_from_json(run_json("build --region interval:-1,1 --dim 32").at("matrix"));
  const Matrix s = matrix_from_json(run_json("build --region interval:-1,1 --dim 32 --path smeared --quadrature 64").at("matrix"));
  EXPECT_LE(max_abs_diff(a, s, 16), 1e-8);
  const Json o = run_json("build --region rect:-1,1,-1,1 --dim 12 --grid -1,1,-1,1,100,100");
  EXPECT_EQ(o.at("provenance").at("path"), "oracle");
  EXPECT_TRUE(o.at("provenance").contains("grid"));
}

TEST_F(Cli, MassRoutes) {
  const Json whole = run_json("mass --region disc:a=20 --state vacuum --dim 16");
  EXPECT_NEAR(whole.at("field_route").at("value").get<double>(), kPi / 2, 1e-8);
  EXPECT_NEAR(whole.at("operator_route").at("value").get<double>(), kPi / 2, 1e-8);
  EXPECT_EQ(whole.at("convention"), "bare");
  const Json empty = run_json("mass --region empty --state vacuum --dim 16");
  EXPECT_EQ(empty.at("field_route").at("value").get<double>(), 0.0);
  const Json neg = run_json("mass --region disc:a=1 --state fock:1 --dim 16 --grid -1,1,-1,1,100,100");
  EXPECT_LT(neg.at("field_route").at("value").get<double>(), 0.0);
  EXPECT_LE(neg.at("deviation").get<double>(), 1e-12);
  const Json norm = run_json("mass --region disc:a=20 --state coherent:0.3,0.1 --dim 32 --convention two_over_pi");
  EXPECT_NEAR(norm.at("field_route").at("value").get<double>(), 1.0, 1e-8);
}

TEST_F(Cli, MassWithOrderingParameter) {
  const Json q = run_json("mass --region rect:-1,1,-1,1 --state vacuum --dim 16 --s -1 --grid -1,1,-1,1,100,100");
  EXPECT_LE(q.at("deviation").get<double>(), 1e-10);
  EXPECT_GT(q.at("field_route").at("value").get<double>(), 0.0);
}

TEST_F(Cli, VerifyTargets) {
  const Json dil = run_json("verify --target dilation --dim 6");
  EXPECT_TRUE(dil.at("report").at("pass").get<bool>());
  EXPECT_LE(dil.at("report").at("abs_dev").get<double>(), 1e-12);
  const Json circ = run_json("verify --target circle --a 1 --dim 48");
  EXPECT_TRUE(circ.at("report").at("pass").get<bool>());
  const Json kr = run_json("verify --target kraus --a0 1 --a 1 --L 3.14159 --dim 64");
  const auto& diag = kr.at("report").at("diagnostics");
  EXPECT_TRUE(diag.contains("candidate_literal"));
  EXPECT_TRUE(diag.contains("candidate_pi-parity"));
  const CliResult shift = run("verify --target shift --dim 48");
  EXPECT_EQ(shift.code, 1);
}

TEST_F(Cli, VerifyWritesReportFile) {
  const std::string out = path("report.json");
  ASSERT_EQ(run("verify --target comb --n 3 --dim 48 --output " + out).code, 0);
  std::ifstream is(out);
  const Json j = Json::parse(is);
  const OracleReport rep = report_from_json(j.at("report"));
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(j.at("provenance").at("command"), "verify");
}

TEST_F(Cli, FieldHusimiIsNonnegative) {
  const std::string out = path("q.bin");
  ASSERT_EQ(run("field --state vacuum --s -1 --dim 16 --grid -3,3,-3,3,41,41 --format bin --output " + out).code, 0);
  std::ifstream is(out, std::ios::binary);
  const QuasiField f = read_raster(is);
  EXPECT_EQ(f.grid.nq, 41);
  EXPECT_GE(f.min(), 0.0);
  EXPECT_TRUE(fs::exists(out + ".json"));
}

TEST_F(Cli, FieldFockOneAtOrigin) {
  const std::string out = path("w.csv");
  ASSERT_EQ(run("field --state fock:1 --dim 16 --grid -1,1,-1,1,33,33 --format csv --output " + out).code, 0);
  std::ifstream is(out);
  std::string line;
  bool header = false;
  double origin = 0.0;
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header) {
      EXPECT_EQ(line, "q,p,value");
      header = true;
      continue;
    }
    double q, p, v;
    char c1, c2;
    std::istringstream ls(line);
    ls >> q >> c1 >> p >> c2 >> v;
    if (std::abs(q) < 1e-12 && std::abs(p) < 1e-12) origin = v;
  }
  EXPECT_NEAR(origin, -1.0, 1e-12);
}

TEST_F(Cli, FieldCoherentPeak) {
  const Json j = run_json("field --state coherent:0.7 --dim 32 --grid -3,3,-3,3,60,60 --format json");
  const PhaseGrid g = grid_from_json(j.at("grid"));
  const auto values = j.at("values").get<std::vector<double>>();
  const auto peak = static_cast<Index>(std::max_element(values.begin(), values.end()) - values.begin());
  const Complex at = g.alpha(peak % g.nq, peak / g.nq);
  double best = 1e9;
  for (Index jj = 0; jj < g.np; ++jj)
    for (Index i = 0; i < g.nq; ++i) best = std::min(best, std::abs(g.alpha(i, jj) - Complex(0.7)));
  EXPECT_NEAR(std::abs(at - Complex(0.7)), best, 1e-12);
}

}  // namespace
}  // namespace phase_ovm
