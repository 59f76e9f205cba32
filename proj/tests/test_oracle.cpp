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

#include <cmath>

#include "phase_ovm/oracle.hpp"
#include "phase_ovm/verify.hpp"

namespace phase_ovm {
namespace {

TEST(ExactMass, ClosedForms) {
  EXPECT_NEAR(*exact_vacuum_mass(Region2D::rectangle(-1.0, 1.0, -1.0, 1.0)), 1.1154925707020673, 1e-15);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(*exact_vacuum_mass(Region2D::rectangle(0.0, inf, -inf, inf)), kPi / 4, 1e-15);
  EXPECT_NEAR(*exact_vacuum_mass(Region2D::disc(1e3)), kPi / 2, 1e-15);
  EXPECT_EQ(*exact_vacuum_mass(Region2D::empty()), 0.0);
  EXPECT_FALSE(exact_vacuum_mass(Region2D::circle(1.0)).has_value());
}

TEST(VerifyRegionOperator, IntervalPasses) {
  const auto rep = verify_region_operator(CharacteristicFunction1D::interval(-1.0, 1.0), 48, 1e-6);
  EXPECT_TRUE(rep.pass) << rep.abs_dev;
  EXPECT_EQ(rep.analytic.size(), 24u);
  EXPECT_EQ(rep.params.at("quadrature_points"), 64.0);
}

TEST(VerifyRegionOperator, FourierUsesOccupationSeries) {
  const auto rep = verify_region_operator(CharacteristicFunction1D::fourier(1.0, {0.5}, {}, 2.0), 48, 1e-8);
  EXPECT_TRUE(rep.pass) << rep.abs_dev;
  EXPECT_NE(rep.label.find("occupation"), std::string::npos);
}

TEST(VerifyRegionOperator, CircleReportsLiteralKernelDiagnostic) {
  const auto rep = verify_region_operator(Region2D::circle(1.0), 48, 1e-8);
  EXPECT_TRUE(rep.pass) << rep.abs_dev;
  EXPECT_GT(rep.diagnostics.at("literal_kernel_e2iaP_max_abs"), 1.0);
  EXPECT_FALSE(rep.note.empty());
}

TEST(VerifyRegionOperator, DiscReportsAreaForm) {
  VerifyOptions opt;
  opt.grid = PhaseGrid{-1.0, 1.0, -1.0, 1.0, 100, 100};
  const auto rep = verify_region_operator(Region2D::disc(1.0), 48, 1e-7, opt);
  EXPECT_TRUE(rep.pass) << rep.abs_dev;
  EXPECT_TRUE(rep.diagnostics.count("area_form_minus_K_D_max_abs"));
  EXPECT_GT(rep.diagnostics.at("literal_phase_average_K_L_max_abs"), 0.1);
}

TEST(VerifyRegionOperator, RectangleTraceEqualsFieldMass) {
  VerifyOptions opt;
  opt.grid = PhaseGrid{-2.0, 2.0, -2.0, 2.0, 64, 64};
  opt.state = QuantumState::coherent(Complex(0.3, 0.2), 24);
  const auto rep = verify_region_operator(Region2D::rectangle(-1.0, 1.0, -0.5, 1.5), 24, 1e-10, opt);
  EXPECT_TRUE(rep.pass) << rep.abs_dev;
  opt.state = QuantumState::fock(0, 12);
  EXPECT_THROW(verify_region_operator(Region2D::rectangle(-1.0, 1.0, -1.0, 1.0), 24, 1e-10, opt), Error);
}

TEST(Sweep, AxisValidation) {
  const RegionDescriptor r = CharacteristicFunction1D::interval(-1.0, 1.0);
  EXPECT_THROW(convergence_sweep(r, {32, 64}, {}, {64}), Error);
  EXPECT_THROW(convergence_sweep(r, {32, 64}, {PhaseGrid{}}, {16, 32}), Error);
}

TEST(Sweep, CircleDimensionSweepIsAtRoundoff) {
  const auto sweep = convergence_sweep(Region2D::circle(1.0), {24, 48, 96});
  ASSERT_EQ(sweep.size(), 3u);
  for (const auto& rep : sweep) EXPECT_LE(rep.abs_dev, kRoundoffFloor);
  EXPECT_TRUE(sweep_is_monotone(sweep));
}

TEST(Sweep, GridRefinementApproachesExactMass) {
  const Region2D rect = Region2D::rectangle(-1.0, 1.0, -1.0, 1.0);
  std::vector<PhaseGrid> grids;
  for (Index n : {40, 80, 160}) grids.push_back(PhaseGrid{-1.3, 1.3, -1.3, 1.3, n, n});
  const auto sweep = convergence_sweep(rect, {16}, grids, {64}, 1e-2);
  ASSERT_EQ(sweep.size(), 3u);
  EXPECT_TRUE(sweep_is_monotone(sweep));
  EXPECT_LT(sweep[2].abs_dev, sweep[0].abs_dev);
}

TEST(Sweep, MonotonicityRule) {
  auto make = [](std::vector<double> devs) {
    std::vector<OracleReport> out;
    for (double d : devs) {
      OracleReport r;
      r.abs_dev = d;
      out.push_back(r);
    }
    return out;
  };
  EXPECT_TRUE(sweep_is_monotone(make({1e-3, 5e-4, 5.2e-4})));
  EXPECT_FALSE(sweep_is_monotone(make({1e-3, 5e-4, 1e-3})));
  EXPECT_TRUE(sweep_is_monotone(make({1e-15, 3e-15})));
}

TEST(Targets, AllNamesDispatch) {
  EXPECT_EQ(verification_targets().size(), 12u);
  EXPECT_THROW(run_verification("nonsense", VerifyParams{}), Error);
}

TEST(Targets, DefaultParametersPass) {
  VerifyParams p;
  for (const std::string t : {"circle", "disc", "segment", "interval", "kraus", "rotation", "squeeze", "comb"}) {
    const auto rep = run_verification(t, p);
    EXPECT_TRUE(rep.pass) << t << " " << rep.abs_dev << " " << rep.label;
  }
}

TEST(Targets, LiteralShiftIsReportedAsFailing) {
  const auto rep = run_verification("shift", VerifyParams{});
  EXPECT_FALSE(rep.pass);
  for (const char* m : {"left", "right", "conjugate"})
    EXPECT_LE(rep.diagnostics.at(std::string(m) + "_translated_region"), 1e-10);
}

TEST(Targets, TwoModeAndRandomTargets) {
  VerifyParams p;
  p.dim = 6;
  p.draws = 2;
  EXPECT_TRUE(run_verification("dilation", p).pass);
  EXPECT_TRUE(run_verification("parity-sum", p).pass);
  p.dim = 24;
  p.draws = 4;
  const auto q = run_verification("quasiprob", p);
  EXPECT_TRUE(q.pass) << q.abs_dev;
}

TEST(Targets, SeedsAreReproducible) {
  VerifyParams p;
  p.dim = 16;
  p.draws = 3;
  EXPECT_EQ(run_verification("quasiprob", p).abs_dev, run_verification("quasiprob", p).abs_dev);
}

}  // namespace
}  // namespace phase_ovm
