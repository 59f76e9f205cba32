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
#include <sstream>

#include "phase_ovm/quasiprob.hpp"
#include "phase_ovm/random.hpp"

namespace phase_ovm {
namespace {

double coherent_reference(Complex beta, Complex alpha, double s) {
  return 2.0 / kPi / (1.0 - s) * std::exp(-2.0 * std::norm(alpha - beta) / (1.0 - s));
}

TEST(ParityS, DiagonalAndLimits) {
  const auto d = parity_s_diagonal(0.0, 4);
  EXPECT_EQ(d[0], 1.0);
  EXPECT_EQ(d[1], -1.0);
  EXPECT_EQ(d[3], -1.0);
  const auto q = parity_s_diagonal(-1.0, 3);
  EXPECT_EQ(q[0], 0.5);
  EXPECT_EQ(q[1], 0.0);
  const auto h = parity_s_diagonal(0.5, 3);
  EXPECT_NEAR(h[2], 2.0 * 9.0, 1e-12);
  EXPECT_LE(max_abs_diff(parity_s(0.0, 10).op.matrix(), parity_matrix(10), 10), 0.0);
}

TEST(ParityS, SingularAtOne) {
  try {
    parity_s(1.0, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular_parameter);
  }
  EXPECT_THROW(parity_s(std::nan(""), 8), Error);
}

TEST(Quasiprob, CoherentStateReference) {
  const Complex beta(0.5, 0.1), alpha(0.3, -0.2);
  const auto v = quasiprob_value(QuantumState::coherent(beta, 40), alpha, -0.5);
  EXPECT_NEAR(v.value, 0.35687091446161067, 1e-10);
  EXPECT_NEAR(v.kernel, v.series, 1e-10);
  EXPECT_NEAR(std::abs(v.imaginary), 0.0, 1e-12);
}

TEST(Quasiprob, CoherentClosedFormAcrossS) {
  const Complex beta(-0.4, 0.7);
  // s near 1 amplifies the truncation of the state itself, so keep a wide basis.
  const auto state = QuantumState::coherent(beta, 80);
  for (double s : {-1.0, -0.3, 0.0, 0.4, 0.8})
    for (Complex alpha : {Complex(0.0), Complex(0.2, 0.5), Complex(-1.0, 1.1)})
      EXPECT_NEAR(quasiprob_series(state, alpha, s) * 2.0 / kPi, coherent_reference(beta, alpha, s), 1e-9) << s;
}

TEST(Quasiprob, FockOneWigner) {
  const auto v = quasiprob_value(QuantumState::fock(1, 16), Complex(0.6, 0.3), 0.0);
  EXPECT_NEAR(v.value, 0.20706422738850015, 1e-12);
  EXPECT_NEAR(quasiprob_value(QuantumState::fock(1, 16), 0.0, 0.0).value, -2.0 / kPi, 1e-13);
}

TEST(Quasiprob, HusimiOfVacuum) {
  EXPECT_NEAR(quasiprob_value(QuantumState::fock(0, 8), Complex(0.8, 0.3), -1.0).value, 0.15339639578655783, 1e-13);
}

TEST(Quasiprob, KernelAndSeriesAgreeOnMixedStates) {
  Rng rng(11);
  const auto state = QuantumState::mixed(random_density(8, rng));
  for (double s : {-0.7, 0.0, 0.5}) {
    const Complex k = quasiprob_kernel(state, Complex(0.4, -0.6), s);
    EXPECT_NEAR(k.real(), quasiprob_series(state, Complex(0.4, -0.6), s), 1e-9) << s;
    EXPECT_NEAR(k.imag(), 0.0, 1e-10);
  }
}

TEST(Field, HusimiIsNonnegative) {
  const PhaseGrid grid{-3.0, 3.0, -3.0, 3.0, 32, 32};
  for (const auto& st : {QuantumState::fock(3, 24), QuantumState::squeezed_vacuum(0.5, 40)}) {
    const QuasiField f = wigner_field(st, grid, WignerConvention::bare, -1.0);
    EXPECT_GE(f.min(), -1e-14);
  }
  EXPECT_LT(wigner_field(QuantumState::fock(1, 16), grid).min(), -0.9);
}

TEST(Field, ConventionScalesValues) {
  const PhaseGrid grid{-2.0, 2.0, -2.0, 2.0, 32, 32};
  const auto st = QuantumState::fock(2, 12);
  const QuasiField bare = wigner_field(st, grid);
  const QuasiField scaled = wigner_field(st, grid, WignerConvention::two_over_pi);
  for (std::size_t c = 0; c < bare.values.size(); c += 37) EXPECT_NEAR(scaled.values[c], 2.0 / kPi * bare.values[c], 1e-15);
  EXPECT_EQ(to_string(scaled.convention), "two_over_pi");
}

TEST(Mass, RectangleVacuumExact) {
  const double m = quasiprob_mass(QuantumState::fock(0, 8), Region2D::rectangle(-1.0, 1.0, -1.0, 1.0),
                                   PhaseGrid{-1.0, 1.0, -1.0, 1.0, 200, 200});
  EXPECT_NEAR(m, 1.1154925707020673, 2e-5);
}

TEST(Mass, NormalisationOverThePlane) {
  const PhaseGrid grid{-8.0, 8.0, -8.0, 8.0, 128, 128};
  const Region2D plane = Region2D::rectangle(-8.0, 8.0, -8.0, 8.0);
  for (const auto& st : {QuantumState::fock(0, 8), QuantumState::fock(2, 8), QuantumState::coherent(Complex(0.5, -0.5), 32)}) {
    EXPECT_NEAR(quasiprob_mass(st, plane, grid, 0.0, WignerConvention::two_over_pi), 1.0, 1e-8);
    EXPECT_NEAR(quasiprob_mass(st, plane, grid, -1.0, WignerConvention::two_over_pi), 1.0, 1e-8);
    EXPECT_NEAR(quasiprob_mass(st, plane, grid), kPi / 2, 1e-8);
  }
}

TEST(Mass, RefusesUnresolvedRegion) {
  EXPECT_THROW(quasiprob_mass(QuantumState::fock(0, 8), Region2D::circle(1.0)), Error);
  EXPECT_THROW(quasiprob_mass(QuantumState::fock(0, 8), Region2D::rectangle(0.0, 0.1, 0.0, 0.1)), Error);
}

TEST(Export, CsvLayout) {
  const PhaseGrid grid{-1.0, 1.0, -1.0, 1.0, 32, 32};
  const QuasiField f = wigner_field(QuantumState::fock(0, 4), grid);
  std::ostringstream os;
  write_csv(f, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "q,p,value");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 32 * 32);
}

TEST(Export, RasterRoundTrip) {
  const PhaseGrid grid{-1.5, 2.0, -1.0, 0.5, 40, 33};
  const QuasiField f = wigner_field(QuantumState::fock(1, 6), grid, WignerConvention::two_over_pi, -0.25);
  std::stringstream ss;
  write_raster(f, ss);
  EXPECT_EQ(ss.str().size(), 8u + 3 * 4 + 5 * 8 + 4 + f.values.size() * 8);
  const QuasiField g = read_raster(ss);
  EXPECT_TRUE(g.grid.same_as(f.grid));
  EXPECT_EQ(g.s, -0.25);
  EXPECT_EQ(g.convention, WignerConvention::two_over_pi);
  EXPECT_EQ(g.values, f.values);
  std::stringstream bad("NOTARASTER");
  EXPECT_THROW(read_raster(bad), Error);
  std::string cut = ss.str().substr(0, 40);
  std::stringstream truncated(cut);
  EXPECT_THROW(read_raster(truncated), Error);
}

}  // namespace
}  // namespace phase_ovm
