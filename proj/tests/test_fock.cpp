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

#include "phase_ovm/fock.hpp"
#include "phase_ovm/quadrature.hpp"
#include "phase_ovm/random.hpp"

namespace phase_ovm {
namespace {

// Reference values below come from 50-digit evaluations of the explicit
// finite-sum / Rodrigues forms.

TEST(BasicOperators, ParityAndLadder) {
  const auto ops2 = make_basic_operators(2);
  EXPECT_EQ(ops2.parity.matrix()(0, 0), Complex(1.0));
  EXPECT_EQ(ops2.parity.matrix()(1, 1), Complex(-1.0));

  const auto ops3 = make_basic_operators(3);
  const Matrix& a = ops3.annihilation.matrix();
  EXPECT_DOUBLE_EQ(a(0, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(a(1, 2).real(), std::sqrt(2.0));
  EXPECT_EQ((a.cwiseAbs().array() > 0).count(), 2);
}

TEST(BasicOperators, RejectsTinyDimension) {
  try {
    make_basic_operators(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_dimension);
  }
}

TEST(BasicOperators, CanonicalCommutatorAwayFromTheEdge) {
  const auto ops = make_basic_operators(16);
  const Matrix c = ops.position.matrix() * ops.momentum.matrix() - ops.momentum.matrix() * ops.position.matrix();
  const Matrix want = kI * Matrix::Identity(16, 16);
  EXPECT_LE(max_abs_diff(c, want, 14), 1e-13);
  EXPECT_GT(std::abs(c(15, 15) - want(15, 15)), 1.0);  // boundary row is corrupted by truncation
}

TEST(BasicOperators, ParityIdentitiesAreExact) {
  const auto ops = make_basic_operators(20);
  const Matrix& pi = ops.parity.matrix();
  EXPECT_EQ((pi * pi - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((pi * ops.position.matrix() * pi + ops.position.matrix()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((pi * ops.momentum.matrix() * pi + ops.momentum.matrix()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((ops.number.matrix().diagonal().real() - RealVector::LinSpaced(20, 0, 19)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Displacement, VacuumOverlap) {
  const FockOperator d = displacement(Complex(1.0), 32);
  EXPECT_NEAR(d.matrix()(0, 0).real(), 0.60653065971263342, 1e-15);
  EXPECT_NEAR(d.matrix()(0, 0).imag(), 0.0, 1e-15);
  EXPECT_EQ(max_abs_diff(displacement(Complex(0.0), 16), FockOperator::identity(16), 16), 0.0);
}

TEST(Displacement, MatchesFiniteSumElements) {
  const Matrix d = displacement_elements(Complex(0.7, 0.4), 8, 8);
  EXPECT_NEAR(d(3, 5).real(), 0.24047831302199123, 1e-14);
  EXPECT_NEAR(d(3, 5).imag(), -0.40808440997671248, 1e-14);
  const Matrix e = displacement_elements(Complex(-1.1, 2.3), 24, 4);
  EXPECT_NEAR(e(20, 2).real(), 0.010338060776605953, 1e-14);
  EXPECT_NEAR(e(20, 2).imag(), -0.058158806695106921, 1e-14);
}

TEST(Displacement, UnitaryOnCentralBlockAndAdjointIsInverse) {
  const FockOperator d = displacement(Complex(0.0, 1.0), 32);
  const Matrix prod = d.matrix().adjoint() * d.matrix();
  EXPECT_LE(max_abs_diff(prod, Matrix::Identity(32, 32), 8), 1e-9);
  EXPECT_LE(max_abs_diff(prod, Matrix::Identity(32, 32), 16), 1e-6);
  const FockOperator dm = displacement(Complex(0.0, -1.0), 32);
  EXPECT_LE(max_abs_diff(d.adjoint(), dm, 16), 1e-9);
}

TEST(Displacement, ClosedFormStaysBoundedForLargeAmplitude) {
  const Matrix d = displacement_elements(Complex(6.0, 6.0), 64, 400);
  EXPECT_LE(d.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
  // rows of the untruncated unitary have unit norm once the columns cover them
  EXPECT_NEAR(d.row(0).norm(), 1.0, 1e-12);
}

TEST(Displacement, RefusesTooSmallTruncation) {
  try {
    displacement(Complex(5.0), 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::truncation_too_small);
    EXPECT_TRUE(e.is_numerical());
  }
}

TEST(Rotation, GroupLawAndHalfTurn) {
  EXPECT_EQ(max_abs_diff(rotation(0.0, 12), FockOperator::identity(12), 12), 0.0);
  EXPECT_LE(max_abs_diff(rotation(kPi, 12).matrix(), parity_matrix(12), 12), 1e-14);
  EXPECT_LE(max_abs_diff(rotation(0.4, 30) * rotation(1.3, 30), rotation(1.7, 30), 30), 1e-13);
  EXPECT_LE(rotation(2.1, 30).unitarity_defect(), 1e-15);
}

TEST(Squeeze, ScalesQuadratures) {
  const FockOperator s = squeeze(Complex(0.15), 64);
  const auto ops = make_basic_operators(64);
  const Matrix q = s.matrix().adjoint() * ops.position.matrix() * s.matrix();
  const Matrix p = s.matrix().adjoint() * ops.momentum.matrix() * s.matrix();
  EXPECT_LE(max_abs_diff(q, std::exp(0.3) * ops.position.matrix(), 24), 1e-6);
  EXPECT_LE(max_abs_diff(p, std::exp(-0.3) * ops.momentum.matrix(), 24), 1e-6);
  EXPECT_LE(max_abs_diff(s.matrix().adjoint() * s.matrix(), Matrix::Identity(64, 64), 32), 1e-10);
}

TEST(MomentumKet, ValuesAndEigenResidual) {
  const Vector v0 = momentum_ket(0.0, 20);
  EXPECT_NEAR(v0(0).real(), std::pow(kPi, -0.25), 1e-15);
  for (Index n = 1; n < 20; n += 2) EXPECT_EQ(std::abs(v0(n)), 0.0);
  EXPECT_LE(momentum_ket_residual(1.0, 64), 1e-6);
}

TEST(MomentumKet, ResidualNonIncreasingWhenDimDoubles) {
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    double prev = momentum_ket_residual(p, 16);
    for (Index dim : {32, 64, 128}) {
      const double cur = momentum_ket_residual(p, dim);
      EXPECT_LE(cur, std::max(prev, 1e-13)) << "p=" << p << " dim=" << dim;
      prev = cur;
    }
  }
}

TEST(MomentumKet, HermiteFunctionReferences) {
  const auto psi = hermite_functions(31, 1.3);
  EXPECT_NEAR(psi[5], -0.39939146281375076, 1e-14);
  EXPECT_NEAR(hermite_functions(31, -2.1)[30], 0.25598419382178183, 1e-13);
  const Vector v = momentum_ket(1.3, 8);
  EXPECT_NEAR(v(5).imag(), -0.39939146281375076, 1e-14);  // i^5 psi_5
}

TEST(Laguerre, Values) {
  EXPECT_EQ(laguerre(0, 3.2), 1.0);
  for (int n = 0; n < 50; ++n) EXPECT_NEAR(laguerre(n, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(laguerre(2, 1.0), -0.5, 1e-15);
  EXPECT_NEAR(laguerre(10, 3.7), 0.69426256735410782, 1e-13);
  EXPECT_NEAR(laguerre(40, 2.5), 0.56591046218507289, 1e-12);
  EXPECT_TRUE(std::isfinite(laguerre(200, 10.0)));
}

TEST(QuantumState, Validation) {
  EXPECT_THROW(QuantumState::pure(Vector::Ones(4)), Error);
  Matrix rho = Matrix::Zero(3, 3);
  rho(0, 0) = 0.5;
  EXPECT_THROW(QuantumState::mixed(rho), Error);
  rho(1, 1) = 0.5;
  EXPECT_NO_THROW(QuantumState::mixed(rho));
  rho(0, 1) = 0.1;
  EXPECT_THROW(QuantumState::mixed(rho), Error);
  EXPECT_THROW(QuantumState::coherent(Complex(4.0), 12), Error);
}

TEST(QuantumState, NamedStates) {
  const auto c = QuantumState::coherent(Complex(0.7, -0.2), 32);
  const Matrix a = annihilation_matrix(32);
  EXPECT_LE(((a * c.vector()).head(16) - Complex(0.7, -0.2) * c.vector().head(16)).norm(), 1e-12);
  EXPECT_EQ(QuantumState::fock(3, 8).parity_sign(), -1);
  EXPECT_EQ(QuantumState::squeezed_vacuum(0.3, 32).parity_sign(), 1);
  EXPECT_FALSE(c.parity_sign().has_value());
  const auto sq = QuantumState::squeezed_vacuum(0.3, 48);
  const Matrix q = position_matrix(48);
  const double var = (sq.vector().adjoint() * q * q * sq.vector())(0).real();
  EXPECT_NEAR(var, 0.5 * std::exp(0.6), 1e-10);
}

TEST(Quadrature, GaussLegendreExactness) {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto rule = gauss_legendre(n, -0.3, 1.7);
    double sum = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i];
      moment += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 1);
    }
    EXPECT_NEAR(sum, 2.0, 1e-13);
    const double exact = (std::pow(1.7, 2 * n) - std::pow(-0.3, 2 * n)) / (2 * n);
    EXPECT_NEAR(moment, exact, 1e-11 * std::max(1.0, std::abs(exact)));
  }
  EXPECT_THROW(gauss_legendre(0), Error);
}

TEST(Quadrature, CompositeRuleIntegratesGaussian) {
  const auto rule = composite_gauss_legendre(16, 32, -10.0, 10.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
  EXPECT_NEAR(s, std::sqrt(kPi), 1e-13);
}

TEST(Random, DensityIsValidState) {
  Rng rng(5);
  const Matrix rho = random_density(7, rng, 3);
  EXPECT_NO_THROW(QuantumState::mixed(rho));
}

}  // namespace
}  // namespace phase_ovm
