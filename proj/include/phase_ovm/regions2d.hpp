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

#pragma once

// Phase averaging and the rotationally symmetric OVMs (circle, segment,
// rotated-segment disc), plus the grid oracle K(X) for arbitrary 2D regions.

#include <cmath>
#include <vector>

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"
#include "phase_ovm/parallel.hpp"
#include "phase_ovm/quadrature.hpp"
#include "phase_ovm/region_types.hpp"
#include "phase_ovm/regions1d.hpp"

namespace phase_ovm {

/// int_0^{2pi} e^{-i phi N} X e^{i phi N} dphi = 2 pi diag(X).
inline FockOperator phase_average(const FockOperator& x) {
  return FockOperator(Matrix((2.0 * kPi * x.matrix().diagonal()).asDiagonal()));
}

/// Trapezoid rule on the full turn; exact for |m - n| < nodes.
inline FockOperator phase_average_quadrature(const FockOperator& x, int nodes = 256) {
  if (nodes < 1) throw Error(ErrorKind::invalid_quadrature, "need at least one node");
  const Index dim = x.dim();
  Matrix acc = Matrix::Zero(dim, dim);
  const double w = 2.0 * kPi / nodes;
  for (int k = 0; k < nodes; ++k) {
    const double phi = w * k;
    Vector u(dim);
    for (Index n = 0; n < dim; ++n) u(n) = std::polar(1.0, -phi * static_cast<double>(n));
    acc += w * (u.asDiagonal() * x.matrix() * u.conjugate().asDiagonal());
  }
  return FockOperator(std::move(acc));
}

/// Pi e^{icP} as the exact compression of the untruncated operator
/// (e^{icP} = D(-c/sqrt2)).
inline FockOperator parity_momentum_kernel(double c, Index dim) {
  detail::require_dim(dim, 2);
  return FockOperator(parity_matrix(dim) * displacement_elements(Complex(-c / std::sqrt(2.0)), dim, dim));
}

/// Pi e^{2iaP}, the kernel rotated into the circle OVM.
inline FockOperator circle_kernel(double a, Index dim) { return parity_momentum_kernel(2.0 * a, dim); }

/// Diagonal entries 2 pi (-1)^n e^{-a^2/2} L_n(a^2).
inline RegionOperator circle_ovm(double a, Index dim) {
  if (a < 0.0) throw Error(ErrorKind::invalid_region, "circle radius must be nonnegative");
  detail::require_dim(dim, 2);
  Vector d(dim);
  const double g = std::exp(-0.5 * a * a);
  for (Index n = 0; n < dim; ++n)
    d(n) = 2.0 * kPi * (n % 2 == 0 ? 1.0 : -1.0) * g * laguerre(static_cast<int>(n), a * a);
  return RegionOperator{FockOperator::diagonal(d), Region2D::circle(a), ConstructionPath::analytic};
}

/// The point-kernel whose phase average reproduces circle_ovm(a) under
/// [Q,P] = i: Pi e^{i sqrt2 a P}.
inline FockOperator circle_kernel_matched(double a, Index dim) {
  return parity_momentum_kernel(std::sqrt(2.0) * a, dim);
}

/// K_L(a) = sin(aP)/P Pi = int_{-a/2}^{a/2} e^{2ixP} dx Pi.
inline RegionOperator segment_ovm(double a, Index dim) {
  if (a <= 0.0) throw Error(ErrorKind::invalid_region, "segment width must be positive");
  detail::require_dim(dim, 2);
  Matrix k = function_of_momentum(dim, [a](double p) {
               const double x = a * p;
               return std::abs(x) < 1e-4 ? a * (1.0 - x * x / 6.0 + x * x * x * x / 120.0) : std::sin(x) / p;
             }) *
             parity_matrix(dim);
  return RegionOperator{FockOperator(std::move(k)), CharacteristicFunction1D::interval(-0.5 * a, 0.5 * a),
                        ConstructionPath::analytic};
}

/// Gauss-Legendre of int_{-a/2}^{a/2} e^{2ixP} dx Pi over exact displacement
/// compressions.
inline RegionOperator segment_ovm_quadrature(double a, Index dim, int points = 64) {
  if (a <= 0.0) throw Error(ErrorKind::invalid_region, "segment width must be positive");
  if (points < 8) throw Error(ErrorKind::invalid_quadrature, "need at least 8 quadrature points");
  const QuadratureRule rule = gauss_legendre(points, -0.5 * a, 0.5 * a);
  Matrix acc = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    acc += rule.weights[k] * displacement_elements(Complex(-std::sqrt(2.0) * rule.nodes[k]), dim, dim);
  return RegionOperator{FockOperator(acc * parity_matrix(dim)), CharacteristicFunction1D::interval(-0.5 * a, 0.5 * a),
                        ConstructionPath::smeared};
}

/// K_D(a): diagonal entries 2 pi (-1)^n int_{-a/2}^{a/2} e^{-x^2/2} L_n(x^2) dx.
inline RegionOperator disc_ovm(double a, Index dim, int quadrature_points = 64) {
  if (a <= 0.0) throw Error(ErrorKind::invalid_region, "disc width must be positive");
  if (quadrature_points < 16) throw Error(ErrorKind::invalid_quadrature, "need at least 16 quadrature points");
  detail::require_dim(dim, 2);
  const QuadratureRule rule = gauss_legendre(quadrature_points, -0.5 * a, 0.5 * a);
  Vector d = Vector::Zero(dim);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double x = rule.nodes[k];
    const double g = rule.weights[k] * std::exp(-0.5 * x * x);
    // upward Laguerre recurrence shared across n
    double l0 = 1.0, l1 = 1.0 - x * x;
    for (Index n = 0; n < dim; ++n) {
      const double ln = n == 0 ? l0 : l1;
      d(n) += g * ln;
      if (n >= 1) {
        const double dn = static_cast<double>(n);
        const double next = ((2.0 * dn + 1.0 - x * x) * l1 - dn * l0) / (dn + 1.0);
        l0 = l1;
        l1 = next;
      }
    }
  }
  for (Index n = 0; n < dim; ++n) d(n) *= 2.0 * kPi * (n % 2 == 0 ? 1.0 : -1.0);
  return RegionOperator{FockOperator::diagonal(d), Region2D::disc(a), ConstructionPath::analytic};
}

/// sqrt2 * phase_average(segment_ovm(a / sqrt2)): the rotated segment whose
/// kernel matches circle_ovm, i.e. the operator K_D(a) equals under [Q,P] = i.
inline FockOperator disc_ovm_matched(double a, Index dim) {
  return std::sqrt(2.0) * phase_average(segment_ovm(a / std::sqrt(2.0), dim).op);
}

/// K(X) = int_X D(alpha) Pi D(alpha)^dag d^2alpha by the midpoint rule, using
/// D(alpha) Pi D(alpha)^dag = D(2 alpha) Pi on every cell centre inside X.
inline RegionOperator region_ovm_oracle(const Region2D& region, Index dim, const PhaseGrid& grid = {}) {
  detail::require_dim(dim, 2);
  grid.validate();
  if (region.is<Circle>())
    throw Error(ErrorKind::grid_too_coarse, "a circle has zero area; its OVM comes from phase averaging");
  const double feature = region.smallest_feature(grid);
  const double cell = std::max(grid.dq(), grid.dp());
  if (feature < 10.0 * cell)
    throw Error(ErrorKind::grid_too_coarse, "grid resolves the region with fewer than 10 cells across");

  std::vector<std::pair<Index, Index>> cells;
  for (Index j = 0; j < grid.np; ++j)
    for (Index i = 0; i < grid.nq; ++i)
      if (region.contains(grid.q(i), grid.p(j))) cells.emplace_back(i, j);

  std::vector<Matrix> partial(worker_count(), Matrix::Zero(dim, dim));
  parallel_chunks(cells.size(), [&](std::size_t begin, std::size_t end, unsigned w) {
    Matrix& acc = partial[w];
    for (std::size_t c = begin; c < end; ++c) acc += displacement_elements(2.0 * grid.alpha(cells[c].first, cells[c].second), dim, dim);
  });
  Matrix k = Matrix::Zero(dim, dim);
  for (const auto& m : partial) k += m;
  k = grid.measure() * k * parity_matrix(dim);
  return RegionOperator{FockOperator(std::move(k)), region, ConstructionPath::oracle};
}

}  // namespace phase_ovm
