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

// Seeded random operators and states for property checks.

#include <cstdint>
#include <random>

#include "phase_ovm/fock.hpp"

namespace phase_ovm {

using Rng = std::mt19937_64;

inline Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

/// G G^dag / Tr with G dim x rank Gaussian.
inline Matrix random_density(Index dim, Rng& rng, Index rank = -1) {
  const Matrix g = random_matrix(dim, rank < 1 ? dim : rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline Vector random_unit_vector(Index dim, Rng& rng) {
  Vector v = random_matrix(dim, 1, rng).col(0);
  return v / v.norm();
}

inline Complex random_complex_in_disc(double radius, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

}  // namespace phase_ovm
