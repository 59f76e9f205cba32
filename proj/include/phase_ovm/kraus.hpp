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

// Kraus-generator maps, their duals, and the two-mode parity-sum
// construction with its ancilla dilation.
//
// Composite index convention: |n1> (x) |n2> -> n1 * dim + n2 (mode 1 major).
// With an ancilla the ancilla slot is leftmost: |k>_A (x) |n1 n2>.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"

namespace phase_ovm {

/// Positive map X -> sum_i A_i X A_i^dag. Generators need not satisfy
/// sum A^dag A = 1; these maps are generally trace increasing.
struct KrausMap {
  std::vector<FockOperator> generators;
  std::string label;

  Index dim() const { return generators.empty() ? 0 : generators.front().dim(); }

  void validate() const {
    if (generators.empty()) throw Error(ErrorKind::invalid_region, "Kraus map needs at least one generator");
    for (const auto& g : generators)
      if (g.dim() != dim()) throw Error(ErrorKind::dimension_mismatch, "Kraus generators must share one dimension");
  }

  /// sum A^dag A - 1 >= 0 (up to tol).
  bool is_trace_increasing(double tol = 1e-10) const {
    Matrix s = Matrix::Zero(dim(), dim());
    for (const auto& g : generators) s += g.matrix().adjoint() * g.matrix();
    s -= Matrix::Identity(dim(), dim());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(s, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
  }
};

inline Matrix apply_map(const KrausMap& map, const Matrix& x) {
  map.validate();
  if (x.rows() != map.dim() || x.cols() != map.dim())
    throw Error(ErrorKind::dimension_mismatch, "operand dimension does not match the map");
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const auto& g : map.generators) out.noalias() += g.matrix() * x * g.matrix().adjoint();
  return out;
}

inline FockOperator apply_map(const KrausMap& map, const FockOperator& x) { return FockOperator(apply_map(map, x.matrix())); }

/// eps*(rho) = sum A^dag rho A, so Tr(rho eps(X)) = Tr(eps*(rho) X).
inline KrausMap dual_map(const KrausMap& map) {
  map.validate();
  KrausMap out;
  out.label = map.label.rfind("dual(", 0) == 0 && map.label.back() == ')' ? map.label.substr(5, map.label.size() - 6)
                                                                          : "dual(" + map.label + ")";
  out.generators.reserve(map.generators.size());
  for (const auto& g : map.generators) out.generators.push_back(g.adjoint());
  return out;
}

/// Discretised phase-averaging map {sqrt(2 pi / K) e^{-i phi_k N}}, phi_k = 2 pi k / K.
inline KrausMap phase_averaging_map(Index dim, int nodes = 256) {
  KrausMap map;
  map.label = "phase-average";
  const double w = std::sqrt(2.0 * kPi / nodes);
  for (int k = 0; k < nodes; ++k) map.generators.push_back(w * rotation(-2.0 * kPi * k / nodes, dim));
  return map;
}

/// Tr(AB) without forming the product.
inline Complex trace_of_product(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Trace over the leftmost factor of dimension aux_dim.
inline Matrix partial_trace_aux(const Matrix& op, Index aux_dim) {
  const Index sys = op.rows() / aux_dim;
  if (sys * aux_dim != op.rows() || op.rows() != op.cols())
    throw Error(ErrorKind::dimension_mismatch, "operator does not factor over the ancilla");
  Matrix out = Matrix::Zero(sys, sys);
  for (Index k = 0; k < aux_dim; ++k) out += op.block(k * sys, k * sys, sys, sys);
  return out;
}

/// Trace over mode 2 of a (first_dim x second_dim)-mode operator.
inline Matrix partial_trace_second(const Matrix& op, Index first_dim, Index second_dim) {
  Matrix out = Matrix::Zero(first_dim, first_dim);
  for (Index i = 0; i < first_dim; ++i)
    for (Index j = 0; j < first_dim; ++j)
      for (Index k = 0; k < second_dim; ++k) out(i, j) += op(i * second_dim + k, j * second_dim + k);
  return out;
}

/// Trace over mode 1.
inline Matrix partial_trace_first(const Matrix& op, Index first_dim, Index second_dim) {
  Matrix out = Matrix::Zero(second_dim, second_dim);
  for (Index k = 0; k < first_dim; ++k) out += op.block(k * second_dim, k * second_dim, second_dim, second_dim);
  return out;
}

/// Operator that is block diagonal over fixed-total-excitation sectors of a
/// two-mode space. J conserves n1 + n2, so V = exp(-i pi J / 2) has this form.
struct SectorOperator {
  struct Block {
    std::vector<Index> indices;
    Matrix matrix;
  };
  Index full_dim = 0;
  std::vector<Block> blocks;

  Matrix dense() const {
    Matrix out = Matrix::Zero(full_dim, full_dim);
    for (const auto& b : blocks)
      for (std::size_t i = 0; i < b.indices.size(); ++i)
        for (std::size_t j = 0; j < b.indices.size(); ++j)
          out(b.indices[i], b.indices[j]) = b.matrix(static_cast<Index>(i), static_cast<Index>(j));
    return out;
  }

  SectorOperator adjoint() const {
    SectorOperator out = *this;
    for (auto& b : out.blocks) b.matrix = b.matrix.adjoint().eval();
    return out;
  }

  SectorOperator squared() const {
    SectorOperator out = *this;
    for (auto& b : out.blocks) b.matrix = (b.matrix * b.matrix).eval();
    return out;
  }

  /// A^dag X A for dense X.
  Matrix sandwich_adjoint_left(const Matrix& x) const {
    Matrix out(full_dim, full_dim);
    for (const auto& bi : blocks) {
      for (const auto& bj : blocks) {
        const auto ni = static_cast<Index>(bi.indices.size());
        const auto nj = static_cast<Index>(bj.indices.size());
        Matrix sub(ni, nj);
        for (Index r = 0; r < ni; ++r)
          for (Index c = 0; c < nj; ++c) sub(r, c) = x(bi.indices[r], bj.indices[c]);
        const Matrix res = bi.matrix.adjoint() * sub * bj.matrix;
        for (Index r = 0; r < ni; ++r)
          for (Index c = 0; c < nj; ++c) out(bi.indices[r], bj.indices[c]) = res(r, c);
      }
    }
    return out;
  }

  /// A D A^dag for a diagonal D given as a vector.
  Matrix sandwich_diagonal(const Vector& diag) const {
    Matrix out = Matrix::Zero(full_dim, full_dim);
    for (const auto& b : blocks) {
      const auto n = static_cast<Index>(b.indices.size());
      Vector d(n);
      for (Index r = 0; r < n; ++r) d(r) = diag(b.indices[r]);
      const Matrix res = b.matrix * d.asDiagonal() * b.matrix.adjoint();
      for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) out(b.indices[r], b.indices[c]) = res(r, c);
    }
    return out;
  }
};

/// Two modes truncated at `dim` levels each.
class TwoModeSystem {
 public:
  explicit TwoModeSystem(Index dim) : dim_(dim) {
    if (dim < 2) throw Error(ErrorKind::invalid_dimension, "dim per mode must be at least 2");
  }

  Index dim() const { return dim_; }
  Index full_dim() const { return dim_ * dim_; }
  Index index(Index n1, Index n2) const { return n1 * dim_ + n2; }

  Vector parity1_diagonal() const { return parity_diagonal(true); }
  Vector parity2_diagonal() const { return parity_diagonal(false); }
  Matrix parity1() const { return parity1_diagonal().asDiagonal(); }
  Matrix parity2() const { return parity2_diagonal().asDiagonal(); }

  /// J = (a1^dag a2 - a2^dag a1) / (2i)
  Matrix generator_j() const {
    Matrix j = Matrix::Zero(full_dim(), full_dim());
    for (Index n1 = 0; n1 < dim_; ++n1)
      for (Index n2 = 0; n2 < dim_; ++n2) {
        // a1^dag a2 |n1, n2> = sqrt((n1+1) n2) |n1+1, n2-1>, and its adjoint
        if (n1 + 1 < dim_ && n2 >= 1) {
          const Complex v = hop(n1, n2) / (2.0 * kI);
          j(index(n1 + 1, n2 - 1), index(n1, n2)) += v;
          j(index(n1, n2), index(n1 + 1, n2 - 1)) += std::conj(v);
        }
      }
    return j;
  }

  /// V = exp(-i pi J / 2), assembled sector by sector of n1 + n2.
  SectorOperator permutation_v() const {
    SectorOperator v;
    v.full_dim = full_dim();
    for (Index total = 0; total <= 2 * (dim_ - 1); ++total) {
      SectorOperator::Block block;
      const Index first = std::max<Index>(0, total - (dim_ - 1));
      const Index last = std::min(total, dim_ - 1);
      for (Index n1 = first; n1 <= last; ++n1) block.indices.push_back(index(n1, total - n1));
      const auto n = static_cast<Index>(block.indices.size());
      Matrix sub = Matrix::Zero(n, n);  // row r <-> n1 = first + r
      for (Index r = 0; r + 1 < n; ++r) {
        const Complex val = hop(first + r, total - first - r) / (2.0 * kI);
        sub(r + 1, r) = val;
        sub(r, r + 1) = std::conj(val);
      }
      const HermitianSpectrum spec(sub);
      block.matrix = spec.apply([](double l) { return std::exp(-kI * (kPi / 2.0) * l); });
      v.blocks.push_back(std::move(block));
    }
    return v;
  }

  /// Sector n1 + n2 <= limit.
  std::vector<Index> protected_indices(Index limit) const {
    std::vector<Index> out;
    for (Index n1 = 0; n1 < dim_; ++n1)
      for (Index n2 = 0; n2 < dim_; ++n2)
        if (n1 + n2 <= limit) out.push_back(index(n1, n2));
    return out;
  }

 private:
  double hop(Index n1, Index n2) const {
    return std::sqrt(static_cast<double>(n1 + 1) * static_cast<double>(n2));
  }

  Vector parity_diagonal(bool first) const {
    Vector d(full_dim());
    for (Index n1 = 0; n1 < dim_; ++n1)
      for (Index n2 = 0; n2 < dim_; ++n2) d(index(n1, n2)) = ((first ? n1 : n2) % 2 == 0) ? 1.0 : -1.0;
    return d;
  }

  Index dim_;
};

inline FockOperator permutation_V(Index dim_per_mode) {
  if (dim_per_mode < 4) throw Error(ErrorKind::invalid_dimension, "dim per mode must be at least 4");
  return FockOperator(TwoModeSystem(dim_per_mode).permutation_v().dense());
}

/// max |Pi2 - V^2 Pi1 V^dag2| on the sector n1 + n2 <= dim/2.
inline double swap_property_deviation(Index dim_per_mode) {
  const TwoModeSystem sys(dim_per_mode);
  const SectorOperator v2 = sys.permutation_v().squared();
  const Matrix swapped = v2.sandwich_diagonal(sys.parity1_diagonal());
  const Matrix pi2 = sys.parity2();
  double dev = 0.0;
  const auto idx = sys.protected_indices(dim_per_mode / 2);
  for (Index r : idx)
    for (Index c : idx) dev = std::max(dev, std::abs(swapped(r, c) - pi2(r, c)));
  return dev;
}

/// The two-generator map eps = {1, V^2}; eps(Pi1) = Pi1 + V^2 Pi1 V^dag2.
inline KrausMap parity_sum_map(Index dim_per_mode) {
  const TwoModeSystem sys(dim_per_mode);
  const Matrix v = sys.permutation_v().dense();
  KrausMap map;
  map.label = "parity-sum";
  map.generators.push_back(FockOperator::identity(sys.full_dim()));
  map.generators.push_back(FockOperator(v * v));
  return map;
}

/// W = [[1, -V^2], [V^dag2, 1]] on ancilla (x) mode1 (x) mode2. W^dag W = 2,
/// so W / sqrt(2) is the unitary dilation; W itself satisfies
/// Tr_A W^dag (|0><0| (x) rho) W = rho + V^dag2 rho V^2.
inline FockOperator dilation_W(Index dim_per_mode) {
  const TwoModeSystem sys(dim_per_mode);
  const Matrix v = sys.permutation_v().dense();
  const Matrix v2 = v * v;
  const Index n = sys.full_dim();
  Matrix w(2 * n, 2 * n);
  w.topLeftCorner(n, n).setIdentity();
  w.topRightCorner(n, n) = -v2;
  w.bottomLeftCorner(n, n) = v2.adjoint();
  w.bottomRightCorner(n, n).setIdentity();
  return FockOperator(std::move(w));
}

/// Tr_A W^dag (|0><0| (x) rho) W.
inline Matrix dilated_dual(const FockOperator& w, const Matrix& rho) {
  const Index n = rho.rows();
  if (w.dim() != 2 * n) throw Error(ErrorKind::dimension_mismatch, "dilation and state dimensions differ");
  Matrix embedded = Matrix::Zero(2 * n, 2 * n);
  embedded.topLeftCorner(n, n) = rho;
  return partial_trace_aux(w.matrix().adjoint() * embedded * w.matrix(), 2);
}

struct ParitySumResult {
  double direct = 0.0;    // Tr(rho (Pi1_alpha + Pi2_beta))
  double via_map = 0.0;   // Tr(rho' eps(Pi1))
  double via_dual = 0.0;  // Tr(eps*(rho') Pi1)
  Index working_dim = 0;  // per-mode dimension used by the map routes

  double value() const { return direct; }
  double spread() const {
    return std::max({std::abs(direct - via_map), std::abs(direct - via_dual), std::abs(via_map - via_dual)});
  }
};

/// <Pi1_alpha + Pi2_beta> for a two-mode density matrix rho (dim^2 x dim^2).
/// The direct route uses exact displaced-parity compressions of the reduced
/// states; the map routes undo the displacement in a padded working space
/// where V is exact on every complete excitation sector.
inline ParitySumResult parity_sum_expectation(const Matrix& rho, Complex alpha, Complex beta, Index dim,
                                              double tol = 1e-10) {
  if (rho.rows() != dim * dim || rho.cols() != dim * dim)
    throw Error(ErrorKind::dimension_mismatch, "two-mode state must be dim^2 x dim^2");
  ParitySumResult res;

  const Matrix rho1 = partial_trace_second(rho, dim, dim);
  const Matrix rho2 = partial_trace_first(rho, dim, dim);
  const Matrix pi = parity_matrix(dim);
  const Matrix k1 = displacement_elements(2.0 * alpha, dim, dim) * pi;
  const Matrix k2 = displacement_elements(2.0 * beta, dim, dim) * pi;
  res.direct = (rho1 * k1).trace().real() + (rho2 * k2).trace().real();

  const double reach = std::max(std::abs(alpha), std::abs(beta));
  Index work = dim + 16 + static_cast<Index>(std::ceil(4.0 * reach * reach + 8.0 * reach));
  for (;; work += dim) {
    if (work > 64) throw Error(ErrorKind::truncation_too_small, "displacement outside the reliable band");
    const Matrix e1 = displacement_elements(alpha, dim, work);
    const Matrix e2 = displacement_elements(beta, dim, work);
    const Matrix e = kron(e1, e2);
    const Matrix shifted = e.adjoint() * rho * e;  // D^dag rho D on work^2 levels

    const TwoModeSystem sys(work);
    double outside = 0.0;
    for (Index n1 = 0; n1 < work; ++n1)
      for (Index n2 = 0; n2 < work; ++n2)
        if (n1 + n2 >= work) outside += std::abs(shifted(sys.index(n1, n2), sys.index(n1, n2)));
    const double lost = std::abs(1.0 - shifted.trace().real());
    if (outside + lost > 1e-14) continue;

    const SectorOperator v2 = sys.permutation_v().squared();
    const Vector pi1 = sys.parity1_diagonal();
    const Matrix eps_pi1 = Matrix(pi1.asDiagonal()) + v2.sandwich_diagonal(pi1);
    res.via_map = trace_of_product(shifted, eps_pi1).real();
    const Matrix dual = shifted + v2.sandwich_adjoint_left(shifted);
    res.via_dual = (dual.diagonal().cwiseProduct(pi1)).sum().real();
    res.working_dim = work;
    break;
  }
  if (res.spread() > tol)
    throw Error(ErrorKind::truncation_too_small, "parity-sum routes disagree by " + std::to_string(res.spread()));
  return res;
}

}  // namespace phase_ovm
