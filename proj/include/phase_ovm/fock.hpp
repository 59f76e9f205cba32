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

// Truncated Fock-space operator algebra.
//
// Conventions (used by every other header, never redefined):
//   hbar = 1,  a = (Q + iP)/sqrt(2),  [Q, P] = i,
//   Fourier transform f~(p) = integral f(q) e^{iqp} dq,
//   alpha = (q + ip)/sqrt(2) on phase space, d^2 alpha = dq dp / 2.
// The basis is {|0>, ..., |dim-1>}. Truncation corrupts the high-n corner of
// ladder-built operators, so numerical comparisons are made on the central
// (low-excitation) block of size dim/2.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "phase_ovm/errors.hpp"

namespace phase_ovm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

inline Index central_block(Index dim) { return dim / 2; }
inline Index central_quarter(Index dim) { return dim / 4; }

/// Dense complex square matrix over the truncated Fock basis.
class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw Error(ErrorKind::dimension_mismatch, "operator matrix must be square");
  }

  static FockOperator identity(Index dim) { return FockOperator(Matrix::Identity(dim, dim)); }
  static FockOperator zero(Index dim) { return FockOperator(Matrix::Zero(dim, dim)); }
  static FockOperator diagonal(const Vector& d) { return FockOperator(Matrix(d.asDiagonal())); }

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }
  Complex operator()(Index r, Index c) const { return m_(r, c); }

  FockOperator adjoint() const { return FockOperator(m_.adjoint()); }

  /// max |M - M^dag|
  double hermiticity_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
  /// max |M^dag M - 1|
  double unitarity_defect() const {
    return (m_.adjoint() * m_ - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
  }
  bool is_hermitian(double tol = 1e-10) const { return hermiticity_defect() <= tol; }
  /// max |[M, X]|
  double commutator_defect(const FockOperator& x) const {
    return (m_ * x.m_ - x.m_ * m_).cwiseAbs().maxCoeff();
  }

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b) { return FockOperator(a.m_ + b.m_); }
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b) { return FockOperator(a.m_ - b.m_); }
  friend FockOperator operator*(const FockOperator& a, const FockOperator& b) { return FockOperator(a.m_ * b.m_); }
  friend FockOperator operator*(Complex s, const FockOperator& a) { return FockOperator(s * a.m_); }
  friend Vector operator*(const FockOperator& a, const Vector& v) { return a.m_ * v; }

 private:
  Matrix m_;
};

/// Largest entry deviation restricted to the leading block x block corner.
inline double max_abs_diff(const Matrix& a, const Matrix& b, Index block) {
  return (a.topLeftCorner(block, block) - b.topLeftCorner(block, block)).cwiseAbs().maxCoeff();
}
inline double max_abs_diff(const FockOperator& a, const FockOperator& b, Index block) {
  return max_abs_diff(a.matrix(), b.matrix(), block);
}
inline double frobenius_diff(const Matrix& a, const Matrix& b, Index block) {
  return (a.topLeftCorner(block, block) - b.topLeftCorner(block, block)).norm();
}

/// Eigen-decomposition of a Hermitian matrix, reused to evaluate scalar
/// functions f(H) = V f(lambda) V^dag.
class HermitianSpectrum {
 public:
  explicit HermitianSpectrum(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::truncation_too_small, "eigendecomposition failed");
    values_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }

  const RealVector& values() const { return values_; }
  const Matrix& vectors() const { return vectors_; }

  template <class F>
  Matrix apply(F&& f) const {
    Vector d(values_.size());
    for (Index i = 0; i < values_.size(); ++i) d(i) = Complex(f(values_(i)));
    return vectors_ * d.asDiagonal() * vectors_.adjoint();
  }

 private:
  RealVector values_;
  Matrix vectors_;
};

struct BasicOperators {
  FockOperator number;
  FockOperator annihilation;
  FockOperator creation;
  FockOperator position;
  FockOperator momentum;
  FockOperator parity;
};

inline Matrix annihilation_matrix(Index dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Matrix parity_matrix(Index dim) {
  Vector d(dim);
  for (Index n = 0; n < dim; ++n) d(n) = (n % 2 == 0) ? 1.0 : -1.0;
  return d.asDiagonal();
}

inline Matrix position_matrix(Index dim) {
  const Matrix a = annihilation_matrix(dim);
  return (a + a.adjoint()) / std::sqrt(2.0);
}

inline Matrix momentum_matrix(Index dim) {
  const Matrix a = annihilation_matrix(dim);
  return (a - a.adjoint()) / (kI * std::sqrt(2.0));
}

inline BasicOperators make_basic_operators(Index dim) {
  if (dim < 2) throw Error(ErrorKind::invalid_dimension, "dim must be at least 2");
  const Matrix a = annihilation_matrix(dim);
  Vector n(dim);
  for (Index k = 0; k < dim; ++k) n(k) = static_cast<double>(k);
  return BasicOperators{
      FockOperator::diagonal(n),
      FockOperator(a),
      FockOperator(a.adjoint()),
      FockOperator(position_matrix(dim)),
      FockOperator(momentum_matrix(dim)),
      FockOperator(parity_matrix(dim)),
  };
}

/// Laguerre polynomial L_n(x) by the three-term upward recurrence.
inline double laguerre(int n, double x) {
  if (n < 0) throw Error(ErrorKind::invalid_dimension, "laguerre order must be nonnegative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Harmonic-oscillator eigenfunctions psi_0(x) .. psi_{count-1}(x), normalised
/// three-term recurrence.
inline std::vector<double> hermite_functions(Index count, double x) {
  std::vector<double> psi(static_cast<std::size_t>(std::max<Index>(count, 0)), 0.0);
  if (count == 0) return psi;
  psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (Index n = 1; n + 1 < count; ++n) {
    const double dn = static_cast<double>(n);
    psi[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * psi[n] - std::sqrt(dn / (dn + 1.0)) * psi[n - 1];
  }
  return psi;
}

/// Momentum wavefunctions are reliable while |p| stays inside the band
/// covered by the truncated oscillator basis.
inline bool in_momentum_band(double p, Index dim) { return std::abs(p) <= std::sqrt(2.0 * static_cast<double>(dim)); }

/// Finite-basis surrogate for the delta-normalised momentum eigenket |p>:
/// components <n|p> = i^n psi_n(p). Not normalised; ||v||^2 grows with dim.
inline Vector momentum_ket(double p, Index dim) {
  const auto psi = hermite_functions(dim, p);
  Vector v(dim);
  Complex phase = 1.0;
  for (Index n = 0; n < dim; ++n) {
    v(n) = phase * psi[n];
    phase *= kI;
  }
  return v;
}

/// Eigen-residual ||(P - p) v|| / ||v|| on the central block.
inline double momentum_ket_residual(double p, Index dim) {
  const Vector v = momentum_ket(p, dim);
  const Vector r = momentum_matrix(dim) * v - p * v;
  const Index h = central_block(dim);
  return r.head(h).norm() / v.head(h).norm();
}

namespace detail {

// g_n^{(k)}(x) = sqrt(n!/(n+k)!) x^{k/2} e^{-x/2} L_n^{(k)}(x) for n = 0..count-1.
// The normalised recurrence keeps every value bounded by 1.
inline void normalized_laguerre_run(int k, double x, Index count, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(count), 0.0);
  if (count == 0) return;
  double g0;
  if (x == 0.0) {
    g0 = (k == 0) ? 1.0 : 0.0;
  } else {
    g0 = std::exp(-0.5 * x + 0.5 * k * std::log(x) - 0.5 * std::lgamma(k + 1.0));
  }
  double prev = 0.0;
  double cur = g0;
  for (Index n = 0; n < count; ++n) {
    out[static_cast<std::size_t>(n)] = cur;
    const double dn = static_cast<double>(n);
    const double next =
        ((2.0 * dn + 1.0 + k - x) * cur - std::sqrt(dn * (dn + k)) * prev) / std::sqrt((dn + 1.0) * (dn + k + 1.0));
    prev = cur;
    cur = next;
  }
}

}  // namespace detail

/// Exact matrix elements <m|D(alpha)|n> of the untruncated displacement for
/// m < rows, n < cols (associated-Laguerre closed form).
inline Matrix displacement_elements(Complex alpha, Index rows, Index cols) {
  Matrix d = Matrix::Zero(rows, cols);
  const double x = std::norm(alpha);
  const double r = std::abs(alpha);
  const Complex phase_down = r > 0.0 ? alpha / r : Complex(1.0);
  const Complex phase_up = -std::conj(phase_down);
  std::vector<double> run;
  for (Index k = 0; k < rows; ++k) {  // m = n + k
    const Index count = std::min(cols, rows - k);
    if (count <= 0) continue;
    detail::normalized_laguerre_run(static_cast<int>(k), x, count, run);
    const Complex ph = std::pow(phase_down, static_cast<int>(k));
    for (Index n = 0; n < count; ++n) d(n + k, n) = ph * run[static_cast<std::size_t>(n)];
  }
  for (Index k = 1; k < cols; ++k) {  // n = m + k
    const Index count = std::min(rows, cols - k);
    if (count <= 0) continue;
    detail::normalized_laguerre_run(static_cast<int>(k), x, count, run);
    const Complex ph = std::pow(phase_up, static_cast<int>(k));
    for (Index m = 0; m < count; ++m) d(m, m + k) = ph * run[static_cast<std::size_t>(m)];
  }
  return d;
}

/// exp(alpha a^dag - alpha* a) of the truncated generator.
inline FockOperator displacement_expm(Complex alpha, Index dim) {
  const Matrix a = annihilation_matrix(dim);
  const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;  // anti-Hermitian
  const HermitianSpectrum spec(kI * gen);
  return FockOperator(spec.apply([](double l) { return std::exp(-kI * l); }));
}

/// D(alpha) on the truncated basis. Computed by the Laguerre closed form and
/// by the truncated matrix exponential; the two must agree on the central
/// block, otherwise the truncation is too small for this alpha.
inline FockOperator displacement(Complex alpha, Index dim, double tol = 1e-9) {
  if (dim < 2) throw Error(ErrorKind::invalid_dimension, "dim must be at least 2");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw Error(ErrorKind::invalid_region, "displacement amplitude must be finite");
  FockOperator closed(displacement_elements(alpha, dim, dim));
  const FockOperator expm = displacement_expm(alpha, dim);
  const double dev = max_abs_diff(closed, expm, central_block(dim));
  if (dev > tol)
    throw Error(ErrorKind::truncation_too_small,
                "displacement closed form and matrix exponential differ by " + std::to_string(dev));
  return closed;
}

/// S(zeta) = exp(zeta a^dag^2 - zeta* a^2); zeta = r/2 scales Q by e^r.
inline FockOperator squeeze(Complex zeta, Index dim) {
  if (dim < 2) throw Error(ErrorKind::invalid_dimension, "dim must be at least 2");
  const Matrix a = annihilation_matrix(dim);
  const Matrix ad = a.adjoint();
  const Matrix gen = zeta * ad * ad - std::conj(zeta) * a * a;
  const HermitianSpectrum spec(kI * gen);
  return FockOperator(spec.apply([](double l) { return std::exp(-kI * l); }));
}

/// e^{i theta N}; exactly unitary.
inline FockOperator rotation(double theta, Index dim) {
  Vector d(dim);
  for (Index n = 0; n < dim; ++n) d(n) = std::polar(1.0, theta * static_cast<double>(n));
  return FockOperator::diagonal(d);
}

/// Pure state vector or density matrix on the truncated basis.
class QuantumState {
 public:
  static QuantumState pure(Vector psi, double tol = 1e-12) {
    if (std::abs(psi.norm() - 1.0) > tol) throw Error(ErrorKind::invalid_state, "pure state must have unit norm");
    QuantumState s;
    s.data_ = std::move(psi);
    return s;
  }

  static QuantumState mixed(Matrix rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw Error(ErrorKind::invalid_state, "density matrix must be Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) throw Error(ErrorKind::invalid_state, "density matrix must have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
    if (solver.eigenvalues().minCoeff() < -1e-10) throw Error(ErrorKind::invalid_state, "density matrix must be positive");
    QuantumState s;
    s.data_ = std::move(rho);
    return s;
  }

  static QuantumState fock(Index n, Index dim) {
    if (n < 0 || n >= dim) throw Error(ErrorKind::invalid_state, "Fock level outside truncation");
    Vector v = Vector::Zero(dim);
    v(n) = 1.0;
    return pure(std::move(v));
  }

  static QuantumState coherent(Complex alpha, Index dim) {
    Vector v = displacement_elements(alpha, dim, 1).col(0);
    return renormalized(std::move(v));
  }

  /// S(r/2)|0>, position variance scaled by e^{2r}.
  static QuantumState squeezed_vacuum(double r, Index dim) {
    Vector v = squeeze(Complex(0.5 * r), dim).matrix().col(0);
    return renormalized(std::move(v));
  }

  Index dim() const {
    return std::visit([](const auto& d) -> Index { return d.rows(); }, data_);
  }
  bool is_pure() const { return std::holds_alternative<Vector>(data_); }
  const Vector& vector() const { return std::get<Vector>(data_); }

  Matrix density() const {
    if (is_pure()) {
      const Vector& v = vector();
      return v * v.adjoint();
    }
    return std::get<Matrix>(data_);
  }

  /// +1 for Pi|psi> = |psi>, -1 for Pi|psi> = -|psi>, nothing otherwise.
  std::optional<int> parity_sign(double tol = 1e-12) const {
    if (!is_pure()) return std::nullopt;
    const Vector& v = vector();
    double even = 0.0;
    double odd = 0.0;
    for (Index n = 0; n < v.size(); ++n) (n % 2 == 0 ? even : odd) += std::norm(v(n));
    if (odd <= tol) return 1;
    if (even <= tol) return -1;
    return std::nullopt;
  }

 private:
  static QuantumState renormalized(Vector v) {
    const double n2 = v.squaredNorm();
    if (1.0 - n2 > 1e-10) throw Error(ErrorKind::truncation_too_small, "state does not fit in the truncation");
    v /= std::sqrt(n2);
    return pure(std::move(v));
  }

  std::variant<Vector, Matrix> data_;
};

}  // namespace phase_ovm
