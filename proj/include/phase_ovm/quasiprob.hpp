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

// s-ordered quasi-probabilities F(alpha; s) and their masses over regions.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"
#include "phase_ovm/parallel.hpp"
#include "phase_ovm/region_types.hpp"

namespace phase_ovm {

/// Pi(s) = (1+s)^N / (1-s)^{N+1} Pi.
struct SParity {
  double s = 0.0;
  FockOperator op;
};

/// Diagonal of Pi(s) for n < count, by the ratio recurrence.
inline std::vector<double> parity_s_diagonal(double s, Index count) {
  if (!(s < 1.0 - 1e-9)) throw Error(ErrorKind::singular_parameter, "s must be below 1");
  std::vector<double> d(static_cast<std::size_t>(count));
  const double ratio = -(1.0 + s) / (1.0 - s);
  double e = 1.0 / (1.0 - s);
  for (auto& v : d) {
    v = e;
    e *= ratio;
  }
  return d;
}

inline SParity parity_s(double s, Index dim) {
  if (dim < 1) throw Error(ErrorKind::invalid_dimension, "dim must be positive");
  const auto d = parity_s_diagonal(s, dim);
  Vector v(dim);
  for (Index n = 0; n < dim; ++n) v(n) = d[static_cast<std::size_t>(n)];
  return {s, FockOperator::diagonal(v)};
}

enum class WignerConvention { bare, two_over_pi };

inline std::string_view to_string(WignerConvention c) {
  return c == WignerConvention::bare ? "bare" : "two_over_pi";
}

inline double convention_factor(WignerConvention c) { return c == WignerConvention::bare ? 1.0 : 2.0 / kPi; }

namespace detail {

/// Populations <k|D(alpha)^dag rho D(alpha)|k> of the untruncated displaced
/// state, k < work, with work grown until the s-weighted tail is negligible.
inline std::vector<double> displaced_populations(const QuantumState& state, Complex alpha, double s) {
  const Index dim = state.dim();
  const double ratio = std::abs((1.0 + s) / (1.0 - s));
  for (Index work = dim + 16; work <= 8192; work *= 2) {
    const Matrix e = displacement_elements(alpha, dim, work);  // <m|D|k>, m < dim
    std::vector<double> pop(static_cast<std::size_t>(work));
    if (state.is_pure()) {
      const Vector v = e.adjoint() * state.vector();
      for (Index k = 0; k < work; ++k) pop[static_cast<std::size_t>(k)] = std::norm(v(k));
    } else {
      const Matrix re = state.density() * e;
      for (Index k = 0; k < work; ++k) pop[static_cast<std::size_t>(k)] = e.col(k).dot(re.col(k)).real();
    }
    // Beyond the displaced peak the populations decay faster than any
    // geometric weight, so the last weighted terms bound the tail; for
    // bounded weights the missing population bounds it directly.
    const auto w = parity_s_diagonal(s, work);
    double last = 0.0;
    for (Index k = work - 16; k < work; ++k)
      last = std::max(last, std::abs(w[static_cast<std::size_t>(k)]) * pop[static_cast<std::size_t>(k)]);
    double kept = 0.0;
    for (double p : pop) kept += p;
    const double tail = ratio <= 1.0 ? std::max(0.0, 1.0 - kept) / (1.0 - s) : 0.0;
    if (last <= 1e-17 && tail <= 1e-13) return pop;
  }
  throw Error(ErrorKind::truncation_too_small, "displaced state does not converge within the working dimension");
}

}  // namespace detail

/// Tr(rho D(alpha) Pi(s) D(alpha)^dag) by the population series.
inline double quasiprob_series(const QuantumState& state, Complex alpha, double s) {
  const auto pop = detail::displaced_populations(state, alpha, s);
  const auto w = parity_s_diagonal(s, static_cast<Index>(pop.size()));
  double acc = 0.0;
  for (std::size_t k = 0; k < pop.size(); ++k) acc += w[k] * pop[k];
  return acc;
}

/// Tr(rho F) with F the compressed kernel D(alpha) Pi(s) D(alpha)^dag; at
/// s = 0 the kernel is D(2 alpha) Pi directly.
inline Complex quasiprob_kernel(const QuantumState& state, Complex alpha, double s) {
  const Index dim = state.dim();
  Matrix f;
  if (s == 0.0) {
    f = displacement_elements(2.0 * alpha, dim, dim) * parity_matrix(dim);
  } else {
    const Index work = static_cast<Index>(detail::displaced_populations(state, alpha, s).size());
    const Matrix e = displacement_elements(alpha, dim, work);
    const auto w = parity_s_diagonal(s, work);
    Vector wd(work);
    for (Index k = 0; k < work; ++k) wd(k) = w[static_cast<std::size_t>(k)];
    f = e * wd.asDiagonal() * e.adjoint();
  }
  return (state.density() * f).trace();
}

struct QuasiValue {
  double value = 0.0;   // (2/pi) Tr(rho D Pi(s) D^dag)
  double kernel = 0.0;  // (2/pi) real part of the kernel path
  double series = 0.0;  // (2/pi) series path
  double imaginary = 0.0;
};

/// F(alpha; s) = (2/pi) Tr(rho D(alpha) Pi(s) D(alpha)^dag), computed by the
/// kernel and series paths and cross-checked.
inline QuasiValue quasiprob_value(const QuantumState& state, Complex alpha, double s, double tol = 1e-8) {
  const double scale = 2.0 / kPi;
  const Complex k = scale * quasiprob_kernel(state, alpha, s);
  const double series = scale * quasiprob_series(state, alpha, s);
  if (std::abs(k.imag()) > 1e-10)
    throw Error(ErrorKind::truncation_too_small, "quasi-probability has imaginary residue " + std::to_string(k.imag()));
  if (std::abs(k.real() - series) > tol)
    throw Error(ErrorKind::truncation_too_small,
                "kernel and series paths differ by " + std::to_string(std::abs(k.real() - series)));
  return {series, k.real(), series, k.imag()};
}

struct QuasiField {
  PhaseGrid grid;
  std::vector<double> values;  // flat(i, j) = j * nq + i
  double s = 0.0;
  WignerConvention convention = WignerConvention::bare;

  double at(Index i, Index j) const { return values[static_cast<std::size_t>(grid.flat(i, j))]; }
  double min() const { return *std::min_element(values.begin(), values.end()); }
  double max() const { return *std::max_element(values.begin(), values.end()); }
};

/// F(alpha; s) over every cell centre of the grid. Bare: Tr(rho D Pi(s) D^dag);
/// two_over_pi: 2/pi times that.
inline QuasiField wigner_field(const QuantumState& state, const PhaseGrid& grid,
                               WignerConvention convention = WignerConvention::bare, double s = 0.0) {
  grid.validate();
  parity_s_diagonal(s, 1);
  QuasiField field{grid, std::vector<double>(static_cast<std::size_t>(grid.size())), s, convention};
  const double factor = convention_factor(convention);
  parallel_chunks(field.values.size(), [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t c = begin; c < end; ++c) {
      const Index i = static_cast<Index>(c) % grid.nq;
      const Index j = static_cast<Index>(c) / grid.nq;
      field.values[c] = factor * quasiprob_series(state, grid.alpha(i, j), s);
    }
  });
  return field;
}

/// sum over cells of X of F(alpha; s) d^2alpha (d^2alpha = dq dp / 2).
inline double quasiprob_mass(const QuantumState& state, const Region2D& region, const PhaseGrid& grid = {}, double s = 0.0,
                             WignerConvention convention = WignerConvention::bare) {
  grid.validate();
  if (region.is<Circle>()) throw Error(ErrorKind::grid_too_coarse, "a circle has zero area");
  if (region.smallest_feature(grid) < 10.0 * std::max(grid.dq(), grid.dp()))
    throw Error(ErrorKind::grid_too_coarse, "grid resolves the region with fewer than 10 cells across");
  std::vector<Complex> cells;
  for (Index j = 0; j < grid.np; ++j)
    for (Index i = 0; i < grid.nq; ++i)
      if (region.contains(grid.q(i), grid.p(j))) cells.push_back(grid.alpha(i, j));
  std::vector<double> partial(worker_count(), 0.0);
  parallel_chunks(cells.size(), [&](std::size_t begin, std::size_t end, unsigned w) {
    for (std::size_t c = begin; c < end; ++c) partial[w] += quasiprob_series(state, cells[c], s);
  });
  double acc = 0.0;
  for (double v : partial) acc += v;
  return convention_factor(convention) * grid.measure() * acc;
}

/// q,p,value rows, q fastest.
inline void write_csv(const QuasiField& field, std::ostream& os) {
  os.precision(17);
  os << "q,p,value\n";
  for (Index j = 0; j < field.grid.np; ++j)
    for (Index i = 0; i < field.grid.nq; ++i) os << field.grid.q(i) << ',' << field.grid.p(j) << ',' << field.at(i, j) << '\n';
}

inline constexpr char kRasterMagic[8] = {'P', 'O', 'R', 'A', 'S', 'T', 'E', 'R'};
inline constexpr std::uint32_t kRasterVersion = 1;

namespace detail {

template <class T>
void put_le(std::ostream& os, T value) {
  static_assert(std::endian::native == std::endian::little, "raster I/O assumes a little-endian host");
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  T value{};
  if (!is.read(reinterpret_cast<char*>(&value), sizeof(T))) throw Error(ErrorKind::invalid_region, "truncated raster");
  return value;
}

}  // namespace detail

/// Binary raster: magic, u32 version, u32 nq, u32 np, f64 qmin qmax pmin pmax s,
/// u32 convention, then nq*np f64 values row-major (q fastest), little-endian.
inline void write_raster(const QuasiField& field, std::ostream& os) {
  os.write(kRasterMagic, sizeof(kRasterMagic));
  detail::put_le<std::uint32_t>(os, kRasterVersion);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.nq));
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.np));
  for (double v : {field.grid.q_min, field.grid.q_max, field.grid.p_min, field.grid.p_max, field.s}) detail::put_le(os, v);
  detail::put_le<std::uint32_t>(os, field.convention == WignerConvention::bare ? 0u : 1u);
  for (double v : field.values) detail::put_le(os, v);
}

inline QuasiField read_raster(std::istream& is) {
  char magic[sizeof(kRasterMagic)];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kRasterMagic, sizeof(magic)) != 0)
    throw Error(ErrorKind::invalid_region, "not a raster file");
  if (detail::get_le<std::uint32_t>(is) != kRasterVersion) throw Error(ErrorKind::invalid_region, "unsupported raster version");
  QuasiField f;
  f.grid.nq = detail::get_le<std::uint32_t>(is);
  f.grid.np = detail::get_le<std::uint32_t>(is);
  f.grid.q_min = detail::get_le<double>(is);
  f.grid.q_max = detail::get_le<double>(is);
  f.grid.p_min = detail::get_le<double>(is);
  f.grid.p_max = detail::get_le<double>(is);
  f.s = detail::get_le<double>(is);
  f.convention = detail::get_le<std::uint32_t>(is) == 0 ? WignerConvention::bare : WignerConvention::two_over_pi;
  f.values.resize(static_cast<std::size_t>(f.grid.size()));
  for (auto& v : f.values) v = detail::get_le<double>(is);
  return f;
}

}  // namespace phase_ovm
