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

// Region operators on one phase-space axis: K_q = chi~(P) Pi, its spectral
// data, eigen-structure, Kraus form and the rotation/shift/squeeze algebra.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"
#include "phase_ovm/kraus.hpp"
#include "phase_ovm/quadrature.hpp"
#include "phase_ovm/region_types.hpp"

namespace phase_ovm {

/// Cached spectra of the truncated P and Q, one per dimension and thread.
inline const HermitianSpectrum& momentum_spectrum(Index dim) {
  thread_local std::map<Index, HermitianSpectrum> cache;
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, HermitianSpectrum(momentum_matrix(dim))).first;
  return it->second;
}

inline const HermitianSpectrum& position_spectrum(Index dim) {
  thread_local std::map<Index, HermitianSpectrum> cache;
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, HermitianSpectrum(position_matrix(dim))).first;
  return it->second;
}

/// f(P) on the truncated basis.
template <class F>
Matrix function_of_momentum(Index dim, F&& f) {
  return momentum_spectrum(dim).apply(std::forward<F>(f));
}

template <class F>
Matrix function_of_position(Index dim, F&& f) {
  return position_spectrum(dim).apply(std::forward<F>(f));
}

struct SpectralAtom {
  double p = 0.0;
  Complex weight;
  double r = 0.0;    // |a_m + i b_m| (a0 for the p = 0 atom)
  double phi = 0.0;  // arg(a_m + i b_m)
};

/// chi~ as either a list of delta atoms (periodic cfun) or a continuous
/// function.
struct SpectralMeasure1D {
  std::vector<SpectralAtom> atoms;  // sorted by p
  bool continuous = false;
  std::function<Complex(double)> density;
};

inline SpectralMeasure1D cfun_fourier_transform(const CharacteristicFunction1D& region) {
  SpectralMeasure1D out;
  if (!region.is<FourierPeriodic>()) {
    out.continuous = true;
    out.density = [region](double p) { return region.transform(p); };
    return out;
  }
  const auto& f = region.as<FourierPeriodic>();
  out.atoms.push_back({0.0, Complex(kPi * f.a0), std::abs(f.a0), f.a0 < 0 ? kPi : 0.0});
  for (std::size_t m = 1; m <= f.harmonics(); ++m) {
    const Complex c(f.cos_coeff(m), f.sin_coeff(m));
    if (c == Complex(0.0)) continue;
    const double k = f.harmonic(m);
    // e^{iqp} kernel: cos -> pi a (d(w-k) + d(w+k)), sin -> i pi b (d(w-k) - d(w+k))
    out.atoms.push_back({k, kPi * c, std::abs(c), std::arg(c)});
    out.atoms.push_back({-k, kPi * std::conj(c), std::abs(c), -std::arg(c)});
  }
  std::sort(out.atoms.begin(), out.atoms.end(), [](const SpectralAtom& x, const SpectralAtom& y) { return x.p < y.p; });
  return out;
}

namespace detail {

inline void require_dim(Index dim, Index minimum) {
  if (dim < minimum) throw Error(ErrorKind::invalid_dimension, "dim must be at least " + std::to_string(minimum));
}

inline Matrix atoms_operator(const SpectralMeasure1D& measure, Index dim) {
  Matrix k = Matrix::Zero(dim, dim);
  for (const auto& atom : measure.atoms) {
    if (!in_momentum_band(atom.p, dim))
      throw Error(ErrorKind::truncation_too_small, "harmonic p=" + std::to_string(atom.p) + " beyond the momentum band");
    const Vector v = momentum_ket(atom.p, dim);
    k += atom.weight * v * v.adjoint();
  }
  return k * parity_matrix(dim);
}

}  // namespace detail

/// K_q = chi~(P) Pi. Periodic cfuns are assembled from momentum-ket atoms;
/// every other region applies chi~ to the eigenvalues of the truncated P.
inline RegionOperator build_region_operator_1d(const CharacteristicFunction1D& region, Index dim) {
  detail::require_dim(dim, 8);
  const SpectralMeasure1D measure = cfun_fourier_transform(region);
  Matrix k;
  if (measure.continuous) {
    k = function_of_momentum(dim, measure.density) * parity_matrix(dim);
  } else {
    k = detail::atoms_operator(measure, dim);
  }
  return RegionOperator{FockOperator(std::move(k)), region, ConstructionPath::analytic};
}

/// K_q = int chi(q) e^{iqP} dq Pi by Gauss-Legendre quadrature. Periodic
/// cfuns are integrated over [-windows L, windows L].
inline RegionOperator build_region_operator_smeared(const CharacteristicFunction1D& region, Index dim,
                                                    int quadrature_points, int windows = 1) {
  detail::require_dim(dim, 8);
  if (quadrature_points < 8) throw Error(ErrorKind::invalid_quadrature, "need at least 8 quadrature points");
  if (windows < 1) throw Error(ErrorKind::invalid_quadrature, "need at least one period window");
  const HermitianSpectrum& spec = momentum_spectrum(dim);
  const RealVector& lambda = spec.values();

  Vector smeared = Vector::Zero(lambda.size());
  auto integrate = [&](const QuadratureRule& rule, auto&& chi) {
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double w = rule.weights[k] * chi(rule.nodes[k]);
      if (w == 0.0) continue;
      for (Index j = 0; j < lambda.size(); ++j) smeared(j) += w * std::exp(kI * rule.nodes[k] * lambda(j));
    }
  };
  auto one = [](double) { return 1.0; };

  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Interval>) {
          integrate(gauss_legendre(quadrature_points, s.lo, s.hi), one);
        } else if constexpr (std::is_same_v<T, UnionOfIntervals>) {
          for (const auto& part : s.parts) integrate(gauss_legendre(quadrature_points, part.lo, part.hi), one);
        } else if constexpr (std::is_same_v<T, FourierPeriodic>) {
          const auto rule = composite_gauss_legendre(quadrature_points, 2 * windows, -windows * s.period, windows * s.period);
          integrate(rule, [&region](double q) { return region.value(q); });
        } else {
          for (int m = 1; m <= s.n; ++m)
            for (Index j = 0; j < lambda.size(); ++j) smeared(j) += std::exp(2.0 * kI * static_cast<double>(m) * lambda(j));
        }
      },
      region.shape());

  Matrix k = spec.vectors() * smeared.asDiagonal() * spec.vectors().adjoint() * parity_matrix(dim);
  return RegionOperator{FockOperator(std::move(k)), region, ConstructionPath::smeared};
}

/// K|p> = chi~(-p)|-p>, so K acts on span{v_p, v_-p} as [[0, chi~*], [chi~, 0]].
/// Writing chi~(p) = r e^{i theta} with r signed and |theta| <= pi/2, the pair is
/// lambda = +-r on v_p +- e^{-i theta} v_-p. For real chi~ (symmetric regions)
/// this is lambda = +-chi~(p) on v_p +- v_-p.
struct EigenPair {
  double p = 0.0;
  Complex transform;     // chi~(p), or the atom weight
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  Complex mixing{1.0};   // e^{-i theta}
};

namespace detail {

inline EigenPair eigen_pair(double p, Complex chi) {
  double r = std::abs(chi);
  Complex mixing = 1.0;
  if (r > 0.0) {
    Complex unit = chi / r;
    if (unit.real() < 0.0 || (unit.real() == 0.0 && unit.imag() < 0.0)) {
      unit = -unit;
      r = -r;
    }
    mixing = std::conj(unit);
  }
  return {p, chi, r, -r, mixing};
}

}  // namespace detail

/// Eigenpairs at the requested momenta, from the transform (no diagonalisation).
inline std::vector<EigenPair> eigensystem_region_operator(const CharacteristicFunction1D& region,
                                                          std::span<const double> momenta) {
  const SpectralMeasure1D measure = cfun_fourier_transform(region);
  std::vector<EigenPair> out;
  for (double p : momenta) {
    Complex value = 0.0;
    if (measure.continuous) {
      value = measure.density(p);
    } else {
      for (const auto& atom : measure.atoms)
        if (std::abs(atom.p - p) < 1e-12) value += atom.weight;
    }
    out.push_back(detail::eigen_pair(p, value));
  }
  return out;
}

/// Eigenpairs at the atoms of a periodic cfun (weights of the delta comb).
inline std::vector<EigenPair> eigensystem_region_operator(const CharacteristicFunction1D& region) {
  const SpectralMeasure1D measure = cfun_fourier_transform(region);
  if (measure.continuous) throw Error(ErrorKind::invalid_region, "continuous transform: pass the momenta to evaluate");
  std::vector<EigenPair> out;
  for (const auto& atom : measure.atoms) out.push_back(detail::eigen_pair(atom.p, atom.weight));
  return out;
}

struct EigenResidual {
  double plus = 0.0;   // |K u+ - lambda+ u+| / |u+|, u+ = v_p + mixing v_-p
  double minus = 0.0;  // same for u- = v_p - mixing v_-p
};

/// Eigen-residuals of the momentum-ket pair on the central block.
inline EigenResidual residual_check(const CharacteristicFunction1D& region, double p, Index dim) {
  if (!region.has_bounded_support()) throw Error(ErrorKind::invalid_region, "residual check needs a continuous transform");
  const RegionOperator k = build_region_operator_1d(region, dim);
  const EigenPair pair = detail::eigen_pair(p, region.transform(p));
  const Vector vp = momentum_ket(p, dim);
  const Vector vm = pair.mixing * momentum_ket(-p, dim);
  const Index h = central_block(dim);
  auto rel = [&](const Vector& u, double lambda) {
    const Vector r = k.op.matrix() * u - lambda * u;
    return r.head(h).norm() / u.head(h).norm();
  };
  return {rel(vp + vm, pair.lambda_plus), rel(vp - vm, pair.lambda_minus)};
}

struct OccupationResult {
  Complex operator_path;               // Tr(K_q rho)
  std::optional<double> formula_path;  // int chi~ |Psi(p)|^2 dp, even pure states
  std::string refusal;                 // why the formula path was skipped

  double value() const { return operator_path.real(); }
};

/// Momentum wavefunction Psi(p) = <p|psi> with the truncated momentum ket.
inline Complex momentum_wavefunction(const Vector& psi, double p) {
  return momentum_ket(p, psi.size()).dot(psi);
}

inline OccupationResult occupation_probability(const QuantumState& state, const CharacteristicFunction1D& region,
                                               double tol = 1e-6) {
  const Index dim = state.dim();
  const RegionOperator k = build_region_operator_1d(region, dim);
  OccupationResult res;
  res.operator_path = (k.op.matrix() * state.density()).trace();

  const auto parity = state.parity_sign();
  if (!parity) {
    res.refusal = "formula path needs a pure state of definite parity";
    return res;
  }
  if (*parity < 0) {
    res.refusal = std::string(to_string(ErrorKind::odd_parity_state));
    return res;
  }
  const Vector& psi = state.vector();
  const SpectralMeasure1D measure = cfun_fourier_transform(region);
  double formula = 0.0;
  if (!measure.continuous) {
    const auto& f = region.as<FourierPeriodic>();
    if (region.is_symmetric()) {
      // a0 pi |Psi(0)|^2 + 2 pi sum a_m |Psi(m pi / L)|^2
      formula = f.a0 * kPi * std::norm(momentum_wavefunction(psi, 0.0));
      for (std::size_t m = 1; m <= f.harmonics(); ++m)
        formula += 2.0 * kPi * f.cos_coeff(m) * std::norm(momentum_wavefunction(psi, f.harmonic(m)));
    } else {
      Complex acc = 0.0;
      for (const auto& atom : measure.atoms) acc += atom.weight * std::norm(momentum_wavefunction(psi, atom.p));
      formula = acc.real();
    }
  } else {
    const double reach = std::sqrt(2.0 * static_cast<double>(dim)) + 8.0;
    const auto rule = composite_gauss_legendre(16, 256, -reach, reach);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * measure.density(rule.nodes[i]) * std::norm(momentum_wavefunction(psi, rule.nodes[i]));
    formula = acc.real();
  }
  res.formula_path = formula;
  if (std::abs(formula - res.operator_path.real()) > tol)
    throw Error(ErrorKind::truncation_too_small,
                "occupation formula and operator paths differ by " + std::to_string(std::abs(formula - res.operator_path.real())));
  return res;
}

namespace detail {

inline void require_kraus_representable(const CharacteristicFunction1D& region) {
  if (!region.is<FourierPeriodic>()) throw Error(ErrorKind::not_representable, "Kraus form needs a periodic cfun");
  const auto& f = region.as<FourierPeriodic>();
  if (f.a0 < 0.0) throw Error(ErrorKind::not_representable, "a0 must be nonnegative");
  for (double v : f.a)
    if (v < 0.0) throw Error(ErrorKind::not_representable, "a_m must be nonnegative");
  for (double v : f.b)
    if (v != 0.0) throw Error(ErrorKind::not_representable, "b_m must vanish");
}

inline KrausMap kraus_generators(const FourierPeriodic& f, Index dim, double harmonic_scale) {
  KrausMap map;
  if (f.a0 > 0.0) map.generators.push_back(std::sqrt(f.a0 * kPi) * FockOperator::identity(dim));
  for (std::size_t m = 1; m <= f.harmonics(); ++m) {
    const double am = f.cos_coeff(m);
    if (am == 0.0) continue;
    const double k = f.harmonic(m);
    const double w = std::sqrt(am * harmonic_scale);
    map.generators.emplace_back(w * function_of_position(dim, [k](double x) { return std::exp(-kI * k * x); }));
    map.generators.emplace_back(w * function_of_position(dim, [k](double x) { return std::exp(kI * k * x); }));
  }
  if (map.generators.empty()) throw Error(ErrorKind::not_representable, "region has no nonzero coefficients");
  return map;
}

}  // namespace detail

/// Generators {sqrt(a0 pi) 1, sqrt(a_m) e^{-i m pi Q / L}, sqrt(a_m) e^{i m pi Q / L}}
/// for a periodic cfun with a_m >= 0, b_m = 0.
inline KrausMap region_kraus_map(const CharacteristicFunction1D& region, Index dim) {
  detail::require_kraus_representable(region);
  KrausMap map = detail::kraus_generators(region.as<FourierPeriodic>(), dim, 1.0);
  map.label = "eps_q";
  return map;
}

struct KrausCandidate {
  std::string name;
  std::string description;
  double deviation = 0.0;
  bool matches = false;
};

struct KrausReconciliationReport {
  std::vector<KrausCandidate> candidates;
  double tolerance = 1e-8;
  Index dim = 0;
  Index block = 0;
  double analytic_deviation = 0.0;  // chi~(P)Pi build vs the momentum-ket K_q
  std::optional<std::string> matched;
};

/// The momentum-ket operator
///   a0 pi |0><0| + pi sum a_m (|-k><k| + |k><-k|),  k = m pi / L.
inline Matrix kraus_target_operator(const FourierPeriodic& f, Index dim) {
  const Vector v0 = momentum_ket(0.0, dim);
  Matrix k = f.a0 * kPi * v0 * v0.adjoint();
  for (std::size_t m = 1; m <= f.harmonics(); ++m) {
    const double am = f.cos_coeff(m);
    if (am == 0.0) continue;
    const Vector vp = momentum_ket(f.harmonic(m), dim);
    const Vector vm = momentum_ket(-f.harmonic(m), dim);
    k += kPi * am * (vm * vp.adjoint() + vp * vm.adjoint());
  }
  return k;
}

/// Compares eps_q(|p=0><p=0|) against the momentum-ket K_q for two readings:
///   literal:       generators sqrt(a_m),      K_q = eps_q(|0><0|)
///   pi-parity:     generators sqrt(a_m pi),   K_q = Pi eps_q(|0><0|)
/// and records which one holds on the central block.
inline KrausReconciliationReport verify_kraus_reconciliation(const CharacteristicFunction1D& region, Index dim,
                                                             double tol = 1e-8) {
  detail::require_kraus_representable(region);
  const auto& f = region.as<FourierPeriodic>();
  KrausReconciliationReport rep;
  rep.tolerance = tol;
  rep.dim = dim;
  rep.block = central_block(dim);

  const Matrix target = kraus_target_operator(f, dim);
  const Vector v0 = momentum_ket(0.0, dim);
  const Matrix seed = v0 * v0.adjoint();

  const Matrix literal = apply_map(detail::kraus_generators(f, dim, 1.0), seed);
  const Matrix pi_parity = parity_matrix(dim) * apply_map(detail::kraus_generators(f, dim, kPi), seed);

  rep.candidates.push_back({"literal", "generators sqrt(a_m) e^{-+i m pi Q/L}; K_q = eps_q(|p=0><p=0|)",
                            max_abs_diff(literal, target, rep.block), false});
  rep.candidates.push_back({"pi-parity", "generators sqrt(a_m pi) e^{-+i m pi Q/L}; K_q = Pi eps_q(|p=0><p=0|)",
                            max_abs_diff(pi_parity, target, rep.block), false});
  for (auto& c : rep.candidates) {
    c.matches = c.deviation <= tol;
    if (c.matches && !rep.matched) rep.matched = c.name;
  }
  rep.analytic_deviation = max_abs_diff(build_region_operator_1d(region, dim).op.matrix(), target, rep.block);
  return rep;
}

/// K^theta = e^{i theta N} K e^{-i theta N}
inline RegionOperator rotate_operator(const RegionOperator& k, double theta) {
  const FockOperator u = rotation(theta, k.dim());
  return RegionOperator{u * k.op * u.adjoint(), k.region, k.path};
}

/// chi~(cos(theta) P - sin(theta) Q) Pi, the rotated operator built directly.
inline FockOperator build_rotated_direct(const CharacteristicFunction1D& region, double theta, Index dim) {
  if (!region.has_bounded_support()) throw Error(ErrorKind::invalid_region, "direct rotated build needs a continuous transform");
  const Matrix h = std::cos(theta) * momentum_matrix(dim) - std::sin(theta) * position_matrix(dim);
  const HermitianSpectrum spec(h);
  return FockOperator(spec.apply([&region](double x) { return region.transform(x); }) * parity_matrix(dim));
}

/// chi~(Q) Pi, the p-axis operator. Equals
/// rotate_operator(K_q, pi/2) = chi~(-Q) Pi for symmetric regions.
inline FockOperator build_region_operator_p_axis(const CharacteristicFunction1D& region, Index dim) {
  if (!region.has_bounded_support()) throw Error(ErrorKind::invalid_region, "p-axis build needs a continuous transform");
  return FockOperator(function_of_position(dim, [&region](double x) { return region.transform(x); }) * parity_matrix(dim));
}

enum class ShiftMode { left, right, conjugate };

/// left: e^{icP} K, right: K e^{icP}, conjugate: e^{icP/2} K e^{-icP/2}.
inline RegionOperator shift_operator(const RegionOperator& k, double c, ShiftMode mode) {
  const Index dim = k.dim();
  auto shift = [dim](double amount) {
    return FockOperator(function_of_momentum(dim, [amount](double p) { return std::exp(kI * amount * p); }));
  };
  FockOperator out;
  switch (mode) {
    case ShiftMode::left: out = shift(c) * k.op; break;
    case ShiftMode::right: out = k.op * shift(c); break;
    case ShiftMode::conjugate: out = shift(0.5 * c) * k.op * shift(-0.5 * c); break;
  }
  return RegionOperator{std::move(out), k.region, k.path};
}

struct ShiftCheck {
  double literal_deviation = 0.0;     // vs chi~(P + c) Pi (left, conjugate) / chi~(P - c) Pi (right)
  double translated_deviation = 0.0;  // vs K_q of the region moved by +c (left, conjugate) / -c (right)
};

/// Compares a shifted K_q with the two candidate closed forms on the central block.
inline ShiftCheck shift_identity_check(const CharacteristicFunction1D& region, double c, ShiftMode mode, Index dim) {
  const RegionOperator k = build_region_operator_1d(region, dim);
  const RegionOperator shifted = shift_operator(k, c, mode);
  const double sign = mode == ShiftMode::right ? -1.0 : 1.0;
  const Matrix literal =
      function_of_momentum(dim, [&region, c, sign](double p) { return region.transform(p + sign * c); }) * parity_matrix(dim);
  const RegionOperator moved = build_region_operator_1d(region.translated(sign * c), dim);
  const Index h = central_block(dim);
  return {max_abs_diff(shifted.op.matrix(), literal, h), max_abs_diff(shifted.op, moved.op, h)};
}

/// S(r/2)^dag K S(r/2); |r| <= 1.
inline RegionOperator squeeze_operator(const RegionOperator& k, double r) {
  if (std::abs(r) > 1.0) throw Error(ErrorKind::truncation_risk, "squeeze parameter |r| must not exceed 1");
  const FockOperator s = squeeze(Complex(0.5 * r), k.dim());
  return RegionOperator{s.adjoint() * k.op * s, k.region, k.path};
}

/// max deviation of the squeezed K_q from chi~(P e^{-r}) Pi on the central quarter.
inline double squeeze_identity_check(const CharacteristicFunction1D& region, double r, Index dim) {
  const RegionOperator k = build_region_operator_1d(region, dim);
  const RegionOperator sq = squeeze_operator(k, r);
  const double scale = std::exp(-r);
  const Matrix direct =
      function_of_momentum(dim, [&region, scale](double p) { return region.transform(p * scale); }) * parity_matrix(dim);
  return max_abs_diff(sq.op.matrix(), direct, central_quarter(dim));
}

/// sum_{m=1}^n e^{2imP} Pi (finite sum; the geometric closed form is singular
/// where sin P = 0 and is only checked as a scalar identity).
inline RegionOperator integer_comb_operator(int n, Index dim) {
  const auto region = CharacteristicFunction1D::integer_comb(n);
  detail::require_dim(dim, 2);
  Matrix k = function_of_momentum(dim, [n](double p) {
               Complex s = 0.0;
               for (int m = 1; m <= n; ++m) s += std::exp(2.0 * kI * static_cast<double>(m) * p);
               return s;
             }) *
             parity_matrix(dim);
  return RegionOperator{FockOperator(std::move(k)), region, ConstructionPath::analytic};
}

/// max |sum_{m=1}^n e^{2imp} - (e^{i(2n+1)p} - e^{ip}) / (2i sin p)| over the
/// eigenvalues p of the truncated P with |sin p| > 1e-6.
inline double comb_closed_form_deviation(int n, Index dim) {
  const RealVector& lambda = momentum_spectrum(dim).values();
  double dev = 0.0;
  for (Index j = 0; j < lambda.size(); ++j) {
    const double p = lambda(j);
    const double s = std::sin(p);
    if (std::abs(s) <= 1e-6) continue;
    Complex sum = 0.0;
    for (int m = 1; m <= n; ++m) sum += std::exp(2.0 * kI * static_cast<double>(m) * p);
    const Complex closed = (std::exp(kI * (2.0 * n + 1.0) * p) - std::exp(kI * p)) / (2.0 * kI * s);
    dev = std::max(dev, std::abs(sum - closed));
  }
  return dev;
}

}  // namespace phase_ovm
