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

// Dual-path verification reports. The oracle side of every comparison is
// built from fock-core primitives only (exact displacement compressions,
// Gauss-Legendre / midpoint sums); the analytic constructors appear only as
// the quantity under test.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"
#include "phase_ovm/quasiprob.hpp"
#include "phase_ovm/region_types.hpp"
#include "phase_ovm/regions1d.hpp"
#include "phase_ovm/regions2d.hpp"

namespace phase_ovm {

struct OracleReport {
  std::string label;
  std::vector<double> analytic;  // sampled values (scalar, or central-block diagonal)
  std::vector<double> oracle;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  std::map<std::string, double> params;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> diagnostics;
  std::string note;
};

/// Deviations below this are round-off; convergence checks treat them as
/// converged.
inline constexpr double kRoundoffFloor = 1e-12;

namespace detail {

inline std::vector<double> diagonal_sample(const Matrix& m, Index block) {
  std::vector<double> out(static_cast<std::size_t>(block));
  for (Index n = 0; n < block; ++n) out[static_cast<std::size_t>(n)] = m(n, n).real();
  return out;
}

inline void finish(OracleReport& rep) {
  double scale = 0.0;
  for (double v : rep.oracle) scale = std::max(scale, std::abs(v));
  rep.rel_dev = scale > 0.0 ? rep.abs_dev / scale : rep.abs_dev;
  rep.pass = rep.abs_dev <= rep.tolerance;
}

inline OracleReport matrix_report(std::string label, const Matrix& analytic, const Matrix& oracle, Index block,
                                  double tol, bool frobenius = false) {
  OracleReport rep;
  rep.label = std::move(label);
  rep.analytic = diagonal_sample(analytic, block);
  rep.oracle = diagonal_sample(oracle, block);
  rep.diagnostics["max_abs"] = max_abs_diff(analytic, oracle, block);
  rep.diagnostics["frobenius"] = frobenius_diff(analytic, oracle, block);
  rep.abs_dev = frobenius ? rep.diagnostics["frobenius"] : rep.diagnostics["max_abs"];
  rep.params["block"] = static_cast<double>(block);
  rep.params["dim"] = static_cast<double>(analytic.rows());
  rep.tolerance = tol;
  finish(rep);
  return rep;
}

inline OracleReport scalar_report(std::string label, double analytic, double oracle, double tol) {
  OracleReport rep;
  rep.label = std::move(label);
  rep.analytic = {analytic};
  rep.oracle = {oracle};
  rep.abs_dev = std::abs(analytic - oracle);
  rep.tolerance = tol;
  finish(rep);
  return rep;
}

}  // namespace detail

struct VerifyOptions {
  int quadrature_points = 64;
  PhaseGrid grid{};
  std::optional<QuantumState> state;  // 2D mass checks; vacuum when unset
};

/// Exact mass int_X e^{-(q^2+p^2)} dq dp / 2 of the vacuum Wigner function
/// for the regions where it has a closed form.
inline std::optional<double> exact_vacuum_mass(const Region2D& region) {
  if (region.is<EmptyRegion>()) return 0.0;
  if (region.is<Rectangle>()) {
    const auto& r = region.as<Rectangle>();
    const double s = std::sqrt(kPi) / 2.0;
    return 0.5 * s * (std::erf(r.q1) - std::erf(r.q0)) * s * (std::erf(r.p1) - std::erf(r.p0));
  }
  if (region.is<Disc>()) {
    const double rad = 0.5 * region.as<Disc>().width;
    return 0.5 * kPi * (1.0 - std::exp(-rad * rad));
  }
  return std::nullopt;
}

namespace detail {

inline OracleReport verify_1d(const CharacteristicFunction1D& region, Index dim, double tol, const VerifyOptions& opt) {
  const Index block = central_block(dim);
  if (region.is<FourierPeriodic>()) {
    // a periodic cfun has no smeared limit; compare the operator trace with
    // the atom series on the vacuum
    const OccupationResult occ = occupation_probability(QuantumState::fock(0, dim), region, 1.0);
    auto rep = scalar_report("occupation " + region.describe() + " vacuum: Tr(K_q rho) vs atom series",
                             occ.operator_path.real(), occ.formula_path.value_or(0.0), tol);
    rep.params["dim"] = static_cast<double>(dim);
    return rep;
  }
  if (region.is<IntegerComb>()) {
    const int n = region.as<IntegerComb>().n;
    OracleReport rep;
    rep.label = "integer comb n=" + std::to_string(n) + ": finite sum vs geometric closed form on spec(P)";
    rep.abs_dev = comb_closed_form_deviation(n, dim);
    rep.params["dim"] = static_cast<double>(dim);
    rep.params["n"] = n;
    rep.tolerance = tol;
    finish(rep);
    return rep;
  }
  const RegionOperator analytic = build_region_operator_1d(region, dim);
  const RegionOperator smeared = build_region_operator_smeared(region, dim, opt.quadrature_points);
  auto rep = matrix_report(region.describe() + ": chi~(P) Pi vs Gauss-Legendre smearing", analytic.op.matrix(),
                           smeared.op.matrix(), block, tol, true);
  rep.params["quadrature_points"] = opt.quadrature_points;
  return rep;
}

inline OracleReport verify_2d(const Region2D& region, Index dim, double tol, const VerifyOptions& opt) {
  const Index block = central_block(dim);
  if (region.is<Circle>()) {
    const double a = region.as<Circle>().radius;
    const Matrix formula = circle_ovm(a, dim).op.matrix();
    auto rep = matrix_report(region.describe() + ": Laguerre formula vs phase_average(Pi e^{i sqrt2 a P})", formula,
                             phase_average(circle_kernel_matched(a, dim)).matrix(), block, tol);
    rep.params["a"] = a;
    rep.diagnostics["literal_kernel_e2iaP_max_abs"] =
        max_abs_diff(formula, phase_average(circle_kernel(a, dim)).matrix(), block);
    rep.note = "the kernel Pi e^{2iaP} averages to 2pi(-1)^n e^{-a^2} L_n(2a^2); see literal_kernel diagnostic";
    return rep;
  }
  if (region.is<Disc>()) {
    const double a = region.as<Disc>().width;
    const Matrix formula = disc_ovm(a, dim, opt.quadrature_points).op.matrix();
    auto rep = matrix_report(region.describe() + ": rotated-segment formula vs sqrt2 phase_average(K_L(a/sqrt2))",
                             formula, disc_ovm_matched(a, dim).matrix(), block, tol);
    rep.params["a"] = a;
    rep.params["quadrature_points"] = opt.quadrature_points;
    rep.diagnostics["literal_phase_average_K_L_max_abs"] =
        max_abs_diff(formula, phase_average(segment_ovm(a, dim).op).matrix(), block);
    try {
      const Matrix area = region_ovm_oracle(region, dim, opt.grid).op.matrix();
      rep.diagnostics["area_form_minus_K_D_max_abs"] = max_abs_diff(area, formula, block);
      rep.diagnostics["area_form_vacuum"] = area(0, 0).real();
    } catch (const Error&) {
      rep.note = "area form skipped: grid does not resolve the disc";
    }
    return rep;
  }
  const QuantumState state = opt.state.value_or(QuantumState::fock(0, dim));
  if (state.dim() != dim) throw Error(ErrorKind::dimension_mismatch, "state dimension differs from dim");
  const Matrix k = region_ovm_oracle(region, dim, opt.grid).op.matrix();
  const double trace = (state.density() * k).trace().real();
  const double mass = quasiprob_mass(state, region, opt.grid, 0.0, WignerConvention::bare);
  auto rep = scalar_report(region.describe() + ": Tr(rho K(X)) vs grid integral of W (bare)", trace, mass, tol);
  rep.params["dim"] = static_cast<double>(dim);
  rep.params["nq"] = static_cast<double>(opt.grid.nq);
  rep.params["np"] = static_cast<double>(opt.grid.np);
  if (auto exact = exact_vacuum_mass(region); exact && state.is_pure() && state.parity_sign() == 1 &&
                                              std::abs(std::abs(state.vector()(0)) - 1.0) < 1e-14)
    rep.diagnostics["exact_vacuum_mass"] = *exact;
  return rep;
}

}  // namespace detail

/// Runs the analytic path against its oracle for the region's type.
inline OracleReport verify_region_operator(const RegionDescriptor& region, Index dim, double tol,
                                           const VerifyOptions& opt = {}) {
  if (const auto* r1 = std::get_if<CharacteristicFunction1D>(&region)) return detail::verify_1d(*r1, dim, tol, opt);
  return detail::verify_2d(std::get<Region2D>(region), dim, tol, opt);
}

/// One report per sweep point. Exactly one of dims / grids / quadratures may
/// hold more than one entry; it is the swept axis. For 2D regions with a
/// closed-form vacuum mass, the grid sweep measures the oracle trace against
/// it (the same-grid comparison is exact to round-off at any resolution).
inline std::vector<OracleReport> convergence_sweep(const RegionDescriptor& region, const std::vector<Index>& dims,
                                                   const std::vector<PhaseGrid>& grids = {PhaseGrid{}},
                                                   const std::vector<int>& quadratures = {64}, double tol = 1e-6) {
  const int swept = (dims.size() > 1) + (grids.size() > 1) + (quadratures.size() > 1);
  if (dims.empty() || grids.empty() || quadratures.empty() || swept > 1)
    throw Error(ErrorKind::invalid_quadrature, "sweep needs one axis with several entries and the others fixed");
  const std::size_t count = std::max({dims.size(), grids.size(), quadratures.size()});
  std::vector<OracleReport> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Index dim = dims[std::min(i, dims.size() - 1)];
    VerifyOptions opt;
    opt.grid = grids[std::min(i, grids.size() - 1)];
    opt.quadrature_points = quadratures[std::min(i, quadratures.size() - 1)];
    const auto* r2 = std::get_if<Region2D>(&region);
    if (grids.size() > 1 && r2 && !r2->is<Circle>() && !r2->is<Disc>()) {
      if (auto exact = exact_vacuum_mass(*r2)) {
        const Matrix k = region_ovm_oracle(*r2, dim, opt.grid).op.matrix();
        auto rep = detail::scalar_report(r2->describe() + ": vacuum Tr(rho K(X)) vs exact mass", k(0, 0).real(), *exact, tol);
        rep.params["dim"] = static_cast<double>(dim);
        rep.params["nq"] = static_cast<double>(opt.grid.nq);
        rep.params["np"] = static_cast<double>(opt.grid.np);
        out.push_back(std::move(rep));
        continue;
      }
    }
    out.push_back(verify_region_operator(region, dim, tol, opt));
  }
  return out;
}

/// Non-increasing up to a relative slack; values under the round-off floor
/// count as converged.
inline bool sweep_is_monotone(const std::vector<OracleReport>& sweep, double slack = 0.10, double floor = kRoundoffFloor) {
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    const double prev = sweep[i - 1].abs_dev;
    const double cur = sweep[i].abs_dev;
    if (cur <= floor) continue;
    if (cur > prev * (1.0 + slack)) return false;
  }
  return true;
}

}  // namespace phase_ovm
