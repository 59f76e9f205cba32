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

// Region descriptors: characteristic functions on a phase-space axis, 2D
// phase-space regions, and the sampling grid used for 2D integrals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"

namespace phase_ovm {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct UnionOfIntervals {
  std::vector<Interval> parts;  // sorted, pairwise disjoint
};

/// chi(q) = a0/2 + sum_m a_m cos(m pi q / L) + b_m sin(m pi q / L)
struct FourierPeriodic {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  double period = 1.0;  // L

  double harmonic(std::size_t m) const { return static_cast<double>(m) * kPi / period; }
  double cos_coeff(std::size_t m) const { return m >= 1 && m <= a.size() ? a[m - 1] : 0.0; }
  double sin_coeff(std::size_t m) const { return m >= 1 && m <= b.size() ? b[m - 1] : 0.0; }
  std::size_t harmonics() const { return std::max(a.size(), b.size()); }
};

/// The points {1, ..., n}. Carries the e^{2ixP} smearing kernel, so its
/// transform is sum_{m=1}^n e^{2imp}.
struct IntegerComb {
  int n = 1;
};

class CharacteristicFunction1D {
 public:
  using Shape = std::variant<Interval, UnionOfIntervals, FourierPeriodic, IntegerComb>;

  static CharacteristicFunction1D interval(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw Error(ErrorKind::invalid_region, "interval needs finite lo < hi");
    return CharacteristicFunction1D(Interval{lo, hi});
  }

  /// Sorts the parts and merges overlapping or touching ones.
  static CharacteristicFunction1D union_of(std::vector<Interval> parts) {
    if (parts.empty()) throw Error(ErrorKind::invalid_region, "union needs at least one interval");
    for (const auto& p : parts)
      if (!(p.lo < p.hi) || !std::isfinite(p.lo) || !std::isfinite(p.hi))
        throw Error(ErrorKind::invalid_region, "union parts need finite lo < hi");
    std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    UnionOfIntervals u;
    for (const auto& p : parts) {
      if (!u.parts.empty() && p.lo <= u.parts.back().hi)
        u.parts.back().hi = std::max(u.parts.back().hi, p.hi);
      else
        u.parts.push_back(p);
    }
    if (u.parts.size() == 1) return CharacteristicFunction1D(u.parts.front());
    return CharacteristicFunction1D(std::move(u));
  }

  static CharacteristicFunction1D fourier(double a0, std::vector<double> a, std::vector<double> b, double period) {
    if (!(period > 0.0) || !std::isfinite(period)) throw Error(ErrorKind::invalid_region, "period must be positive");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::isfinite(a0) || !std::all_of(a.begin(), a.end(), finite) || !std::all_of(b.begin(), b.end(), finite))
      throw Error(ErrorKind::invalid_region, "Fourier coefficients must be finite");
    return CharacteristicFunction1D(FourierPeriodic{a0, std::move(a), std::move(b), period});
  }

  static CharacteristicFunction1D integer_comb(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_region, "integer comb needs n >= 1");
    return CharacteristicFunction1D(IntegerComb{n});
  }

  const Shape& shape() const { return shape_; }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(shape_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(shape_);
  }

  bool has_bounded_support() const { return !is<FourierPeriodic>(); }

  /// chi even under q -> -q.
  bool is_symmetric(double tol = 1e-12) const {
    return std::visit(
        [tol](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Interval>) {
            return std::abs(s.lo + s.hi) <= tol;
          } else if constexpr (std::is_same_v<T, UnionOfIntervals>) {
            const auto n = s.parts.size();
            for (std::size_t i = 0; i < n; ++i)
              if (std::abs(s.parts[i].lo + s.parts[n - 1 - i].hi) > tol) return false;
            return true;
          } else if constexpr (std::is_same_v<T, FourierPeriodic>) {
            return std::all_of(s.b.begin(), s.b.end(), [tol](double v) { return std::abs(v) <= tol; });
          } else {
            return false;
          }
        },
        shape_);
  }

  /// chi(q). The comb is 1 on its integers.
  double value(double q) const {
    return std::visit(
        [q](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Interval>) {
            return (q >= s.lo && q <= s.hi) ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<T, UnionOfIntervals>) {
            for (const auto& p : s.parts)
              if (q >= p.lo && q <= p.hi) return 1.0;
            return 0.0;
          } else if constexpr (std::is_same_v<T, FourierPeriodic>) {
            double v = 0.5 * s.a0;
            for (std::size_t m = 1; m <= s.harmonics(); ++m)
              v += s.cos_coeff(m) * std::cos(s.harmonic(m) * q) + s.sin_coeff(m) * std::sin(s.harmonic(m) * q);
            return v;
          } else {
            const double r = std::round(q);
            return (std::abs(q - r) < 1e-12 && r >= 1 && r <= s.n) ? 1.0 : 0.0;
          }
        },
        shape_);
  }

  /// Continuous transform chi~(p) = int chi(q) e^{iqp} dq (comb: sum e^{2imp}).
  /// A periodic cfun has only a distributional transform; use its atoms.
  Complex transform(double p) const {
    return std::visit(
        [p](const auto& s) -> Complex {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Interval>) {
            return interval_transform(s.lo, s.hi, p);
          } else if constexpr (std::is_same_v<T, UnionOfIntervals>) {
            Complex v = 0.0;
            for (const auto& part : s.parts) v += interval_transform(part.lo, part.hi, p);
            return v;
          } else if constexpr (std::is_same_v<T, FourierPeriodic>) {
            throw Error(ErrorKind::invalid_region, "periodic cfun has a discrete transform; use its atoms");
          } else {
            Complex v = 0.0;
            for (int m = 1; m <= s.n; ++m) v += std::exp(2.0 * kI * static_cast<double>(m) * p);
            return v;
          }
        },
        shape_);
  }

  /// Same region moved by +c along the axis.
  CharacteristicFunction1D translated(double c) const {
    if (is<Interval>()) return interval(as<Interval>().lo + c, as<Interval>().hi + c);
    if (is<UnionOfIntervals>()) {
      auto parts = as<UnionOfIntervals>().parts;
      for (auto& p : parts) {
        p.lo += c;
        p.hi += c;
      }
      return union_of(std::move(parts));
    }
    throw Error(ErrorKind::invalid_region, "translation is defined for intervals and unions only");
  }

  std::string describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Interval>) {
            os << "interval[" << s.lo << "," << s.hi << "]";
          } else if constexpr (std::is_same_v<T, UnionOfIntervals>) {
            os << "union{";
            for (std::size_t i = 0; i < s.parts.size(); ++i)
              os << (i ? "," : "") << "[" << s.parts[i].lo << "," << s.parts[i].hi << "]";
            os << "}";
          } else if constexpr (std::is_same_v<T, FourierPeriodic>) {
            os << "fourier(a0=" << s.a0 << ",harmonics=" << s.harmonics() << ",L=" << s.period << ")";
          } else {
            os << "integers(n=" << s.n << ")";
          }
        },
        shape_);
    return os.str();
  }

 private:
  explicit CharacteristicFunction1D(Shape s) : shape_(std::move(s)) {}

  // int_lo^hi e^{iqp} dq, with a series near p = 0.
  static Complex interval_transform(double lo, double hi, double p) {
    const double width = hi - lo;
    const double mid = 0.5 * (hi + lo);
    const double x = 0.5 * width * p;
    double sinc;
    if (std::abs(x) < 1e-4) {
      const double x2 = x * x;
      sinc = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    } else {
      sinc = std::sin(x) / x;
    }
    return std::exp(kI * mid * p) * width * sinc;
  }

  Shape shape_;
};

/// Uniform midpoint grid over a (q, p) rectangle. alpha = (q + ip)/sqrt(2),
/// so each cell carries d^2 alpha = dq dp / 2.
struct PhaseGrid {
  double q_min = -6.0;
  double q_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  Index nq = 200;
  Index np = 200;

  static constexpr Index kMinCount = 32;

  void validate() const {
    if (!(q_min < q_max) || !(p_min < p_max)) throw Error(ErrorKind::invalid_region, "grid ranges must be increasing");
    if (nq < kMinCount || np < kMinCount) throw Error(ErrorKind::grid_too_coarse, "grid needs at least 32 cells per axis");
  }

  double dq() const { return (q_max - q_min) / static_cast<double>(nq); }
  double dp() const { return (p_max - p_min) / static_cast<double>(np); }
  double q(Index i) const { return q_min + (static_cast<double>(i) + 0.5) * dq(); }
  double p(Index j) const { return p_min + (static_cast<double>(j) + 0.5) * dp(); }
  Complex alpha(Index i, Index j) const { return Complex(q(i), p(j)) / std::sqrt(2.0); }
  double cell_area() const { return dq() * dp(); }
  double measure() const { return 0.5 * cell_area(); }
  Index size() const { return nq * np; }
  /// Row-major flat index, p is the slow (row) axis.
  Index flat(Index i, Index j) const { return j * nq + i; }

  bool same_as(const PhaseGrid& o) const {
    return q_min == o.q_min && q_max == o.q_max && p_min == o.p_min && p_max == o.p_max && nq == o.nq && np == o.np;
  }
};

/// Circle of radius a; zero area.
struct Circle {
  double radius = 0.0;
};

/// Disc swept by the segment [-a/2, a/2]: q^2 + p^2 <= (a/2)^2.
struct Disc {
  double width = 0.0;
};

/// [q0, q1] x [p0, p1]; infinite bounds allowed.
struct Rectangle {
  double q0 = 0.0;
  double q1 = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
};

struct Indicator {
  PhaseGrid grid;
  std::vector<std::uint8_t> mask;  // grid.flat(i, j) -> 0/1
};

struct EmptyRegion {};

class Region2D {
 public:
  using Shape = std::variant<Circle, Disc, Rectangle, Indicator, EmptyRegion>;

  static Region2D circle(double a) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw Error(ErrorKind::invalid_region, "circle radius must be >= 0");
    return Region2D(Circle{a});
  }
  static Region2D disc(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::invalid_region, "disc width must be positive");
    return Region2D(Disc{a});
  }
  static Region2D rectangle(double q0, double q1, double p0, double p1) {
    if (!(q0 < q1) || !(p0 < p1)) throw Error(ErrorKind::invalid_region, "rectangle needs q0 < q1 and p0 < p1");
    return Region2D(Rectangle{q0, q1, p0, p1});
  }
  static Region2D indicator(PhaseGrid grid, std::vector<std::uint8_t> mask) {
    grid.validate();
    if (static_cast<Index>(mask.size()) != grid.size())
      throw Error(ErrorKind::invalid_region, "indicator mask size does not match its grid");
    for (const auto m : mask) {
      if (m > 1) throw Error(ErrorKind::invalid_region, "indicator mask entries must be 0 or 1");
    }
    return Region2D(Indicator{grid, std::move(mask)});
  }
  static Region2D empty() { return Region2D(EmptyRegion{}); }

  const Shape& shape() const { return shape_; }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(shape_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(shape_);
  }

  bool contains(double q, double p) const {
    return std::visit(
        [q, p](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Circle>) {
            return false;
          } else if constexpr (std::is_same_v<T, Disc>) {
            return q * q + p * p <= 0.25 * s.width * s.width;
          } else if constexpr (std::is_same_v<T, Rectangle>) {
            return q >= s.q0 && q <= s.q1 && p >= s.p0 && p <= s.p1;
          } else if constexpr (std::is_same_v<T, Indicator>) {
            const auto i = static_cast<Index>(std::floor((q - s.grid.q_min) / s.grid.dq()));
            const auto j = static_cast<Index>(std::floor((p - s.grid.p_min) / s.grid.dp()));
            if (i < 0 || j < 0 || i >= s.grid.nq || j >= s.grid.np) return false;
            return s.mask[static_cast<std::size_t>(s.grid.flat(i, j))] != 0;
          } else {
            return false;
          }
        },
        shape_);
  }

  /// Narrowest extent of the region as seen on `grid` (rectangles clipped to
  /// the grid); infinity when there is nothing to resolve.
  double smallest_feature(const PhaseGrid& grid) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(
        [&grid](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Circle>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, Disc>) {
            return s.width;
          } else if constexpr (std::is_same_v<T, Rectangle>) {
            const double wq = std::min(s.q1, grid.q_max) - std::max(s.q0, grid.q_min);
            const double wp = std::min(s.p1, grid.p_max) - std::max(s.p0, grid.p_min);
            if (wq <= 0.0 || wp <= 0.0) return inf;
            return std::min(wq, wp);
          } else if constexpr (std::is_same_v<T, Indicator>) {
            return grid.same_as(s.grid) ? inf : 0.0;
          } else {
            return inf;
          }
        },
        shape_);
  }

  std::string describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Circle>) {
            os << "circle(a=" << s.radius << ")";
          } else if constexpr (std::is_same_v<T, Disc>) {
            os << "disc(a=" << s.width << ")";
          } else if constexpr (std::is_same_v<T, Rectangle>) {
            os << "rectangle(" << s.q0 << "," << s.q1 << "," << s.p0 << "," << s.p1 << ")";
          } else if constexpr (std::is_same_v<T, Indicator>) {
            os << "indicator(" << s.grid.nq << "x" << s.grid.np << ")";
          } else {
            os << "empty";
          }
        },
        shape_);
    return os.str();
  }

 private:
  explicit Region2D(Shape s) : shape_(std::move(s)) {}
  Shape shape_;
};

using RegionDescriptor = std::variant<CharacteristicFunction1D, Region2D>;

inline std::string describe(const RegionDescriptor& r) {
  return std::visit([](const auto& x) { return x.describe(); }, r);
}

enum class ConstructionPath { analytic, smeared, oracle };

inline std::string_view to_string(ConstructionPath p) {
  switch (p) {
    case ConstructionPath::analytic: return "analytic";
    case ConstructionPath::smeared: return "smeared";
    case ConstructionPath::oracle: return "oracle";
  }
  return "unknown";
}

/// An OVM element K(X) together with the region and the route that built it.
struct RegionOperator {
  FockOperator op;
  RegionDescriptor region;
  ConstructionPath path = ConstructionPath::analytic;

  Index dim() const { return op.dim(); }
};

}  // namespace phase_ovm
