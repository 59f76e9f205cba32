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

// JSON forms of regions, operators and reports; indicator grid files; the
// provenance block every artifact carries.

#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phase_ovm/errors.hpp"
#include "phase_ovm/fock.hpp"
#include "phase_ovm/oracle.hpp"
#include "phase_ovm/quasiprob.hpp"
#include "phase_ovm/region_types.hpp"

namespace phase_ovm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

inline Json grid_to_json(const PhaseGrid& g) {
  return Json{{"q_min", g.q_min}, {"q_max", g.q_max}, {"p_min", g.p_min},
              {"p_max", g.p_max}, {"nq", g.nq},       {"np", g.np}};
}

inline PhaseGrid grid_from_json(const Json& j) {
  PhaseGrid g;
  g.q_min = j.at("q_min").get<double>();
  g.q_max = j.at("q_max").get<double>();
  g.p_min = j.at("p_min").get<double>();
  g.p_max = j.at("p_max").get<double>();
  g.nq = j.at("nq").get<Index>();
  g.np = j.at("np").get<Index>();
  g.validate();
  return g;
}

inline Json region_to_json(const CharacteristicFunction1D& r) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Interval>) {
          return {{"type", "interval"}, {"lo", s.lo}, {"hi", s.hi}};
        } else if constexpr (std::is_same_v<T, UnionOfIntervals>) {
          Json parts = Json::array();
          for (const auto& p : s.parts) parts.push_back({p.lo, p.hi});
          return {{"type", "union"}, {"parts", parts}};
        } else if constexpr (std::is_same_v<T, FourierPeriodic>) {
          return {{"type", "fourier"}, {"a0", s.a0}, {"a", s.a}, {"b", s.b}, {"L", s.period}};
        } else {
          return {{"type", "integers"}, {"n", s.n}};
        }
      },
      r.shape());
}

inline std::string mask_to_string(const std::vector<std::uint8_t>& mask) {
  std::string out(mask.size(), '0');
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out[i] = '1';
  return out;
}

inline Json region_to_json(const Region2D& r) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return {{"type", "circle"}, {"a", s.radius}};
        } else if constexpr (std::is_same_v<T, Disc>) {
          return {{"type", "disc"}, {"a", s.width}};
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          return {{"type", "rectangle"}, {"q0", s.q0}, {"q1", s.q1}, {"p0", s.p0}, {"p1", s.p1}};
        } else if constexpr (std::is_same_v<T, Indicator>) {
          return {{"type", "indicator"}, {"grid", grid_to_json(s.grid)}, {"mask", mask_to_string(s.mask)}};
        } else {
          return {{"type", "empty"}};
        }
      },
      r.shape());
}

inline Json region_to_json(const RegionDescriptor& r) {
  return std::visit([](const auto& x) { return region_to_json(x); }, r);
}

namespace detail {

// JSON has no infinity; half-infinite rectangle sides travel as null.
inline double bound_from_json(const Json& j, const char* key, double fallback) {
  return j.contains(key) && !j.at(key).is_null() ? j.at(key).get<double>() : fallback;
}

}  // namespace detail

inline RegionDescriptor region_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "interval") return CharacteristicFunction1D::interval(j.at("lo").get<double>(), j.at("hi").get<double>());
  if (type == "union") {
    std::vector<Interval> parts;
    for (const auto& p : j.at("parts")) parts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return CharacteristicFunction1D::union_of(std::move(parts));
  }
  if (type == "fourier")
    return CharacteristicFunction1D::fourier(j.value("a0", 0.0), j.value("a", std::vector<double>{}),
                                             j.value("b", std::vector<double>{}), j.at("L").get<double>());
  if (type == "integers") return CharacteristicFunction1D::integer_comb(j.at("n").get<int>());
  if (type == "circle") return Region2D::circle(j.at("a").get<double>());
  if (type == "disc") return Region2D::disc(j.at("a").get<double>());
  if (type == "rectangle") {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return Region2D::rectangle(detail::bound_from_json(j, "q0", -inf), detail::bound_from_json(j, "q1", inf),
                               detail::bound_from_json(j, "p0", -inf), detail::bound_from_json(j, "p1", inf));
  }
  if (type == "indicator") {
    const PhaseGrid g = grid_from_json(j.at("grid"));
    const std::string m = j.at("mask").get<std::string>();
    std::vector<std::uint8_t> mask;
    mask.reserve(m.size());
    for (char c : m) {
      if (c != '0' && c != '1') throw Error(ErrorKind::invalid_region, "indicator mask must be 0/1");
      mask.push_back(c == '1');
    }
    return Region2D::indicator(g, std::move(mask));
  }
  if (type == "empty") return Region2D::empty();
  throw Error(ErrorKind::invalid_region, "unknown region type '" + type + "'");
}

/// Indicator grid file: one header line
///   phase-ovm-indicator v1 <qmin> <qmax> <pmin> <pmax> <nq> <np>
/// then nq*np cells, q fastest, as raw 0x00/0x01 bytes or ASCII '0'/'1'
/// (ASCII whitespace between cells is ignored).
inline Region2D read_indicator(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorKind::invalid_region, "empty indicator file");
  std::istringstream hs(header);
  std::string magic, version;
  PhaseGrid g;
  hs >> magic >> version >> g.q_min >> g.q_max >> g.p_min >> g.p_max >> g.nq >> g.np;
  if (!hs || magic != "phase-ovm-indicator" || version != "v1")
    throw Error(ErrorKind::invalid_region, "bad indicator header");
  g.validate();
  std::vector<std::uint8_t> mask;
  mask.reserve(static_cast<std::size_t>(g.size()));
  char c;
  while (is.get(c)) {
    if (c == 0 || c == '0') mask.push_back(0);
    else if (c == 1 || c == '1') mask.push_back(1);
    else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    else throw Error(ErrorKind::invalid_region, "indicator cells must be 0 or 1");
  }
  if (static_cast<Index>(mask.size()) != g.size())
    throw Error(ErrorKind::invalid_region, "indicator has " + std::to_string(mask.size()) + " cells, expected " +
                                               std::to_string(g.size()));
  return Region2D::indicator(g, std::move(mask));
}

inline void write_indicator(const Region2D& region, std::ostream& os) {
  if (!region.is<Indicator>()) throw Error(ErrorKind::invalid_region, "not an indicator region");
  const auto& s = region.as<Indicator>();
  os.precision(17);
  os << "phase-ovm-indicator v1 " << s.grid.q_min << ' ' << s.grid.q_max << ' ' << s.grid.p_min << ' ' << s.grid.p_max
     << ' ' << s.grid.nq << ' ' << s.grid.np << '\n';
  for (auto m : s.mask) os.put(static_cast<char>(m ? 1 : 0));
}

/// Samples any region onto a grid as an indicator.
inline Region2D rasterize(const Region2D& region, const PhaseGrid& g) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.size()));
  for (Index j = 0; j < g.np; ++j)
    for (Index i = 0; i < g.nq; ++i) mask[static_cast<std::size_t>(g.flat(i, j))] = region.contains(g.q(i), g.p(j));
  return Region2D::indicator(g, std::move(mask));
}

inline Json conventions_json() {
  return Json{{"hbar", 1},
              {"ladder", "a = (Q + iP)/sqrt2, [Q,P] = i"},
              {"fourier", "f~(p) = int f(q) e^{iqp} dq"},
              {"phase_point", "alpha = (q + ip)/sqrt2, d^2alpha = dq dp / 2"},
              {"parity", "Pi = e^{i pi N}"},
              {"comparison_block", "top-left dim/2 Fock block"}};
}

/// Provenance block; callers add dim, grid, tolerances and path.
inline Json provenance(const std::string& command) {
  return Json{{"tool", "phase-ovm"}, {"version", kVersion}, {"command", command}, {"conventions", conventions_json()}};
}

inline Json matrix_to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ii = Json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

inline Matrix matrix_from_json(const Json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = Complex(j.at("real").at(i).at(k).get<double>(), j.at("imag").at(i).at(k).get<double>());
  return m;
}

inline constexpr char kMatrixMagic[8] = {'P', 'O', 'M', 'A', 'T', 'R', 'I', 'X'};

/// magic, u32 version, u32 rows, u32 cols, then (re, im) f64 pairs row-major.
inline void write_matrix_binary(const Matrix& m, std::ostream& os) {
  os.write(kMatrixMagic, sizeof(kMatrixMagic));
  detail::put_le<std::uint32_t>(os, 1);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(m.rows()));
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) {
      detail::put_le(os, m(i, k).real());
      detail::put_le(os, m(i, k).imag());
    }
}

inline Matrix read_matrix_binary(std::istream& is) {
  char magic[sizeof(kMatrixMagic)];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMatrixMagic, sizeof(magic)) != 0)
    throw Error(ErrorKind::invalid_region, "not a matrix file");
  if (detail::get_le<std::uint32_t>(is) != 1) throw Error(ErrorKind::invalid_region, "unsupported matrix version");
  const Index rows = detail::get_le<std::uint32_t>(is);
  const Index cols = detail::get_le<std::uint32_t>(is);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) {
      const double re = detail::get_le<double>(is);
      m(i, k) = Complex(re, detail::get_le<double>(is));
    }
  return m;
}

inline Json report_to_json(const OracleReport& r) {
  Json j{{"label", r.label},         {"analytic", r.analytic}, {"oracle", r.oracle},
         {"abs_dev", r.abs_dev},     {"rel_dev", r.rel_dev},   {"tolerance", r.tolerance},
         {"pass", r.pass},           {"params", Json::object()}, {"diagnostics", Json::object()}};
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  for (const auto& [k, v] : r.diagnostics) j["diagnostics"][k] = v;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline OracleReport report_from_json(const Json& j) {
  OracleReport r;
  r.label = j.at("label").get<std::string>();
  r.analytic = j.at("analytic").get<std::vector<double>>();
  r.oracle = j.at("oracle").get<std::vector<double>>();
  r.abs_dev = j.at("abs_dev").get<double>();
  r.rel_dev = j.at("rel_dev").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
  for (const auto& [k, v] : j.at("diagnostics").items()) r.diagnostics[k] = v.get<double>();
  r.note = j.value("note", std::string{});
  return r;
}

}  // namespace phase_ovm
