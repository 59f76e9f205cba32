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

// phase-ovm: build region operators, compute quasi-probability masses, run
// verifications and export quasi-probability fields.
//
// Exit codes: 0 success/pass, 1 verification ran and failed, 2 usage error,
// 3 numerical (truncation) error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phase_ovm.hpp"

namespace {

using namespace phase_ovm;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& text) {
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw UsageError("not a number: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not a number: '" + text + "'");
  }
}

std::vector<double> parse_numbers(const std::string& text, char sep = ',') {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const auto& part : split(text, sep)) out.push_back(parse_number(part));
  return out;
}

/// key=value pairs separated by ';' (or ',' when no value contains a list).
std::map<std::string, std::string> parse_keyed(const std::string& body) {
  std::map<std::string, std::string> out;
  const char sep = body.find(';') != std::string::npos ? ';' : ',';
  for (const auto& item : split(body, sep)) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::string required(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& kind) {
  auto it = kv.find(key);
  if (it == kv.end()) throw UsageError(kind + " needs " + key + "=");
  return it->second;
}

/// Region grammar:
///   interval:LO,HI   union:LO,HI;LO,HI   integers:n=N   segment:a=A
///   fourier:a0=A0;a=A1,A2;b=B1,B2;L=PERIOD
///   circle:a=R   disc:a=W   disc:reliable   rect:Q0,Q1,P0,P1 (inf allowed)
///   empty   indicator:PATH   json:PATH   or an inline JSON object
RegionDescriptor parse_region(const std::string& spec, Index dim, bool* segment = nullptr) {
  if (segment) *segment = false;
  if (!spec.empty() && spec.front() == '{') return region_from_json(Json::parse(spec));
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "interval") {
    const auto v = parse_numbers(body);
    if (v.size() != 2) throw UsageError("interval needs LO,HI");
    return CharacteristicFunction1D::interval(v[0], v[1]);
  }
  if (kind == "union") {
    std::vector<Interval> parts;
    for (const auto& p : split(body, ';')) {
      const auto v = parse_numbers(p);
      if (v.size() != 2) throw UsageError("union parts need LO,HI");
      parts.push_back({v[0], v[1]});
    }
    return CharacteristicFunction1D::union_of(std::move(parts));
  }
  if (kind == "integers") return CharacteristicFunction1D::integer_comb(static_cast<int>(parse_number(required(parse_keyed(body), "n", kind))));
  if (kind == "segment") {
    const double a = parse_number(required(parse_keyed(body), "a", kind));
    if (segment) *segment = true;
    return CharacteristicFunction1D::interval(-0.5 * a, 0.5 * a);
  }
  if (kind == "fourier") {
    auto kv = parse_keyed(body);
    return CharacteristicFunction1D::fourier(kv.count("a0") ? parse_number(kv["a0"]) : 0.0, parse_numbers(kv["a"]),
                                             parse_numbers(kv["b"]), parse_number(required(kv, "L", kind)));
  }
  if (kind == "circle") return Region2D::circle(parse_number(required(parse_keyed(body), "a", kind)));
  if (kind == "disc" || kind == "disk") {
    if (body == "reliable") return Region2D::disc(2.0 * std::sqrt(2.0 * static_cast<double>(dim)));
    return Region2D::disc(parse_number(required(parse_keyed(body), "a", kind)));
  }
  if (kind == "rect" || kind == "rectangle") {
    const auto v = parse_numbers(body);
    if (v.size() != 4) throw UsageError("rect needs Q0,Q1,P0,P1");
    return Region2D::rectangle(v[0], v[1], v[2], v[3]);
  }
  if (kind == "empty") return Region2D::empty();
  if (kind == "indicator") {
    std::ifstream in(body, std::ios::binary);
    if (!in) throw UsageError("cannot open indicator file '" + body + "'");
    return read_indicator(in);
  }
  if (kind == "json") {
    std::ifstream in(body);
    if (!in) throw UsageError("cannot open region file '" + body + "'");
    return region_from_json(Json::parse(in));
  }
  throw UsageError("unknown region kind '" + kind + "'");
}

/// fock:N   coeffs:C0,C1,...   coherent:RE[,IM]   squeezed:R
QuantumState parse_state(const std::string& spec, Index dim) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "vacuum") return QuantumState::fock(0, dim);
  if (kind == "fock") return QuantumState::fock(static_cast<Index>(parse_number(body)), dim);
  if (kind == "coeffs") {
    const auto c = parse_numbers(body);
    if (c.empty() || static_cast<Index>(c.size()) > dim) throw UsageError("coeffs must have 1..dim entries");
    Vector v = Vector::Zero(dim);
    for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Index>(i)) = c[i];
    if (v.norm() == 0.0) throw UsageError("coeffs must not all vanish");
    return QuantumState::pure(v / v.norm());
  }
  if (kind == "coherent") {
    const auto v = parse_numbers(body);
    if (v.empty() || v.size() > 2) throw UsageError("coherent needs RE[,IM]");
    return QuantumState::coherent(Complex(v[0], v.size() > 1 ? v[1] : 0.0), dim);
  }
  if (kind == "squeezed") return QuantumState::squeezed_vacuum(parse_number(body), dim);
  throw UsageError("unknown state kind '" + kind + "'");
}

Json state_json(const std::string& spec) { return Json{{"spec", spec}}; }

PhaseGrid parse_grid(const std::string& spec) {
  PhaseGrid g;
  if (spec.empty()) return g;
  const auto v = parse_numbers(spec);
  if (v.size() != 6) throw UsageError("--grid needs qmin,qmax,pmin,pmax,nq,np");
  g.q_min = v[0];
  g.q_max = v[1];
  g.p_min = v[2];
  g.p_max = v[3];
  g.nq = static_cast<Index>(v[4]);
  g.np = static_cast<Index>(v[5]);
  if (!(g.q_min < g.q_max) || !(g.p_min < g.p_max)) throw UsageError("grid ranges must be increasing");
  g.validate();
  return g;
}

void check_dim(Index dim, Index lo, Index hi) {
  if (dim < lo || dim > hi)
    throw UsageError("--dim must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

/// Writes text to the output path, or stdout when none is given.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

void emit_binary(const std::string& path, const std::string& bytes, const Json& sidecar) {
  if (path.empty() || path == "-") throw UsageError("binary output needs --output");
  emit(path, bytes);
  emit(path + ".json", sidecar.dump(2) + "\n");
}

struct Options {
  std::string region;
  std::string state = "fock:0";
  Index dim = 48;
  std::string grid;
  double s = 0.0;
  std::string output;
  std::string format = "json";
  std::string convention = "bare";
  std::string path = "analytic";
  std::string target;
  std::vector<double> a;
  double a0 = 1.0;
  double period = kPi;
  double c = 0.5;
  double r = 0.2;
  int n = 3;
  int quadrature = 64;
  int draws = 0;
  std::uint64_t seed = 20260101;
};

WignerConvention parse_convention(const std::string& c) {
  if (c == "bare") return WignerConvention::bare;
  if (c == "two_over_pi") return WignerConvention::two_over_pi;
  throw UsageError("convention must be bare or two_over_pi");
}

Json base_provenance(const std::string& command, const Options& o) {
  Json p = provenance(command);
  p["dim"] = o.dim;
  return p;
}

int cmd_build(const Options& o) {
  check_dim(o.dim, 8, 256);
  bool segment = false;
  const RegionDescriptor region = parse_region(o.region, o.dim, &segment);
  const PhaseGrid grid = parse_grid(o.grid);
  std::optional<RegionOperator> k;
  Json tolerances = Json::object();
  if (const auto* r1 = std::get_if<CharacteristicFunction1D>(&region)) {
    if (segment && o.path == "analytic") {
      k = segment_ovm(r1->as<Interval>().hi * 2.0, o.dim);
    } else if (o.path == "analytic") {
      k = build_region_operator_1d(*r1, o.dim);
    } else if (o.path == "smeared") {
      k = build_region_operator_smeared(*r1, o.dim, o.quadrature);
    } else {
      throw UsageError("1D regions support --path analytic or smeared");
    }
  } else {
    const auto& r2 = std::get<Region2D>(region);
    if (o.path == "oracle" || r2.is<Rectangle>() || r2.is<Indicator>() || r2.is<EmptyRegion>()) {
      k = region_ovm_oracle(r2, o.dim, grid);
    } else if (r2.is<Circle>()) {
      k = circle_ovm(r2.as<Circle>().radius, o.dim);
    } else if (r2.is<Disc>()) {
      k = disc_ovm(r2.as<Disc>().width, o.dim, o.quadrature);
    } else {
      throw UsageError("unsupported --path for this region");
    }
  }
  const FockOperator& op = k->op;
  const double herm = op.hermiticity_defect();
  const double pcomm = op.commutator_defect(FockOperator(parity_matrix(o.dim)));
  const bool hermitian = herm <= 1e-10;

  Json meta;
  Json prov = base_provenance("build", o);
  prov["path"] = std::string(to_string(k->path));
  if (k->path == ConstructionPath::oracle) prov["grid"] = grid_to_json(grid);
  if (k->path != ConstructionPath::analytic || std::holds_alternative<Region2D>(region)) prov["quadrature_points"] = o.quadrature;
  prov["tolerances"] = {{"hermitian", 1e-10}, {"parity_commutes", 1e-10}};
  meta["provenance"] = prov;
  meta["region"] = region_to_json(region);
  meta["hermitian"] = hermitian;
  meta["hermiticity_defect"] = herm;
  meta["parity_commutes"] = pcomm <= 1e-10;
  meta["parity_commutator_defect"] = pcomm;
  // A symmetric cfun has a real transform; otherwise chi~ is complex (the
  // operator itself stays Hermitian, with eigenvalues +-|chi~(p)|).
  if (const auto* r1 = std::get_if<CharacteristicFunction1D>(&region)) meta["transform_real"] = r1->is_symmetric();
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (op.matrix() + op.matrix().adjoint()), Eigen::EigenvaluesOnly);
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    meta["eigenvalues"] = ev;
  } else {
    meta["eigenvalues"] = nullptr;
  }
  if (o.format == "bin") {
    std::ostringstream bytes;
    write_matrix_binary(op.matrix(), bytes);
    emit_binary(o.output, bytes.str(), meta);
  } else if (o.format == "json") {
    meta["matrix"] = matrix_to_json(op.matrix());
    emit(o.output, meta.dump(2) + "\n");
  } else {
    throw UsageError("build writes json or bin");
  }
  if (!o.output.empty() && o.output != "-")
    std::cout << "built " << describe(region) << " dim=" << o.dim << " path=" << to_string(k->path)
              << " hermitian=" << (hermitian ? "true" : "false") << " -> " << o.output << "\n";
  return 0;
}

int cmd_mass(const Options& o) {
  check_dim(o.dim, 8, 256);
  const RegionDescriptor parsed = parse_region(o.region, o.dim);
  const auto* region = std::get_if<Region2D>(&parsed);
  if (!region) throw UsageError("mass needs a 2D region");
  const QuantumState state = parse_state(o.state, o.dim);
  const PhaseGrid grid = parse_grid(o.grid);
  const WignerConvention conv = parse_convention(o.convention);
  const double field = quasiprob_mass(state, *region, grid, o.s, conv);
  double op_route = 0.0;
  std::string op_label;
  if (o.s == 0.0) {
    op_route = convention_factor(conv) * (state.density() * region_ovm_oracle(*region, o.dim, grid).op.matrix()).trace().real();
    op_label = "Tr(rho K(X)), K(X) by the midpoint oracle";
  } else {
    double acc = 0.0;
    for (Index j = 0; j < grid.np; ++j)
      for (Index i = 0; i < grid.nq; ++i)
        if (region->contains(grid.q(i), grid.p(j))) acc += quasiprob_kernel(state, grid.alpha(i, j), o.s).real();
    op_route = convention_factor(conv) * grid.measure() * acc;
    op_label = "sum over cells of Tr(rho D Pi(s) D^dag) d^2alpha";
  }
  Json out;
  Json prov = base_provenance("mass", o);
  prov["grid"] = grid_to_json(grid);
  prov["path"] = "oracle";
  prov["s"] = o.s;
  prov["convention"] = std::string(to_string(conv));
  out["provenance"] = prov;
  out["region"] = region_to_json(*region);
  out["state"] = state_json(o.state);
  out["operator_route"] = {{"label", op_label}, {"value", op_route}};
  out["field_route"] = {{"label", "grid sum of F(alpha;s) d^2alpha"}, {"value", field}};
  out["deviation"] = std::abs(op_route - field);
  out["convention"] = std::string(to_string(conv));
  emit(o.output, out.dump(2) + "\n");
  if (!o.output.empty() && o.output != "-")
    std::cout << "mass " << region->describe() << " operator=" << op_route << " field=" << field << " convention=" << to_string(conv) << "\n";
  return 0;
}

bool is_two_mode(const std::string& target) { return target == "dilation" || target == "parity-sum"; }

int cmd_verify(const Options& o) {
  const auto& names = verification_targets();
  if (std::find(names.begin(), names.end(), o.target) == names.end())
    throw UsageError("unknown verification target '" + o.target + "'");
  if (is_two_mode(o.target)) check_dim(o.dim, 4, 16);
  else check_dim(o.dim, 8, 256);
  VerifyParams p;
  p.dim = o.dim;
  if (!o.a.empty()) {
    p.a = o.a.front();
    p.am = o.a;
  }
  p.a0 = o.a0;
  p.period = o.period;
  p.c = o.c;
  p.r = o.r;
  p.n = o.n;
  p.quadrature_points = o.quadrature;
  p.draws = o.draws;
  p.seed = o.seed;
  p.grid = parse_grid(o.grid);
  if (!o.region.empty()) {
    const RegionDescriptor r = parse_region(o.region, o.dim);
    if (const auto* r1 = std::get_if<CharacteristicFunction1D>(&r)) p.region = *r1;
    else throw UsageError("verify --region takes a 1D region");
  }
  const OracleReport rep = run_verification(o.target, p);
  Json out;
  Json prov = base_provenance("verify", o);
  prov["target"] = o.target;
  prov["tolerance"] = rep.tolerance;
  prov["path"] = "oracle";
  out["provenance"] = prov;
  out["report"] = report_to_json(rep);
  if (!o.output.empty() && o.output != "-") {
    emit(o.output, out.dump(2) + "\n");
    std::cout << (rep.pass ? "PASS " : "FAIL ") << o.target << " dev=" << rep.abs_dev << " tol=" << rep.tolerance << "\n";
  } else {
    emit("", out.dump(2) + "\n");
  }
  return rep.pass ? 0 : kExitFail;
}

int cmd_field(const Options& o) {
  check_dim(o.dim, 8, 256);
  const QuantumState state = parse_state(o.state, o.dim);
  const PhaseGrid grid = parse_grid(o.grid);
  const WignerConvention conv = parse_convention(o.convention);
  const QuasiField field = wigner_field(state, grid, conv, o.s);
  Json prov = base_provenance("field", o);
  prov["grid"] = grid_to_json(grid);
  prov["s"] = o.s;
  prov["convention"] = std::string(to_string(conv));
  prov["state"] = o.state;
  prov["path"] = "series";
  if (o.format == "csv") {
    std::ostringstream os;
    for (const auto& [k, v] : prov.items()) os << "# " << k << ": " << v.dump() << "\n";
    write_csv(field, os);
    emit(o.output, os.str());
  } else if (o.format == "bin") {
    std::ostringstream bytes;
    write_raster(field, bytes);
    emit_binary(o.output, bytes.str(), Json{{"provenance", prov}, {"format", "raster"}});
  } else if (o.format == "json") {
    Json out{{"provenance", prov}, {"grid", grid_to_json(grid)}, {"values", field.values}};
    emit(o.output, out.dump() + "\n");
  } else {
    throw UsageError("field writes csv, bin or json");
  }
  if (!o.output.empty() && o.output != "-")
    std::cout << "field " << o.state << " s=" << o.s << " min=" << field.min() << " max=" << field.max() << " -> " << o.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-ovm: region operators over phase space in a truncated Fock basis"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--dim", o.dim, "Fock truncation dimension (per mode for two-mode targets)");
    sub->add_option("--output,-o", o.output, "output path (stdout when omitted)");
    sub->add_option("--grid", o.grid, "phase grid qmin,qmax,pmin,pmax,nq,np (default -6,6,-6,6,200,200)");
  };

  auto* build = app.add_subcommand("build", "build a region operator");
  common(build);
  build->add_option("--region", o.region, "region spec")->required();
  build->add_option("--path", o.path, "analytic | smeared | oracle")->check(CLI::IsMember({"analytic", "smeared", "oracle"}));
  build->add_option("--quadrature", o.quadrature, "quadrature points");
  build->add_option("--format", o.format, "json | bin")->check(CLI::IsMember({"json", "bin"}));

  auto* mass = app.add_subcommand("mass", "quasi-probability mass of a 2D region");
  common(mass);
  mass->add_option("--region", o.region, "2D region spec")->required();
  mass->add_option("--state", o.state, "fock:N | coeffs:... | coherent:RE[,IM] | squeezed:R");
  mass->add_option("--s", o.s, "ordering parameter s < 1");
  mass->add_option("--convention", o.convention, "bare | two_over_pi");

  auto* verify = app.add_subcommand("verify", "run a named verification");
  common(verify);
  verify->add_option("--target", o.target, "verification target")->required();
  verify->add_option("--region", o.region, "1D region for interval/rotation/shift/squeeze/kraus");
  verify->add_option("--a", o.a, "size parameter; for kraus the cosine coefficients a_1..a_M")->delimiter(',');
  verify->add_option("--a0", o.a0, "kraus: constant Fourier coefficient");
  verify->add_option("--L", o.period, "kraus: period");
  verify->add_option("--c", o.c, "shift amount");
  verify->add_option("--r", o.r, "squeeze parameter");
  verify->add_option("--n", o.n, "integer comb size");
  verify->add_option("--quadrature", o.quadrature, "quadrature points");
  verify->add_option("--draws", o.draws, "random draws");
  verify->add_option("--seed", o.seed, "random seed");

  auto* field = app.add_subcommand("field", "export a quasi-probability field");
  common(field);
  field->add_option("--state", o.state, "fock:N | coeffs:... | coherent:RE[,IM] | squeezed:R");
  field->add_option("--s", o.s, "ordering parameter s < 1");
  field->add_option("--convention", o.convention, "bare | two_over_pi");
  field->add_option("--format", o.format, "csv | bin | json")->check(CLI::IsMember({"csv", "bin", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build(o);
    if (*mass) return cmd_mass(o);
    if (*verify) return cmd_verify(o);
    if (*field) return cmd_field(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const phase_ovm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_numerical() ? kExitNumerical : kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
