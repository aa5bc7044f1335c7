#include "dicke/cli.hpp"

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "dicke/acceptance.hpp"
#include "dicke/oracle.hpp"
#include "dicke/witnesses.hpp"

namespace dicke::cli {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Output

void write_json(std::ostream& os, const Json& j, int depth = 0) {
  const std::string pad(2 * depth + 2, ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write_json(os, v, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_object() || e.is_array();
      });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_real(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

void emit(std::ostream& out, const Json& j) {
  write_json(out, j);
  out << "\n";
}

Json verdict_json(const WitnessVerdict& v) {
  return Json{{"criterion", std::string(to_string(v.criterion_id))},
              {"value", v.value},
              {"bound", v.bound},
              {"margin", v.margin},
              {"detected", std::string(to_string(v.detected))}};
}

// ---------------------------------------------------------------------------
// States

bool noisy(const RunConfig& c) { return c.noise == NoiseModel::psixy || c.p != 0.0; }

PureState pure_state(const RunConfig& c) {
  if (c.state == "dicke") return dicke_state(c.n, c.target_m());
  if (c.state == "psixy") return psixy_state(c.n, c.phi);
  throw DomainError("unknown --state '" + c.state + "' (expected dicke or psixy)");
}

SymmetricState symmetric_state(const RunConfig& c) {
  if (c.state == "dicke") return symmetric_dicke(c.n, c.target_m());
  if (c.state == "psixy") return symmetric_psixy(c.n, c.phi);
  throw DomainError("unknown --state '" + c.state + "' (expected dicke or psixy)");
}

DensityMatrix mixed_state(const RunConfig& c) {
  if (c.noise == NoiseModel::psixy) return psixy_noise_mix(c.n, c.p, c.phi);
  return white_noise_mix(pure_state(c), c.p);
}

bool use_symmetric_backend(const RunConfig& c) { return c.n > kMaxDenseQubits && !noisy(c); }

Json header(const RunConfig& c, const char* command) {
  Json j;
  j["command"] = command;
  j["n"] = c.n;
  return j;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_dicke(const RunConfig& c, std::ostream& out) {
  Json j = header(c, "dicke");
  j["m"] = c.target_m();
  j["state"] = c.state;
  const bool csv = c.output_format() == Format::csv;
  std::ostringstream rows;
  rows << (use_symmetric_backend(c) ? "excitations" : "basis") << ",re,im\n";
  Json amps = Json::array();
  CollectiveMoments<double> mo;
  if (use_symmetric_backend(c)) {
    const auto s = symmetric_state(c);
    j["backend"] = "symmetric";
    j["dimension"] = c.n + 1;
    for (int k = 0; k <= c.n; ++k) {
      const auto a = s.sector_amplitudes()(k);
      if (std::abs(a) == 0.0) continue;
      amps.push_back(Json{{"excitations", k}, {"re", a.real()}, {"im", a.imag()}});
      rows << k << "," << format_real(a.real()) << "," << format_real(a.imag()) << "\n";
    }
    mo = collective_moments(s);
  } else {
    const auto psi = pure_state(c);
    j["backend"] = "dense";
    j["dimension"] = psi.dimension();
    for (Eigen::Index i = 0; i < psi.dimension(); ++i) {
      const auto a = psi.amplitudes()(i);
      if (std::abs(a) == 0.0) continue;
      std::string bits(static_cast<std::size_t>(c.n), '0');
      for (int q = 1; q <= c.n; ++q)
        if (static_cast<std::uint64_t>(i) & detail::qubit_mask(c.n, q)) bits[q - 1] = '1';
      amps.push_back(Json{{"basis", bits}, {"re", a.real()}, {"im", a.imag()}});
      rows << bits << "," << format_real(a.real()) << "," << format_real(a.imag()) << "\n";
    }
    mo = collective_moments(psi);
  }
  if (csv) {
    out << rows.str();
    return 0;
  }
  j["amplitudes"] = amps;
  j["mean"] = {mo.first[0], mo.first[1], mo.first[2]};
  j["second_moments"] = {mo.second[0], mo.second[1], mo.second[2]};
  emit(out, j);
  return 0;
}

void emit_verdict(const RunConfig& c, std::ostream& out, Json j, const WitnessVerdict& v) {
  if (c.output_format() == Format::csv) {
    out << "criterion,value,bound,margin,detected\n"
        << to_string(v.criterion_id) << "," << format_real(v.value) << ","
        << format_real(v.bound) << "," << format_real(v.margin) << "," << to_string(v.detected)
        << "\n";
    return;
  }
  j.update(verdict_json(v));
  emit(out, j);
}

int cmd_witness(const RunConfig& c, std::ostream& out) {
  Json j = header(c, "witness");
  j["m"] = c.target_m();
  j["state"] = c.noise == NoiseModel::psixy ? "psixy_noise_mix" : c.state;
  j["noise"] = c.noise == NoiseModel::psixy ? "psixy" : "white";
  j["p"] = c.p;
  const auto v = noisy(c) ? fidelity_witness_verdict(mixed_state(c), c.n, c.target_m(), c.tol)
                          : fidelity_witness_verdict(pure_state(c), c.n, c.target_m(), c.tol);
  emit_verdict(c, out, j, v);
  return 0;
}

int cmd_criterion(const RunConfig& c, std::ostream& out) {
  if (c.criterion == CriterionId::fidelity) return cmd_witness(c, out);
  const auto kind = criterion_kind(c.criterion, c.m_signed);
  Json j = header(c, "criterion");
  j["m"] = c.target_m();
  j["state"] = c.noise == NoiseModel::psixy ? "psixy_noise_mix" : c.state;
  j["noise"] = c.noise == NoiseModel::psixy ? "psixy" : "white";
  j["p"] = c.p;
  if (c.criterion == CriterionId::crit2) j["m_signed"] = c.m_signed;
  WitnessVerdict v;
  if (use_symmetric_backend(c)) {
    j["backend"] = "symmetric";
    v = criterion_verdict(symmetric_state(c), kind, c.tol);
  } else if (noisy(c)) {
    j["backend"] = "dense";
    v = criterion_verdict(mixed_state(c), kind, c.tol);
  } else {
    j["backend"] = "dense";
    v = criterion_verdict(pure_state(c), kind, c.tol);
  }
  emit_verdict(c, out, j, v);
  return 0;
}

QuadraticForm config_form(const RunConfig& c) {
  QuadraticForm f{c.a, c.b};
  f.validate();
  return f;
}

int cmd_bound(const RunConfig& c, std::ostream& out) {
  const auto f = config_form(c);
  Json j = header(c, "bound");
  j["a"] = {f.a[0], f.a[1], f.a[2]};
  j["b"] = {f.b[0], f.b[1], f.b[2]};
  j["value"] = lemma1_bound(f, c.n);
  j["closed_form"] = !f.has_linear_part();
  const auto best = lemma1_maximizer(f, c.n);
  j["bloch"] = {best.bloch[0], best.bloch[1], best.bloch[2]};
  emit(out, j);
  return 0;
}

struct OracleTarget {
  HermitianOperator op;
  int n;
};

OracleTarget oracle_target(const RunConfig& c) {
  if (c.target == "form") return {collective_operator(c.n, config_form(c)), c.n};
  if (c.target == "projector") {
    const auto d = dicke_state(c.n, c.target_m());
    return {HermitianOperator(d.amplitudes() * d.amplitudes().adjoint()), c.n};
  }
  if (c.target == "lemma2") return {lemma2_direction_operator(c.a), 2};
  if (c.target == "theorem3") return {theorem3_direction_operator(c.a[0], c.a[1]), 3};
  throw DomainError("unknown --target '" + c.target +
                    "' (expected form, projector, lemma2 or theorem3)");
}

Json argument_json(const OptimizationResult& r) {
  if (const auto* p = std::get_if<BlochProduct>(&r.argument)) {
    Json v = Json::array();
    for (const auto& s : p->vectors) v.push_back({s[0], s[1], s[2]});
    return Json{{"kind", "product"}, {"bloch_vectors", v}};
  }
  const auto& b = std::get<BiseparableArgument>(r.argument);
  return Json{{"kind", "biseparable"}, {"side_a", b.split.side_a()}, {"side_b", b.split.side_b()}};
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const auto t = oracle_target(c);
  Json j;
  j["command"] = c.command == Command::oracle_eigmax       ? "oracle eigmax"
                 : c.command == Command::oracle_bisep_max ? "oracle bisep-max"
                                                          : "oracle product-max";
  j["n"] = t.n;
  j["target"] = c.target;
  if (c.command == Command::oracle_eigmax) {
    j["value"] = max_eigenvalue(t.op);
    emit(out, j);
    return 0;
  }
  const auto r = c.command == Command::oracle_bisep_max
                     ? maximize_over_biseparable(t.op, t.n, c.restarts, c.seed)
                     : maximize_over_product_states(t.op, t.n, c.restarts, c.seed);
  j["value"] = r.value;
  j["restarts"] = r.restarts_used;
  j["seed"] = r.seed;
  j["argument"] = argument_json(r);
  emit(out, j);
  return 0;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  SweepOptions opt{c.noise, c.target_m(), c.m_signed, c.phi, c.tol};
  const auto rows = sweep_noise(c.n, c.criterion, c.grid.points(), opt);
  if (c.output_format() == Format::csv) {
    out << sweep_csv(rows);
    return 0;
  }
  Json j = header(c, "sweep-noise");
  j["criterion"] = std::string(to_string(c.criterion));
  j["noise"] = c.noise == NoiseModel::psixy ? "psixy" : "white";
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back(Json{{"p", r.p},
                       {"value", r.value},
                       {"bound", r.bound},
                       {"margin", r.margin},
                       {"detected", std::string(to_string(r.detected))}});
  j["rows"] = arr;
  emit(out, j);
  return 0;
}

int cmd_appendix(const RunConfig& c, std::ostream& out) {
  const auto rep = verify_appendix_inequality(c.n);
  Json j = header(c, "verify-appendix");
  j["ok"] = true;
  j["argmax"] = {rep.argmax.first, rep.argmax.second};
  j["max_value"] = static_cast<std::uint64_t>(rep.max_value);
  Json h = Json::array();
  for (auto v : rep.h_values) h.push_back(static_cast<std::uint64_t>(v));
  j["h_values"] = h;
  emit(out, j);
  return 0;
}

int cmd_superradiance(const RunConfig& c, std::ostream& out) {
  Json j = header(c, "superradiance");
  j["m"] = c.target_m();
  j["i0"] = c.i0;
  const double v = noisy(c) ? superradiance_intensity(mixed_state(c), c.i0)
                            : superradiance_intensity(symmetric_state(c), c.i0);
  j["intensity"] = v;
  emit(out, j);
  return 0;
}

int cmd_selftest(const RunConfig& c, std::ostream& out) {
  const bool json = c.format == Format::json;
  const auto results = run_acceptance_suite(json ? nullptr : &out);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back(Json{{"id", r.id},
                       {"title", r.title},
                       {"passed", r.passed},
                       {"seconds", r.seconds},
                       {"budget_seconds", r.budget_seconds},
                       {"detail", r.detail}});
  }
  if (json) emit(out, Json{{"command", "selftest"}, {"passed", all}, {"criteria", arr}});
  return all ? 0 : 3;
}

double parse_real_field(const std::string& s) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw DomainError("not a number: '" + s + "'");
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------

Format RunConfig::output_format() const {
  if (format) return *format;
  return command == Command::sweep_noise ? Format::csv : Format::json;
}

Grid Grid::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw DomainError("grid must be start:stop:steps, got '" + spec + "'");
  Grid g;
  g.start = parse_real_field(parts[0]);
  g.stop = parse_real_field(parts[1]);
  const double steps = parse_real_field(parts[2]);
  if (steps != std::floor(steps)) throw DomainError("grid steps must be an integer");
  g.steps = static_cast<int>(steps);
  g.points();
  return g;
}

std::vector<double> Grid::points() const {
  if (!(start <= stop)) throw DomainError("grid start must not exceed stop");
  if (steps < 2) throw DomainError("grid needs at least 2 steps");
  std::vector<double> p(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    p[static_cast<std::size_t>(i)] =
        i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1);
  return p;
}

CriterionKind criterion_kind(CriterionId id, int m_signed) {
  switch (id) {
    case CriterionId::theorem2: return CriterionKind::theorem2();
    case CriterionId::variance: return CriterionKind::variance();
    case CriterionId::symmetric_jz: return CriterionKind::symmetric_jz();
    case CriterionId::crit2: return CriterionKind::crit2(m_signed);
    case CriterionId::genuine3: return CriterionKind::genuine3();
    case CriterionId::genuine4: return CriterionKind::genuine4();
    case CriterionId::fidelity: break;
  }
  throw DomainError("fidelity is not a collective-spin criterion");
}

std::vector<SweepRow> sweep_noise(int n, CriterionId criterion, const std::vector<double>& grid,
                                  const SweepOptions& opt) {
  if (grid.empty()) throw DomainError("sweep_noise: empty grid");
  const int m = opt.m < 0 ? n / 2 : opt.m;
  const auto target = opt.noise == NoiseModel::white ? std::optional(dicke_state(n, m))
                                                     : std::nullopt;
  std::vector<SweepRow> rows;
  for (double p : grid) {
    const auto rho = target ? white_noise_mix(*target, p) : psixy_noise_mix(n, p, opt.phi);
    const auto v = criterion == CriterionId::fidelity
                       ? fidelity_witness_verdict(rho, n, m, opt.tol)
                       : criterion_verdict(rho, criterion_kind(criterion, opt.m_signed), opt.tol);
    rows.push_back({p, v.value, v.bound, v.margin, v.detected});
  }
  return rows;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (std::isfinite(x) && s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s = "p,value,bound,margin,detected\n";
  for (const auto& r : rows)
    s += format_real(r.p) + "," + format_real(r.value) + "," + format_real(r.bound) + "," +
         format_real(r.margin) + "," + std::string(to_string(r.detected)) + "\n";
  return s;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "p,value,bound,margin,detected")
    throw DomainError("sweep csv: missing header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string item; std::getline(ss, item, ',');) f.push_back(item);
    if (f.size() != 5) throw DomainError("sweep csv: expected 5 fields in '" + line + "'");
    const auto d = parse_detection(f[4]);
    if (!d) throw DomainError("sweep csv: unknown detection '" + f[4] + "'");
    rows.push_back({parse_real_field(f[0]), parse_real_field(f[1]), parse_real_field(f[2]),
                    parse_real_field(f[3]), *d});
  }
  return rows;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.command) {
      case Command::dicke: return cmd_dicke(c, out);
      case Command::witness: return cmd_witness(c, out);
      case Command::criterion: return cmd_criterion(c, out);
      case Command::bound: return cmd_bound(c, out);
      case Command::oracle_product_max:
      case Command::oracle_bisep_max:
      case Command::oracle_eigmax: return cmd_oracle(c, out);
      case Command::sweep_noise: return cmd_sweep(c, out);
      case Command::verify_appendix: return cmd_appendix(c, out);
      case Command::superradiance: return cmd_superradiance(c, out);
      case Command::selftest: return cmd_selftest(c, out);
    }
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dicke-state entanglement criteria, bounds and numerical checks", "dicke"};
  app.require_subcommand(1);
  RunConfig c;

  std::string criterion = "theorem2", grid, noise = "white", format;
  std::vector<double> a, b;
  std::vector<std::string> tols;
  int m = -1;

  app.add_option("--n", c.n, "number of qubits");
  app.add_option("--m", m, "excitations of the target Dicke state (default n/2)");
  app.add_option("--criterion", criterion,
                 "fidelity|theorem2|variance|symmetric_jz|crit2|genuine3|genuine4");
  app.add_option("--m-signed", c.m_signed, "crit2 parameter m");
  app.add_option("--phi", c.phi, "angle of the psixy state");
  app.add_option("--p", c.p, "noise fraction");
  app.add_option("--grid", grid, "noise grid start:stop:steps");
  app.add_option("--noise", noise, "white|psixy")->check(CLI::IsMember({"white", "psixy"}));
  app.add_option("--state", c.state, "dicke|psixy")->check(CLI::IsMember({"dicke", "psixy"}));
  app.add_option("--target", c.target, "oracle operator: form|projector|lemma2|theorem3")
      ->check(CLI::IsMember({"form", "projector", "lemma2", "theorem3"}));
  app.add_option("--a", a, "quadratic coefficients ax,ay,az")->expected(3)->delimiter(',');
  app.add_option("--b", b, "linear coefficients bx,by,bz")->expected(3)->delimiter(',');
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--restarts", c.restarts, "optimizer restarts");
  app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--i0", c.i0, "single-atom radiation rate");
  app.add_option("--tol", tols, "tolerance override key=value (repeatable)");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* s_dicke = sub("dicke", "print a Dicke or psixy state");
  auto* s_witness = sub("witness", "fidelity witness verdict");
  auto* s_criterion = sub("criterion", "collective-spin criterion verdict");
  auto* s_bound = sub("bound", "separable maximum of a quadratic form");
  auto* s_oracle = sub("oracle", "numerical maximization");
  s_oracle->require_subcommand(1);
  auto* s_pmax = s_oracle->add_subcommand("product-max", "maximum over product states");
  auto* s_bmax = s_oracle->add_subcommand("bisep-max", "maximum over biseparable states");
  auto* s_emax = s_oracle->add_subcommand("eigmax", "largest eigenvalue");
  for (auto* s : {s_pmax, s_bmax, s_emax}) s->fallthrough();
  auto* s_sweep = sub("sweep-noise", "verdicts along a noise grid");
  auto* s_appendix = sub("verify-appendix", "exact check of the binomial inequality");
  auto* s_super = sub("superradiance", "collective emission intensity");
  auto* s_self = sub("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*s_dicke) c.command = Command::dicke;
    else if (*s_witness) c.command = Command::witness;
    else if (*s_criterion) c.command = Command::criterion;
    else if (*s_bound) c.command = Command::bound;
    else if (*s_pmax) c.command = Command::oracle_product_max;
    else if (*s_bmax) c.command = Command::oracle_bisep_max;
    else if (*s_emax) c.command = Command::oracle_eigmax;
    else if (*s_sweep) c.command = Command::sweep_noise;
    else if (*s_appendix) c.command = Command::verify_appendix;
    else if (*s_super) c.command = Command::superradiance;
    else if (*s_self) c.command = Command::selftest;

    if (m >= 0) c.m = m;
    const auto id = parse_criterion_id(criterion);
    if (!id) throw DomainError("unknown --criterion '" + criterion + "'");
    c.criterion = *id;
    if (!grid.empty()) c.grid = Grid::parse(grid);
    c.noise = noise == "psixy" ? NoiseModel::psixy : NoiseModel::white;
    if (!format.empty()) c.format = format == "csv" ? Format::csv : Format::json;
    if (!a.empty()) c.a = {a[0], a[1], a[2]};
    if (!b.empty()) c.b = {b[0], b[1], b[2]};
    const std::map<std::string, double Tolerances::*> keys{
        {"norm", &Tolerances::norm},           {"hermitian", &Tolerances::hermitian},
        {"trace", &Tolerances::trace},         {"psd", &Tolerances::psd},
        {"schmidt_sum", &Tolerances::schmidt_sum}, {"symmetric_j2", &Tolerances::symmetric_j2},
        {"detection", &Tolerances::detection},
    };
    for (const auto& t : tols) {
      const auto eq = t.find('=');
      const auto it = keys.find(t.substr(0, eq));
      if (eq == std::string::npos || it == keys.end())
        throw DomainError("bad --tol '" + t + "' (expected key=value)");
      c.tol.*(it->second) = parse_real_field(t.substr(eq + 1));
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  return run(c, out, err);
}

}  // namespace dicke::cli
