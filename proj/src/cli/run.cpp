#include "condenser/cli/run.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "condenser/asymptotics/harness.hpp"
#include "condenser/fem/solver.hpp"
#include "condenser/inequality/checks.hpp"
#include "condenser/inequality/haliste.hpp"
#include "condenser/inequality/sweeps.hpp"

namespace condenser::cli {
namespace {

using inequality::InequalityReport;

struct Outcome {
  json results = json::object();
  std::vector<Table> tables;
  int exit_status = kExitOk;
  std::string status = "ok";

  void check(const std::string& name, bool passed, json detail = json::object()) {
    detail["passed"] = passed;
    results["checks"][name] = std::move(detail);
    if (!passed) {
      exit_status = std::max(exit_status, static_cast<int>(kExitViolation));
      status = "asserted check failed: " + name;
    }
  }
};

double num(const json& j, const char* key, double fallback) { return j.contains(key) ? j[key].get<double>() : fallback; }

std::vector<cplx> points(const json& j) {
  std::vector<cplx> out;
  for (const auto& p : j) out.push_back(to_cplx(p));
  return out;
}

std::vector<fem::PlateShape> shapes_for(const json& params, std::size_t plates) {
  if (!params.contains("shape")) return {};
  return std::vector<fem::PlateShape>(plates, to_shape(params["shape"]));
}

Table level_table(const fem::ModuleEstimate& est) {
  Table t{"levels", {"level", "ring_nodes", "nodes", "module"}, {}};
  for (std::size_t k = 0; k < est.history.size(); ++k)
    t.rows.push_back({k, est.ring_nodes[k], est.node_counts[k], number_or_null(est.history[k])});
  return t;
}

Table terms_table(const InequalityReport& rep) {
  Table t{"terms", {"name", "value", "source"}, {}};
  for (const auto& term : rep.terms) t.rows.push_back({term.name, number_or_null(term.value), term.source});
  return t;
}

void record(Outcome& out, const InequalityReport& rep) {
  out.results["report"] = to_json(rep);
  out.tables.push_back(terms_table(rep));
  if (rep.violated()) {
    out.exit_status = kExitViolation;
    out.status = "inequality violated: " + rep.name;
  } else if (rep.precondition_failed) {
    out.status = "precondition not met: " + rep.diagnostic;
  }
}

// --- module / reduced-module / asymptotics ---------------------------------------

std::optional<core::ReducedModuleResult> try_reduced(const core::CondenserSpec& spec, Outcome& out) {
  if (spec.numeric_field) return std::nullopt;
  try {
    auto red = core::reduced_module(spec);
    out.results["reduced_module"] = to_json(red);
    return red;
  } catch (const Error& e) {
    out.results["reduced_module_note"] = std::string(to_string(e.kind())) + ": " + e.what();
    return std::nullopt;
  }
}

Outcome run_module(const RunConfig& c) {
  Outcome out;
  const auto spec = to_spec(c.params);
  const double r = c.params["r"].get<double>();
  const auto est = fem::condenser_module_numeric(spec, r, c.solver, shapes_for(c.params, spec.plates.size()));
  out.results["module"] = to_json(est);
  out.tables.push_back(level_table(est));
  if (const auto red = try_reduced(spec, out))
    out.results["asymptotic_prediction"] = red->value - red->nu / (2.0 * kPi) * std::log(r);
  return out;
}

Outcome run_reduced(const RunConfig& c) {
  Outcome out;
  const auto red = core::reduced_module(to_spec(c.params));
  out.results["reduced_module"] = to_json(red);
  Table t{"terms", {"kind", "l", "j", "value"}, {}};
  for (std::size_t l = 0; l < red.diagonal_terms.size(); ++l)
    t.rows.push_back({"diagonal", l, l, number_or_null(red.diagonal_terms[l])});
  for (const auto& x : red.cross_terms) t.rows.push_back({"cross", x.l, x.j, number_or_null(x.value)});
  out.tables.push_back(std::move(t));
  return out;
}

std::size_t usable(const std::vector<asymptotics::AsymptoticRow>& rows) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.failed ? 0 : 1;
  return n;
}

json row_notes(const std::vector<asymptotics::AsymptoticRow>& rows) {
  json notes = json::object();
  for (const auto& r : rows)
    if (!r.note.empty()) notes[format_number(r.r)] = r.note;
  return notes;
}

Outcome run_asymptotics(const RunConfig& c) {
  Outcome out;
  const auto spec = to_spec(c.params);
  const auto r_list = c.params["r_list"].get<std::vector<double>>();
  const double limit_tol = num(c.params, "limit_tolerance", 2e-2);

  std::vector<asymptotics::AsymptoticRow> rows;
  if (c.params.contains("shape") && to_shape(c.params["shape"]).kind != fem::PlateShape::Kind::Circle) {
    const auto rob = asymptotics::plate_shape_robustness(spec, r_list, to_shape(c.params["shape"]), c.solver);
    rows = rob.circular_rows;
    out.tables.push_back(to_table(rob.shaped_rows, "asymptotics_shaped"));
    out.results["shaped_limit"] = to_json(rob.shaped);
    out.results["shape"] = rob.shape.describe();
    out.results["shaped_row_notes"] = row_notes(rob.shaped_rows);
    out.check("plate_shape_robustness", rob.agree,
              {{"difference", rob.difference}, {"allowed", rob.allowed}});
  } else {
    rows = asymptotics::asymptotic_table(spec, r_list, c.solver);
  }
  out.tables.insert(out.tables.begin(), to_table(rows));
  out.results["row_notes"] = row_notes(rows);
  require(usable(rows) >= 3, ErrorKind::NumericFailure, "fewer than 3 rows of the table could be computed");

  const auto limit = asymptotics::extrapolate_limit(rows);
  out.results["limit"] = to_json(limit);
  const double nu = core::nu_total(spec.deltas(), spec.laws());
  const auto slope = asymptotics::slope_check(rows, nu);
  out.results["slope"] = to_json(slope);
  out.check("slope", slope.passed, {{"relative_error", slope.relative_error}, {"tolerance", 0.05}});
  if (const auto red = try_reduced(spec, out)) {
    const double diff = std::abs(limit.intercept - red->value);
    out.check("limit", diff <= limit_tol + limit.half_width,
              {{"difference", diff}, {"allowed", limit_tol + limit.half_width}, {"reduced_module", red->value}});
  }
  return out;
}

// --- inequality ----------------------------------------------------------------------

inequality::RadialConfig radial_config(const json& p) {
  using inequality::RadialConfig;
  if (p.contains("roots_of_unity"))
    return RadialConfig::one_per_ray(std::vector<double>(p["roots_of_unity"].get<std::size_t>(), 1.0));
  if (p.contains("moduli")) return RadialConfig::one_per_ray(p["moduli"].get<std::vector<double>>());
  if (p.contains("first") || p.contains("second")) {
    require(p.contains("first") && p.contains("second"), ErrorKind::InvalidInput, "give both \"first\" and \"second\"");
    return RadialConfig::two_per_ray(p["first"].get<std::vector<double>>(), p["second"].get<std::vector<double>>());
  }
  require(p.contains("rays"), ErrorKind::InvalidInput, "give roots_of_unity, moduli, first/second or rays");
  const auto rays = p["rays"].get<std::vector<std::vector<double>>>();
  RadialConfig cfg;
  cfg.n = static_cast<int>(rays.size());
  for (std::size_t k = 0; k < rays.size(); ++k) {
    const cplx dir = std::polar(1.0, 2.0 * kPi * static_cast<double>(k + 1) / cfg.n);
    std::vector<cplx> pts;
    for (double m : rays[k]) pts.push_back(m * dir);
    cfg.points.push_back(std::move(pts));
    cfg.deltas.push_back(p.contains("deltas") ? p["deltas"][k].get<std::vector<double>>()
                                              : std::vector<double>(rays[k].size(), 1.0));
  }
  return cfg;
}

std::vector<analytic::CanonicalDomain> domains(const json& j) {
  std::vector<analytic::CanonicalDomain> out;
  for (const auto& d : j) out.push_back(to_domain(d));
  return out;
}

inequality::PairConfig pair_config(const json& p) {
  require(p.contains("z") && p.contains("zeta"), ErrorKind::InvalidInput, "give \"z\" and \"zeta\"");
  return {domains(p["domains"]), points(p["z"]), points(p["zeta"])};
}

Outcome run_inequality(const RunConfig& c) {
  using namespace inequality;
  Outcome out;
  const auto& p = c.params;
  const std::string& name = c.name;
  if (name == "eq11" || name == "thm3" || name == "two_per_ray" || name == "strengthened") {
    const RadialMode mode = name == "eq11"          ? RadialMode::Eq11
                            : name == "thm3"        ? RadialMode::Thm3
                            : name == "two_per_ray" ? RadialMode::TwoPerRay
                                                    : RadialMode::Strengthened;
    record(out, check_radial(radial_config(p), mode));
  } else if (name == "schur" || name == "circle_pair") {
    const double r = num(p, "r", 1.0);
    std::vector<cplx> z;
    for (double t : p["angles"].get<std::vector<double>>()) z.push_back(std::polar(r, t));
    if (name == "schur")
      record(out, check_circle_pair(z, 2.0, 1.0, 0.0));
    else
      record(out, check_circle_pair(z, p["ratio"].get<double>(), num(p, "alpha", 1.0), num(p, "beta", 0.0)));
  } else if (name == "thm4") {
    if (p.value("extremal", false)) {
      record(out, check_thm4(Thm4Config::extremal(p["n"].get<int>(), num(p, "R", 1.0))));
    } else {
      require(p.contains("d0") && p.contains("points"), ErrorKind::InvalidInput, "give \"d0\" and \"points\"");
      const auto pts = points(p["points"]);
      record(out, check_thm4({static_cast<int>(pts.size()), to_domain(p["d0"]), domains(p["domains"]), pts}));
    }
  } else if (name == "thm5") {
    record(out, check_thm5(p.value("extremal", false)
                               ? PairConfig::thm5_extremal(p["n"].get<int>(), num(p, "r", 1.0), num(p, "R", 2.0))
                               : pair_config(p)));
  } else if (name == "thm6") {
    record(out, check_thm6(p.value("extremal", false) ? PairConfig::thm6_extremal(p["n"].get<int>(), num(p, "r", 1.0))
                                                      : pair_config(p)));
  } else if (name == "thm7") {
    const auto& f = p["function"];
    const auto fn = f["type"] == "identity"
                        ? analytic::AnalyticFunction::identity()
                        : analytic::AnalyticFunction::mobius(
                              {to_cplx(f["a"]), to_cplx(f["b"]), to_cplx(f["c"]), to_cplx(f["d"])});
    const auto& cl = p["closure"];
    const double size = cl["size"].get<double>();
    const auto closure = cl["type"] == "segment" ? analytic::CompactSet::segment(size) : analytic::CompactSet::closed_disk(size);
    record(out, check_thm7(fn, closure, to_cplx(p["w0"]), points(p["points"])));
  } else if (name == "thm8") {
    auto fs = thm8_extremals(p["n"].get<int>());
    if (p.contains("rotation") || p.contains("automorphism") || p.contains("scale")) {
      const auto g = analytic::MobiusMap::disk_automorphism(cplx(0.0, num(p, "automorphism", 0.0)))
                         .compose(analytic::MobiusMap::scaling(std::polar(num(p, "scale", 1.0), num(p, "rotation", 0.0))));
      for (auto& f : fs) f = f.precompose(g);
    }
    const auto mode = p.value("mode", "schwarzian") == "k_functional" ? Thm8Mode::KFunctional : Thm8Mode::Schwarzian;
    const std::string src = p.value("source", "auto");
    const auto source = src == "exact" ? DerivativeSource::Exact
                        : src == "numeric" ? DerivativeSource::Numeric
                                           : DerivativeSource::Auto;
    record(out, check_thm8(fs, mode, source));
  } else if (name == "nehari") {
    const auto larger = to_spec(p["larger"]);
    record(out, check_nehari(to_spec(p["smaller"]), &larger, NehariMode::General));
  } else if (name == "goluzin") {
    record(out, check_nehari(to_spec(p["smaller"]), nullptr, NehariMode::Goluzin));
  } else if (name == "lemma2") {
    const bool numeric = p.value("numeric", false);
    const auto res = lemma2_decompose(to_domain(p["domain"]), to_cplx(p["z1"]), to_cplx(p["z2"]),
                                      numeric ? &c.solver : nullptr);
    out.results["log_product"] = res.log_product;
    out.results["product"] = res.product;
    if (res.numeric_r1 && res.numeric_r2) {
      const double prod = *res.numeric_r1 * *res.numeric_r2;
      const double allowed = 3.0 * res.numeric_error.value_or(0.0) + 1e-2 * res.product;
      out.results["numeric_r1"] = *res.numeric_r1;
      out.results["numeric_r2"] = *res.numeric_r2;
      out.results["numeric_error"] = number_or_null(res.numeric_error.value_or(0.0));
      out.check("numeric_decomposition", std::abs(prod - res.product) <= allowed,
                {{"numeric_product", prod}, {"allowed", allowed}});
    }
  } else if (name == "k_functional") {
    const auto rho = p.contains("rho") ? p["rho"].get<std::vector<double>>() : std::vector<double>{0.04, 0.02, 0.01};
    const auto k = k_functional(to_domain(p["domain"]), to_cplx(p["w"]), rho);
    out.results["k"] = {{"value", k.value}, {"exponent", k.exponent}, {"rho", k.rho}, {"bracket", k.bracket}};
    Table t{"bracket", {"rho", "bracket"}, {}};
    for (std::size_t i = 0; i < k.rho.size(); ++i) t.rows.push_back({k.rho[i], number_or_null(k.bracket[i])});
    out.tables.push_back(std::move(t));
  } else {
    fail(ErrorKind::InvalidInput, "unknown inequality " + name);
  }
  return out;
}

// --- haliste -----------------------------------------------------------------------

int conjecture_sign(const InequalityReport& r) {
  if (std::abs(r.margin) <= r.tolerance) return 0;
  return r.margin > 0 ? 1 : -1;
}

Outcome run_haliste(const RunConfig& c) {
  Outcome out;
  const auto& p = c.params;
  const auto k_set = to_intervals(p["k"]);
  const auto r_list = p["r_list"].get<std::vector<double>>();

  std::vector<std::pair<double, std::vector<double>>> configs;  // perturbation, angles
  if (p.contains("directions")) {
    configs.push_back({0.0, p["directions"].get<std::vector<double>>()});
  } else {
    const int n = p["n"].get<int>();
    const auto perts = p.contains("perturbations") ? p["perturbations"].get<std::vector<double>>() : std::vector<double>{0.0};
    for (double t : perts) {
      std::vector<double> angles;
      for (int k = 0; k < n; ++k) angles.push_back(2.0 * kPi * k / n + (k == n - 1 ? t : 0.0));
      configs.push_back({t, angles});
    }
  }

  Table t{"haliste",
          {"perturbation", "r", "single_sym", "single_given", "double_sym", "double_given", "inner_sym", "inner_given",
           "double_holds", "inner_holds", "conjecture_sign", "low_accuracy", "failed"},
          {}};
  json runs = json::array();
  bool any_failed = false;
  bool all_hold = true;
  for (const auto& [pert, angles] : configs) {
    std::vector<cplx> a;
    for (double th : angles) a.push_back(std::polar(1.0, th));
    const auto rep = inequality::haliste_explore(a, k_set, r_list, c.solver);
    json rows = json::array();
    for (const auto& row : rep.rows) {
      any_failed = any_failed || row.failed;
      const bool low = row.symmetric.low_accuracy || row.given.low_accuracy;
      if (row.failed) {
        t.rows.push_back({pert, row.r, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, low, true});
        rows.push_back({{"r", row.r}, {"failed", true}, {"note", row.note}});
        continue;
      }
      t.rows.push_back({pert, row.r, row.symmetric.single, row.given.single, row.symmetric.double_integral,
                        row.given.double_integral, row.symmetric.inner_radius, row.given.inner_radius,
                        !row.double_report.violated(), !row.inner_report.violated(), conjecture_sign(row.conjecture), low,
                        false});
      rows.push_back({{"r", row.r},
                      {"double_integral", to_json(row.double_report)},
                      {"inner_radius", to_json(row.inner_report)},
                      {"single_integral_conjecture", to_json(row.conjecture)},
                      {"note", row.note}});
    }
    all_hold = all_hold && rep.asserted_hold();
    runs.push_back({{"perturbation", pert}, {"direction_angles", angles}, {"rows", rows}});
  }
  out.results["runs"] = runs;
  out.tables.push_back(std::move(t));
  if (any_failed) {
    out.exit_status = kExitNumeric;
    out.status = "solver failure on some rows";
  } else {
    out.check("asserted_inequalities", all_hold);
  }
  return out;
}

// --- calibrate -----------------------------------------------------------------------

Outcome run_calibrate(const RunConfig& c) {
  Outcome out;
  const auto& p = c.params;
  if (p.value("kind", "ring") == "ring") {
    const double r = num(p, "r", 0.1);
    const auto spec = core::CondenserSpec::single(analytic::CanonicalDomain::disk(0.0, 1.0),
                                                  {core::PlateSpec{analytic::SpherePoint(0.0), 1.0, {1.0, 1.0}}});
    const auto est = fem::condenser_module_numeric(spec, r, c.solver);
    const double exact = std::log(1.0 / r) / (2.0 * kPi);
    const double rel = std::abs(est.value - exact) / exact;
    out.results["module"] = to_json(est);
    out.results["exact"] = exact;
    out.tables.push_back(level_table(est));
    out.check("ring_module", rel <= 1e-3, {{"relative_error", rel}, {"tolerance", 1e-3}});
    return out;
  }
  const cplx pole = p.contains("pole") ? to_cplx(p["pole"]) : cplx(0.3, 0.2);
  const int samples = p.value("samples", 100);
  require(std::abs(pole) < 0.9, ErrorKind::InvalidInput, "the pole must satisfy |pole| < 0.9");
  const auto disk = analytic::CanonicalDomain::disk(0.0, 1.0);
  const auto field = fem::numeric_green(fem::NumericDomain::unit_disk(), pole, c.solver);
  Table t{"green", {"x", "y", "numeric", "exact", "error"}, {}};
  double worst = 0.0;
  // Sunflower points in |z| <= 0.95, skipping the pole's immediate neighbourhood.
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0, taken = 0; taken < samples; ++i) {
    const cplx z = std::polar(0.95 * std::sqrt((i + 0.5) / (samples + 8)), i * golden);
    if (std::abs(z - pole) < 0.05) continue;
    ++taken;
    const double g = field(z);
    const double e = analytic::green(disk, z, pole);
    worst = std::max(worst, std::abs(g - e));
    t.rows.push_back({z.real(), z.imag(), g, e, std::abs(g - e)});
  }
  out.tables.push_back(std::move(t));
  const auto inner = fem::numeric_inner_radius(fem::NumericDomain::unit_disk(), pole, c.solver);
  const double inner_exact = 1.0 - std::norm(pole);
  out.results["inner_radius"] = {{"numeric", inner.value}, {"exact", inner_exact}, {"error_estimate", inner.error_estimate}};
  out.check("green_max_error", worst <= 1e-3, {{"max_error", worst}, {"tolerance", 1e-3}});
  out.check("inner_radius", std::abs(inner.value - inner_exact) <= 1e-3,
            {{"error", std::abs(inner.value - inner_exact)}, {"tolerance", 1e-3}});
  return out;
}

// --- sweep -----------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Outcome run_sweep(const RunConfig& c) {
  Outcome out;
  const auto& all = inequality::sweep_checks();
  auto checks = c.params.contains("checks") ? c.params["checks"].get<std::vector<std::string>>() : all;
  std::sort(checks.begin(), checks.end());
  checks.erase(std::unique(checks.begin(), checks.end()), checks.end());
  const int trials = c.params.value("trials", 200);
  Table t{"sweep", {"check", "seed", "trials", "violations", "skipped", "min_margin", "min_relative_margin"}, {}};
  int violations = 0;
  for (const auto& name : checks) {
    const auto idx = static_cast<std::uint64_t>(std::find(all.begin(), all.end(), name) - all.begin());
    const auto s = inequality::random_sweep(name, splitmix64(c.seed ^ (idx << 32)), trials);
    violations += s.violations;
    out.results["sweeps"][name] = to_json(s);
    t.rows.push_back({s.check, s.seed, s.trials, s.violations, s.skipped, number_or_null(s.min_margin),
                      number_or_null(s.min_relative_margin)});
  }
  out.tables.push_back(std::move(t));
  out.check("no_violations", violations == 0, {{"violations", violations}});
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunReport skeleton(const json& config) {
  RunReport r;
  r.tool_version = tool_version();
  r.convention_version = inequality::kConventionVersion;
  r.config = config;
  r.config_hash = config_hash(config);
  r.timestamp = {{"started_utc", utc_now()}};
  return r;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NumericFailure:
      return kExitNumeric;
    case ErrorKind::Io:
      return kExitIo;
    default:
      return kExitInvalid;
  }
}

RunReport run(const RunConfig& config) {
  RunReport report = skeleton(config.source);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome out;
    if (config.command == "module") out = run_module(config);
    else if (config.command == "reduced-module") out = run_reduced(config);
    else if (config.command == "asymptotics") out = run_asymptotics(config);
    else if (config.command == "inequality") out = run_inequality(config);
    else if (config.command == "haliste") out = run_haliste(config);
    else if (config.command == "calibrate") out = run_calibrate(config);
    else if (config.command == "sweep") out = run_sweep(config);
    else fail(ErrorKind::InvalidInput, "unknown command " + config.command);
    report.results = std::move(out.results);
    report.tables = std::move(out.tables);
    report.exit_status = out.exit_status;
    report.status = out.status;
  } catch (const ConfigError& e) {
    report.results = {{"error", {{"kind", "invalid-config"}, {"diagnostics", diagnostics_json(e.diagnostics())}}}};
    report.exit_status = kExitInvalid;
    report.status = e.what();
  } catch (const Error& e) {
    report.results = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    report.exit_status = exit_code_for(e.kind());
    report.status = e.what();
  }
  report.timestamp["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

RunReport run_json(const json& config) {
  try {
    return run(parse_config(config));
  } catch (const ConfigError& e) {
    RunReport report = skeleton(config);
    report.results = {{"error", {{"kind", "invalid-config"}, {"diagnostics", diagnostics_json(e.diagnostics())}}}};
    report.exit_status = kExitInvalid;
    report.status = e.what();
    return report;
  }
}

}  // namespace condenser::cli
