#include "condenser/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "condenser/inequality/sweeps.hpp"

namespace condenser::cli {
namespace {

enum class Ty {
  Number,
  Positive,
  NonNegative,
  Unit01,  // open interval (0, 1)
  NonZero,
  Int0,
  Int1,
  UInt64,
  Bool,
  String,
  Point,
  FinitePoint,
  Points,
  Numbers,
  PositiveNumbers,
  PositiveNumberRows,
  NumberRows,
  Strings,
  Domain,
  Domains,
  Plates,
  Intervals,
  Shape,
  Mobius,
  Function,
  Closure,
  Spec,
  Solver,
  Output,
  Object,
};

struct Field {
  std::string key;
  Ty type;
  bool required = false;
  std::vector<std::string> allowed = {};  // enum for String / Strings
};

using Fields = std::vector<Field>;

class Checker {
 public:
  std::vector<Diagnostic> diags;

  void error(const std::string& path, const std::string& msg) { diags.push_back({path, msg}); }

  bool object(const json& j, const std::string& path, const Fields& fields) {
    if (!j.is_object()) {
      error(path, "must be an object");
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      const Field* f = find(fields, key);
      if (!f) {
        error(path + "/" + key, "unknown field");
        continue;
      }
      value_of(value, path + "/" + key, *f);
    }
    for (const auto& f : fields)
      if (f.required && !j.contains(f.key)) error(path + "/" + f.key, "required field missing");
    return true;
  }

  void value_of(const json& v, const std::string& path, const Field& f);

 private:
  static const Field* find(const Fields& fields, const std::string& key) {
    for (const auto& f : fields)
      if (f.key == key) return &f;
    return nullptr;
  }

  bool number(const json& v, const std::string& path) {
    if (!v.is_number()) {
      error(path, "must be a number");
      return false;
    }
    if (!std::isfinite(v.get<double>())) {
      error(path, "must be finite");
      return false;
    }
    return true;
  }

  void finite_point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) {
      error(path, "must be a point [x, y]");
      return;
    }
    number(v[0], path + "/0");
    number(v[1], path + "/1");
  }

  void domain(const json& v, const std::string& path);
  void plates(const json& v, const std::string& path);
};

const std::map<std::string, Fields>& domain_fields() {
  static const std::map<std::string, Fields> m = {
      {"disk", {{"center", Ty::FinitePoint, true}, {"radius", Ty::Positive, true}}},
      {"exterior_disk", {{"center", Ty::FinitePoint, true}, {"radius", Ty::Positive, true}}},
      {"half_plane", {{"point", Ty::FinitePoint, true}, {"normal", Ty::FinitePoint, true}}},
      {"sector", {{"vertex", Ty::FinitePoint, true}, {"bisector_angle", Ty::Number, true}, {"opening", Ty::Positive, true}}},
      {"power_preimage", {{"threshold", Ty::Positive, true}, {"order", Ty::Int1, true}, {"petal", Ty::Int0}}},
      {"mobius_image", {{"base", Ty::Domain, true}, {"map", Ty::Mobius, true}}},
      {"power_image", {{"base", Ty::Domain, true}, {"exponent", Ty::Positive, true}, {"rotation_angle", Ty::Number}}},
      {"numeric_disk", {{"center", Ty::FinitePoint, true}, {"radius", Ty::Positive, true}, {"slits", Ty::NumberRows}}},
      {"slit_disk", {{"directions", Ty::Numbers, true}, {"k", Ty::Intervals, true}}},
  };
  return m;
}

void Checker::domain(const json& v, const std::string& path) {
  if (!v.is_object() || !v.contains("type") || !v["type"].is_string()) {
    error(path, "domain must be an object with a string \"type\"");
    return;
  }
  const auto& table = domain_fields();
  const auto it = table.find(v["type"].get<std::string>());
  if (it == table.end()) {
    error(path + "/type", "unknown domain type");
    return;
  }
  Fields fields = it->second;
  fields.push_back({"type", Ty::String, true});
  object(v, path, fields);
  if (v.contains("opening") && v["opening"].is_number() && v["opening"].get<double>() > 2.0 * kPi + 1e-12)
    error(path + "/opening", "must be at most 2 pi");
  if (v.contains("slits") && v["slits"].is_array())
    for (std::size_t k = 0; k < v["slits"].size(); ++k)
      if (v["slits"][k].size() != 4) error(path + "/slits/" + std::to_string(k), "slit must be [x0, y0, x1, y1]");
}

void Checker::plates(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) {
    error(path, "must be a non-empty array of plates");
    return;
  }
  const Fields fields = {{"center", Ty::Point, true},
                         {"delta", Ty::NonZero},
                         {"mu", Ty::Positive},
                         {"exponent", Ty::Positive},
                         {"component", Ty::Int0}};
  for (std::size_t k = 0; k < v.size(); ++k) object(v[k], path + "/" + std::to_string(k), fields);
}

const Fields& solver_fields() {
  static const Fields f = {{"target_relative_error", Ty::Positive}, {"min_levels", Ty::Int1},
                           {"max_levels", Ty::Int1},            {"base_ring_nodes", Ty::Int1},
                           {"linear_tolerance", Ty::Positive},  {"quadrature_nodes", Ty::Int1},
                           {"far_field_size", Ty::Positive},    {"max_cg_iterations", Ty::Int1}};
  return f;
}

const Fields& spec_fields() {
  static const Fields f = {{"domain", Ty::Domain}, {"components", Ty::Domains}, {"plates", Ty::Plates, true}};
  return f;
}

void Checker::value_of(const json& v, const std::string& path, const Field& f) {
  switch (f.type) {
    case Ty::Number:
      number(v, path);
      break;
    case Ty::Positive:
      if (number(v, path) && !(v.get<double>() > 0.0)) error(path, "must be > 0");
      break;
    case Ty::NonNegative:
      if (number(v, path) && v.get<double>() < 0.0) error(path, "must be >= 0");
      break;
    case Ty::Unit01:
      if (number(v, path) && !(v.get<double>() > 0.0 && v.get<double>() < 1.0)) error(path, "must lie in (0, 1)");
      break;
    case Ty::NonZero:
      if (number(v, path) && v.get<double>() == 0.0) error(path, "must be nonzero");
      break;
    case Ty::Int0:
    case Ty::Int1:
      if (!v.is_number_integer()) {
        error(path, "must be an integer");
      } else if (v.get<long long>() < (f.type == Ty::Int1 ? 1 : 0)) {
        error(path, f.type == Ty::Int1 ? "must be >= 1" : "must be >= 0");
      }
      break;
    case Ty::UInt64:
      if (!v.is_number_unsigned()) error(path, "must be a non-negative integer");
      break;
    case Ty::Bool:
      if (!v.is_boolean()) error(path, "must be a boolean");
      break;
    case Ty::String:
      if (!v.is_string()) {
        error(path, "must be a string");
      } else if (!f.allowed.empty() &&
                 std::find(f.allowed.begin(), f.allowed.end(), v.get<std::string>()) == f.allowed.end()) {
        error(path, "unknown value \"" + v.get<std::string>() + "\"");
      }
      break;
    case Ty::Strings:
      if (!v.is_array()) {
        error(path, "must be an array of strings");
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k) value_of(v[k], path + "/" + std::to_string(k), {f.key, Ty::String, false, f.allowed});
      break;
    case Ty::Point:
      if (v.is_string()) {
        if (v.get<std::string>() != "inf") error(path, "the only string point is \"inf\"");
      } else {
        finite_point(v, path);
      }
      break;
    case Ty::FinitePoint:
      finite_point(v, path);
      break;
    case Ty::Points:
      if (!v.is_array() || v.empty()) {
        error(path, "must be a non-empty array of points");
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k) finite_point(v[k], path + "/" + std::to_string(k));
      break;
    case Ty::Numbers:
    case Ty::PositiveNumbers:
      if (!v.is_array() || v.empty()) {
        error(path, "must be a non-empty array of numbers");
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k)
        value_of(v[k], path + "/" + std::to_string(k), {f.key, f.type == Ty::Numbers ? Ty::Number : Ty::Positive});
      break;
    case Ty::NumberRows:
    case Ty::PositiveNumberRows:
      if (!v.is_array()) {
        error(path, "must be an array of arrays");
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k)
        value_of(v[k], path + "/" + std::to_string(k),
                 {f.key, f.type == Ty::NumberRows ? Ty::Numbers : Ty::PositiveNumbers});
      break;
    case Ty::Intervals:
      if (!v.is_array() || v.empty()) {
        error(path, "must be a non-empty array of [lo, hi] intervals");
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string p = path + "/" + std::to_string(k);
        if (!v[k].is_array() || v[k].size() != 2 || !v[k][0].is_number() || !v[k][1].is_number()) {
          error(p, "must be [lo, hi]");
          continue;
        }
        const double lo = v[k][0].get<double>(), hi = v[k][1].get<double>();
        if (!(lo > 0.0 && lo <= hi && hi <= 1.0)) error(p, "interval must satisfy 0 < lo <= hi <= 1");
      }
      break;
    case Ty::Domain:
      domain(v, path);
      break;
    case Ty::Domains:
      if (!v.is_array() || v.empty()) {
        error(path, "must be a non-empty array of domains");
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k) domain(v[k], path + "/" + std::to_string(k));
      break;
    case Ty::Plates:
      plates(v, path);
      break;
    case Ty::Shape:
      object(v, path,
             {{"kind", Ty::String, true, {"circle", "square", "ellipse"}},
              {"kappa", Ty::NonNegative},
              {"fixed_excess", Ty::Bool}});
      break;
    case Ty::Mobius:
      object(v, path,
             {{"a", Ty::FinitePoint, true}, {"b", Ty::FinitePoint, true}, {"c", Ty::FinitePoint, true}, {"d", Ty::FinitePoint, true}});
      break;
    case Ty::Function:
      if (object(v, path,
                 {{"type", Ty::String, true, {"identity", "mobius"}},
                  {"a", Ty::FinitePoint},
                  {"b", Ty::FinitePoint},
                  {"c", Ty::FinitePoint},
                  {"d", Ty::FinitePoint}}) &&
          v.value("type", "") == "mobius")
        for (const char* k : {"a", "b", "c", "d"})
          if (!v.contains(k)) error(path + "/" + k, "required for a mobius function");
      break;
    case Ty::Closure:
      object(v, path, {{"type", Ty::String, true, {"closed_disk", "segment"}}, {"size", Ty::Positive, true}});
      break;
    case Ty::Spec:
      if (object(v, path, spec_fields()) && v.contains("domain") == v.contains("components"))
        error(path, "give exactly one of \"domain\" and \"components\"");
      break;
    case Ty::Solver:
      object(v, path, solver_fields());
      break;
    case Ty::Output:
      object(v, path, {{"dir", Ty::String}, {"formats", Ty::Strings, false, {"json", "csv"}}});
      break;
    case Ty::Object:
      if (!v.is_object()) error(path, "must be an object");
      break;
  }
}

const std::map<std::string, Fields>& inequality_params() {
  static const std::map<std::string, Fields> m = {
      {"eq11", {{"roots_of_unity", Ty::Int1}, {"moduli", Ty::PositiveNumbers}}},
      {"strengthened", {{"roots_of_unity", Ty::Int1}, {"moduli", Ty::PositiveNumbers}}},
      {"thm3",
       {{"roots_of_unity", Ty::Int1},
        {"moduli", Ty::PositiveNumbers},
        {"first", Ty::PositiveNumbers},
        {"second", Ty::PositiveNumbers},
        {"rays", Ty::PositiveNumberRows},
        {"deltas", Ty::NumberRows}}},
      {"two_per_ray", {{"first", Ty::PositiveNumbers, true}, {"second", Ty::PositiveNumbers, true}}},
      {"schur", {{"angles", Ty::Numbers, true}}},
      {"circle_pair",
       {{"angles", Ty::Numbers, true}, {"r", Ty::Positive}, {"ratio", Ty::Positive, true}, {"alpha", Ty::Number}, {"beta", Ty::Number}}},
      {"thm4",
       {{"extremal", Ty::Bool}, {"n", Ty::Int1}, {"R", Ty::Positive}, {"d0", Ty::Domain}, {"domains", Ty::Domains}, {"points", Ty::Points}}},
      {"thm5",
       {{"extremal", Ty::Bool}, {"n", Ty::Int1}, {"r", Ty::Positive}, {"R", Ty::Positive}, {"domains", Ty::Domains}, {"z", Ty::Points}, {"zeta", Ty::Points}}},
      {"thm6",
       {{"extremal", Ty::Bool}, {"n", Ty::Int1}, {"r", Ty::Positive}, {"domains", Ty::Domains}, {"z", Ty::Points}, {"zeta", Ty::Points}}},
      {"thm7",
       {{"function", Ty::Function, true}, {"closure", Ty::Closure, true}, {"w0", Ty::FinitePoint, true}, {"points", Ty::Points, true}}},
      {"thm8",
       {{"n", Ty::Int1, true},
        {"mode", Ty::String, false, {"schwarzian", "k_functional"}},
        {"source", Ty::String, false, {"auto", "exact", "numeric"}},
        {"rotation", Ty::Number},
        {"automorphism", Ty::Number},
        {"scale", Ty::Positive}}},
      {"nehari", {{"smaller", Ty::Spec, true}, {"larger", Ty::Spec, true}}},
      {"goluzin", {{"smaller", Ty::Spec, true}}},
      {"lemma2", {{"domain", Ty::Domain, true}, {"z1", Ty::FinitePoint, true}, {"z2", Ty::FinitePoint, true}, {"numeric", Ty::Bool}}},
      {"k_functional", {{"domain", Ty::Domain, true}, {"w", Ty::FinitePoint, true}, {"rho", Ty::PositiveNumbers}}},
  };
  return m;
}

Fields command_params(const std::string& command) {
  Fields spec = spec_fields();
  spec[2].required = true;
  if (command == "module") {
    spec.push_back({"r", Ty::Unit01, true});
    spec.push_back({"shape", Ty::Shape});
    return spec;
  }
  if (command == "reduced-module") return spec;
  if (command == "asymptotics") {
    spec.push_back({"r_list", Ty::PositiveNumbers, true});
    spec.push_back({"shape", Ty::Shape});
    spec.push_back({"limit_tolerance", Ty::Positive});
    return spec;
  }
  if (command == "haliste")
    return {{"directions", Ty::Numbers},
            {"n", Ty::Int1},
            {"perturbations", Ty::Numbers},
            {"k", Ty::Intervals, true},
            {"r_list", Ty::PositiveNumbers, true}};
  if (command == "calibrate")
    return {{"kind", Ty::String, false, {"ring", "disk-green"}}, {"r", Ty::Unit01}, {"pole", Ty::FinitePoint}, {"samples", Ty::Int1}};
  if (command == "sweep") return {{"checks", Ty::Strings, false, inequality::sweep_checks()}, {"trials", Ty::Int1}};
  return {};
}

double num(const json& j, const char* key, double fallback) { return j.contains(key) ? j[key].get<double>() : fallback; }

}  // namespace

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorKind::InvalidInput,
            diagnostics.empty() ? std::string("invalid config")
                                : diagnostics.front().path + ": " + diagnostics.front().message),
      diagnostics_(std::move(diagnostics)) {}

json diagnostics_json(const std::vector<Diagnostic>& diagnostics) {
  json out = json::array();
  for (const auto& d : diagnostics) out.push_back({{"path", d.path}, {"message", d.message}});
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"module", "reduced-module", "asymptotics", "inequality",
                                                 "haliste", "calibrate", "sweep"};
  return names;
}

const std::vector<std::string>& inequality_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : inequality_params()) v.push_back(k);
    return v;
  }();
  return names;
}

std::vector<Diagnostic> validate_config(const json& config) {
  Checker c;
  const Fields top = {{"schema_version", Ty::Int1, true},
                      {"command", Ty::String, true, command_names()},
                      {"name", Ty::String, false, inequality_names()},
                      {"description", Ty::String},
                      {"params", Ty::Object},
                      {"solver", Ty::Solver},
                      {"seed", Ty::UInt64},
                      {"output", Ty::Output}};
  if (!c.object(config, "", top)) return c.diags;
  if (config.contains("schema_version") && config["schema_version"].is_number_integer() &&
      config["schema_version"].get<long long>() != kConfigSchemaVersion)
    c.error("/schema_version", "unsupported schema version (expected " + std::to_string(kConfigSchemaVersion) + ")");
  if (!c.diags.empty() || !config.contains("command")) return c.diags;

  const auto command = config["command"].get<std::string>();
  const json params = config.value("params", json::object());
  Fields fields;
  if (command == "inequality") {
    if (!config.contains("name")) {
      c.error("/name", "required for the inequality command");
      return c.diags;
    }
    fields = inequality_params().at(config["name"].get<std::string>());
  } else {
    if (config.contains("name")) c.error("/name", "only the inequality command takes a name");
    fields = command_params(command);
  }
  c.object(params, "/params", fields);
  if (!c.diags.empty()) return c.diags;

  // Cross-field rules that a flat field table cannot express.
  const bool spec_like = command == "module" || command == "reduced-module" || command == "asymptotics";
  if (spec_like && params.contains("domain") == params.contains("components"))
    c.error("/params", "give exactly one of \"domain\" and \"components\"");
  if (command == "haliste" && params.contains("directions") == params.contains("n"))
    c.error("/params", "give exactly one of \"directions\" and \"n\"");
  if (command == "inequality") {
    const auto name = config["name"].get<std::string>();
    if ((name == "eq11" || name == "strengthened") && params.contains("roots_of_unity") == params.contains("moduli"))
      c.error("/params", "give exactly one of \"roots_of_unity\" and \"moduli\"");
    if (name == "thm4" || name == "thm5" || name == "thm6") {
      const bool extremal = params.value("extremal", false);
      if (extremal && !params.contains("n")) c.error("/params/n", "required for extremal configurations");
      if (!extremal && !params.contains("domains")) c.error("/params/domains", "required unless extremal is true");
    }
  }
  if (config.contains("solver")) {
    try {
      fem::SolveOptions o;
      const auto& s = config["solver"];
      o.target_relative_error = num(s, "target_relative_error", o.target_relative_error);
      o.min_levels = s.value("min_levels", o.min_levels);
      o.max_levels = s.value("max_levels", o.max_levels);
      o.base_ring_nodes = s.value("base_ring_nodes", o.base_ring_nodes);
      o.linear_tolerance = num(s, "linear_tolerance", o.linear_tolerance);
      o.quadrature_nodes = s.value("quadrature_nodes", o.quadrature_nodes);
      o.far_field_size = num(s, "far_field_size", o.far_field_size);
      o.max_cg_iterations = s.value("max_cg_iterations", o.max_cg_iterations);
      o.validate();
    } catch (const Error& e) {
      c.error("/solver", e.what());
    }
  }
  return c.diags;
}

RunConfig parse_config(const json& config) {
  auto diags = validate_config(config);
  if (!diags.empty()) throw ConfigError(std::move(diags));
  RunConfig rc;
  rc.source = config;
  rc.command = config["command"].get<std::string>();
  rc.name = config.value("name", "");
  rc.params = config.value("params", json::object());
  rc.seed = config.value("seed", std::uint64_t{0});
  if (config.contains("solver")) {
    const auto& s = config["solver"];
    auto& o = rc.solver;
    o.target_relative_error = num(s, "target_relative_error", o.target_relative_error);
    o.min_levels = s.value("min_levels", o.min_levels);
    o.max_levels = s.value("max_levels", o.max_levels);
    o.base_ring_nodes = s.value("base_ring_nodes", o.base_ring_nodes);
    o.linear_tolerance = num(s, "linear_tolerance", o.linear_tolerance);
    o.quadrature_nodes = s.value("quadrature_nodes", o.quadrature_nodes);
    o.far_field_size = num(s, "far_field_size", o.far_field_size);
    o.max_cg_iterations = s.value("max_cg_iterations", o.max_cg_iterations);
  }
  if (config.contains("output")) {
    const auto& o = config["output"];
    if (o.contains("dir")) rc.out_dir = o["dir"].get<std::string>();
    if (o.contains("formats")) rc.formats = o["formats"].get<std::vector<std::string>>();
  }
  return rc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError({{"", std::string("malformed JSON: ") + e.what()}});
  }
}

cplx to_cplx(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

analytic::SpherePoint to_point(const json& j) {
  if (j.is_string()) return analytic::SpherePoint::infinity();
  return to_cplx(j);
}

analytic::CanonicalDomain to_domain(const json& j) {
  using analytic::CanonicalDomain;
  const auto type = j.at("type").get<std::string>();
  if (type == "disk") return CanonicalDomain::disk(to_cplx(j["center"]), j["radius"].get<double>());
  if (type == "exterior_disk") return CanonicalDomain::exterior_disk(to_cplx(j["center"]), j["radius"].get<double>());
  if (type == "half_plane") {
    const cplx n = to_cplx(j["normal"]);
    require(std::abs(n) > 0.0, ErrorKind::InvalidInput, "half-plane normal must be nonzero");
    return CanonicalDomain::half_plane(to_cplx(j["point"]), n / std::abs(n));
  }
  if (type == "sector")
    return CanonicalDomain::sector(to_cplx(j["vertex"]), std::polar(1.0, j["bisector_angle"].get<double>()),
                                   j["opening"].get<double>());
  if (type == "power_preimage") {
    const double c = j["threshold"].get<double>();
    const int n = j["order"].get<int>();
    if (j.contains("petal")) return CanonicalDomain::power_preimage_petal(c, n, j["petal"].get<int>());
    return CanonicalDomain::power_preimage(c, n);
  }
  if (type == "mobius_image") {
    const auto& m = j["map"];
    return CanonicalDomain::mobius_image(to_domain(j["base"]),
                                         {to_cplx(m["a"]), to_cplx(m["b"]), to_cplx(m["c"]), to_cplx(m["d"])});
  }
  if (type == "power_image")
    return CanonicalDomain::power_image(to_domain(j["base"]), j["exponent"].get<double>(),
                                        std::polar(1.0, num(j, "rotation_angle", 0.0)));
  fail(ErrorKind::UnsupportedDomain, "domain type " + type + " has no analytic Green function");
}

bool is_numeric_domain(const json& j) {
  const auto type = j.value("type", "");
  return type == "numeric_disk" || type == "slit_disk";
}

fem::NumericDomain to_numeric_domain(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "slit_disk") {
    std::vector<cplx> dirs;
    for (const auto& t : j["directions"]) dirs.push_back(std::polar(1.0, t.get<double>()));
    return fem::NumericDomain::radially_slit_disk(dirs, to_intervals(j["k"]));
  }
  if (type == "numeric_disk") {
    auto d = fem::NumericDomain::disk(to_cplx(j["center"]), j["radius"].get<double>());
    if (j.contains("slits"))
      for (const auto& s : j["slits"])
        d = d.with_slit({cplx(s[0].get<double>(), s[1].get<double>()), cplx(s[2].get<double>(), s[3].get<double>())});
    return d;
  }
  // Disks have an exact numeric counterpart; other canonical domains do not.
  if (type == "disk") return fem::NumericDomain::disk(to_cplx(j["center"]), j["radius"].get<double>());
  fail(ErrorKind::UnsupportedDomain, "domain type " + type + " cannot be meshed");
}

std::vector<core::PlateSpec> to_plates(const json& j) {
  std::vector<core::PlateSpec> out;
  for (const auto& p : j)
    out.push_back({to_point(p["center"]), num(p, "delta", 1.0), core::PlateLaw{num(p, "mu", 1.0), num(p, "exponent", 1.0)}});
  return out;
}

core::CondenserSpec to_spec(const json& params) {
  auto plates = to_plates(params.at("plates"));
  if (params.contains("domain") && is_numeric_domain(params["domain"]))
    return core::CondenserSpec::numeric(to_numeric_domain(params["domain"]), std::move(plates));
  if (params.contains("domain")) return core::CondenserSpec::single(to_domain(params["domain"]), std::move(plates));
  core::CondenserSpec spec;
  for (const auto& d : params.at("components")) spec.components.push_back(to_domain(d));
  spec.plates = std::move(plates);
  for (const auto& p : params["plates"]) spec.component_of.push_back(p.value("component", std::size_t{0}));
  return spec;
}

fem::PlateShape to_shape(const json& j) {
  fem::PlateShape s;
  s.kind = fem::parse_plate_kind(j.at("kind").get<std::string>());
  s.kappa = num(j, "kappa", s.kind == fem::PlateShape::Kind::Circle ? 0.0 : 1.0);
  s.fixed_excess = j.value("fixed_excess", false);
  return s;
}

std::vector<fem::Interval> to_intervals(const json& j) {
  std::vector<fem::Interval> out;
  for (const auto& iv : j) out.push_back({iv[0].get<double>(), iv[1].get<double>()});
  return out;
}

}  // namespace condenser::cli
