#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"

#include "condenser/cli/config.hpp"
#include "condenser/cli/report.hpp"
#include "condenser/cli/run.hpp"
#include "condenser/cli/scenarios.hpp"

using namespace condenser;
using namespace condenser::cli;
namespace fs = std::filesystem;

namespace {

json ring_config() {
  return {{"schema_version", 1}, {"command", "calibrate"}, {"params", {{"kind", "ring"}, {"r", 0.1}}}};
}

json eq11_config(int n) {
  return {{"schema_version", 1}, {"command", "inequality"}, {"name", "eq11"}, {"params", {{"roots_of_unity", n}}}};
}

bool has_diag(const std::vector<Diagnostic>& d, const std::string& path) {
  return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.path == path; });
}

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("condenser_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json without_timestamp(RunReport r) {
  json j = to_json(r);
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("valid configs produce no diagnostics") {
  CHECK(validate_config(ring_config()).empty());
  CHECK(validate_config(eq11_config(3)).empty());
}

TEST_CASE("validation points at the offending field") {
  SUBCASE("unknown top-level field") {
    json c = ring_config();
    c["colour"] = "red";
    CHECK(has_diag(validate_config(c), "/colour"));
  }
  SUBCASE("unknown nested field") {
    json c = eq11_config(3);
    c["params"]["modulus"] = 2;
    const auto d = validate_config(c);
    REQUIRE(d.size() == 1);
    CHECK(d[0].path == "/params/modulus");
    CHECK(d[0].message == "unknown field");
  }
  SUBCASE("negative radius") {
    json c = {{"schema_version", 1},
              {"command", "reduced-module"},
              {"params",
               {{"domain", {{"type", "disk"}, {"center", {0, 0}}, {"radius", -1}}}, {"plates", {{{"center", {0, 0}}}}}}}};
    CHECK(has_diag(validate_config(c), "/params/domain/radius"));
  }
  SUBCASE("missing schema version") {
    json c = ring_config();
    c.erase("schema_version");
    CHECK(has_diag(validate_config(c), "/schema_version"));
  }
  SUBCASE("wrong schema version") {
    json c = ring_config();
    c["schema_version"] = 2;
    CHECK(has_diag(validate_config(c), "/schema_version"));
  }
  SUBCASE("both ray forms") {
    json c = eq11_config(3);
    c["params"]["moduli"] = {1.0, 2.0};
    CHECK(has_diag(validate_config(c), "/params"));
  }
  SUBCASE("solver ranges") {
    json c = ring_config();
    c["solver"] = {{"far_field_size", 3.0}};
    CHECK(has_diag(validate_config(c), "/solver"));
  }
  SUBCASE("every problem is reported") {
    json c = ring_config();
    c["a"] = 1;
    c["b"] = 2;
    CHECK(validate_config(c).size() == 2);
  }
}

TEST_CASE("parse_config throws ConfigError, run_json maps it to exit 2") {
  json c = ring_config();
  c["params"]["r"] = 1.5;
  CHECK_THROWS_AS(parse_config(c), ConfigError);
  try {
    parse_config(c);
  } catch (const ConfigError& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
    CHECK(e.diagnostics().front().path == "/params/r");
  }
  const auto rep = run_json(c);
  CHECK(rep.exit_status == kExitInvalid);
  CHECK(rep.results["error"]["kind"] == "invalid-config");
  CHECK(rep.config == c);
}

TEST_CASE("exit codes by error kind") {
  CHECK(exit_code_for(ErrorKind::InvalidInput) == 2);
  CHECK(exit_code_for(ErrorKind::Geometry) == 2);
  CHECK(exit_code_for(ErrorKind::UnsupportedDomain) == 2);
  CHECK(exit_code_for(ErrorKind::NumericFailure) == 3);
  CHECK(exit_code_for(ErrorKind::Io) == 4);
}

TEST_CASE("eq11 at the 4th roots of unity") {
  const auto rep = run_json(eq11_config(4));
  CHECK(rep.exit_status == kExitOk);
  const auto& r = rep.results["report"];
  CHECK(r["lhs"].get<double>() == doctest::Approx(256.0).epsilon(1e-12));
  CHECK(r["rhs"].get<double>() == doctest::Approx(256.0).epsilon(1e-12));
  CHECK(r["equality"] == true);
  CHECK(r["passed"] == true);
}

TEST_CASE("ring calibration through the CLI layer") {
  const auto rep = run_json(ring_config());
  CHECK(rep.exit_status == kExitOk);
  const double exact = std::log(10.0) / (2.0 * kPi);
  CHECK(rep.results["exact"].get<double>() == doctest::Approx(exact).epsilon(1e-15));
  CHECK(std::abs(rep.results["module"]["value"].get<double>() - exact) / exact <= 1e-3);
  CHECK(rep.results["checks"]["ring_module"]["passed"] == true);
}

TEST_CASE("numeric failure is exit 3") {
  json c = ring_config();
  c["solver"] = {{"max_cg_iterations", 1}};
  const auto rep = run_json(c);
  CHECK(rep.exit_status == kExitNumeric);
  CHECK(rep.results["error"]["kind"] == std::string(to_string(ErrorKind::NumericFailure)));
}

TEST_CASE("report envelope") {
  const json c = eq11_config(3);
  const auto rep = run_json(c);
  CHECK(rep.config == c);
  CHECK(rep.config_hash == config_hash(c));
  CHECK(rep.config_hash.size() == 16);
  CHECK(rep.tool_version == tool_version());
  CHECK_FALSE(rep.convention_version.empty());
  CHECK(rep.timestamp.contains("started_utc"));
  CHECK(rep.timestamp.contains("wall_clock_seconds"));

  SUBCASE("hash ignores key order and tracks content") {
    json reordered = json::parse(R"({"params":{"roots_of_unity":3},"name":"eq11","command":"inequality","schema_version":1})");
    CHECK(config_hash(reordered) == config_hash(c));
    CHECK(config_hash(eq11_config(4)) != config_hash(c));
  }
  SUBCASE("json round trip") {
    const json j = to_json(rep);
    const RunReport back = report_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.tables.size() == rep.tables.size());
  }
  SUBCASE("byte-stable apart from the timestamp") {
    const auto again = run_json(c);
    CHECK(without_timestamp(again).dump() == without_timestamp(rep).dump());
  }
}

TEST_CASE("CSV formatting") {
  asymptotics::AsymptoticRow a;
  a.r = 0.125;
  a.module = 0.5;
  a.corrected = 0.25;
  a.error_estimate = 1e-4;
  asymptotics::AsymptoticRow b = a;
  b.r = 0.0625;
  b.module = std::nan("");
  const Table t = to_table({a, b});
  CHECK(t.name == "asymptotics");
  const std::string csv = to_csv(t);
  CHECK(csv == "r,module,corrected,err\r\n0.125,0.5,0.25,1e-04\r\n0.0625,,0.25,1e-04\r\n");

  Table q{"q", {"name", "value"}, {{"a,b", 1}, {"say \"hi\"", true}, {"x\ny", nullptr}}};
  CHECK(to_csv(q) == "name,value\r\n\"a,b\",1\r\n\"say \"\"hi\"\"\",true\r\n\"x\ny\",\r\n");

  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(number_or_null(INFINITY).is_null());
}

TEST_CASE("emit writes report and tables") {
  const auto rep = run_json(eq11_config(3));
  const auto dir = scratch_dir("emit");
  emit(rep, (dir / "nested").string(), {"json", "csv"});
  const auto text = slurp(dir / "nested" / "report.json");
  CHECK(json::parse(text) == to_json(rep));
  for (const auto& t : rep.tables) CHECK(slurp(dir / "nested" / (t.name + ".csv")) == to_csv(t));

  const auto only_json = scratch_dir("emit_json");
  emit(rep, only_json.string(), {"json"});
  CHECK(fs::exists(only_json / "report.json"));
  CHECK(std::distance(fs::directory_iterator(only_json), fs::directory_iterator{}) == 1);

  std::ofstream(dir / "plain") << "x";
  try {
    emit(rep, (dir / "plain" / "sub").string(), {"json"});
    FAIL("expected an Io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  fs::remove_all(dir);
  fs::remove_all(only_json);
}

TEST_CASE("load_json_file") {
  const auto dir = scratch_dir("load");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{\"schema_version\": 1,";
  CHECK_THROWS_AS(load_json_file((dir / "bad.json").string()), ConfigError);
  try {
    load_json_file((dir / "missing.json").string());
    FAIL("expected an Io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  std::ofstream(dir / "ok.json") << ring_config().dump();
  CHECK(load_json_file((dir / "ok.json").string()) == ring_config());
  fs::remove_all(dir);
}

TEST_CASE("scenario catalog") {
  const auto& cat = scenario_catalog();
  std::set<std::string> names;
  for (const auto& s : cat) {
    CAPTURE(s.name);
    CHECK(names.insert(s.name).second);
    CHECK_FALSE(s.description.empty());
    CHECK(validate_config(s.config).empty());
  }
  for (const char* required : {"ring-calibration", "disk-green-calibration", "asymptotics-center-plate",
                               "asymptotics-two-plates", "lemma1-square-plates", "thm4-extremal-n2",
                               "thm5-extremal-n2", "thm6-extremal-n2", "thm8-extremal-n1", "thm8-extremal-n2",
                               "nehari-equality", "goluzin-example", "haliste-sweep-n2", "random-sweep"})
    CHECK(names.count(required) == 1);
  for (int n = 2; n <= 8; ++n) CHECK(names.count("eq11-roots-of-unity-n" + std::to_string(n)) == 1);
  CHECK(find_scenario("ring-calibration").has_value());
  CHECK_FALSE(find_scenario("no-such-scenario").has_value());
}

TEST_CASE("schema file mirrors the validator") {
  const json schema = load_json_file(std::string(CONDENSER_SOURCE_DIR) + "/schemas/run_config.schema.json");
  const auto& props = schema["properties"];
  std::set<std::string> keys;
  for (const auto& [k, _] : props.items()) keys.insert(k);
  CHECK(keys == std::set<std::string>{"schema_version", "command", "name", "description", "params", "solver", "seed",
                                      "output"});
  CHECK(props["schema_version"]["const"] == kConfigSchemaVersion);
  CHECK(props["command"]["enum"].get<std::vector<std::string>>() == command_names());
  auto names = inequality_names();
  std::sort(names.begin(), names.end());
  CHECK(props["name"]["enum"].get<std::vector<std::string>>() == names);
  for (const auto& n : names) CHECK(schema["$defs"].contains("inequality_" + n));
  for (const auto& c : command_names())
    if (c != "inequality") CHECK(schema["$defs"].contains("params_" + c));

  // Boundary values accepted by both the schema and the validator.
  const json edge = {{"target_relative_error", 0.1}, {"min_levels", 3},         {"max_levels", 3},
                     {"base_ring_nodes", 64},         {"linear_tolerance", 1e-5}, {"quadrature_nodes", 256},
                     {"far_field_size", 0.5},          {"max_cg_iterations", 1}};
  std::set<std::string> solver_keys;
  for (const auto& [k, v] : schema["$defs"]["solver"]["properties"].items()) {
    solver_keys.insert(k);
    CAPTURE(k);
    REQUIRE(edge.contains(k));
    json c = ring_config();
    c["solver"][k] = edge[k];
    CHECK(validate_config(c).empty());
    if (v.contains("minimum") && v["type"] == "integer") {
      c["solver"][k] = v["minimum"].get<int>() - 1;
      if (k == "max_levels") c["solver"]["min_levels"] = 1;
      CHECK_FALSE(validate_config(c).empty());
    }
  }
  CHECK(solver_keys.size() == 8);
}

}  // TEST_SUITE
