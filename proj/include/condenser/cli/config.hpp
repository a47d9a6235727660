#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "condenser/analytic/analytic_function.hpp"
#include "condenser/core/condenser.hpp"
#include "condenser/error.hpp"
#include "condenser/fem/geometry.hpp"

namespace condenser::cli {

using json = nlohmann::json;

inline constexpr int kConfigSchemaVersion = 1;

struct Diagnostic {
  std::string path;  // JSON pointer into the config
  std::string message;
};

// Schema violation. Carries every diagnostic found, not only the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

json diagnostics_json(const std::vector<Diagnostic>& diagnostics);

struct RunConfig {
  std::string command;
  std::string name;  // inequality name for `inequality`
  json params = json::object();
  fem::SolveOptions solver;
  std::uint64_t seed = 0;
  std::optional<std::string> out_dir;
  std::vector<std::string> formats{"json"};
  json source;  // the validated input, echoed verbatim in the report
};

const std::vector<std::string>& command_names();
const std::vector<std::string>& inequality_names();

std::vector<Diagnostic> validate_config(const json& config);
// Throws ConfigError when validate_config reports anything.
RunConfig parse_config(const json& config);

// Reads and parses a JSON file. Unreadable files raise Io, bad JSON ConfigError.
json load_json_file(const std::string& path);

// Builders for validated parameter fragments.
analytic::SpherePoint to_point(const json& j);
cplx to_cplx(const json& j);
analytic::CanonicalDomain to_domain(const json& j);
fem::NumericDomain to_numeric_domain(const json& j);
bool is_numeric_domain(const json& j);
std::vector<core::PlateSpec> to_plates(const json& j);
// {"domain" | "components" | numeric "domain", "plates"}
core::CondenserSpec to_spec(const json& params);
fem::PlateShape to_shape(const json& j);
std::vector<fem::Interval> to_intervals(const json& j);

}  // namespace condenser::cli
