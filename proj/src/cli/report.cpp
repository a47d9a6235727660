#include "condenser/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#ifndef CONDENSER_VERSION
#define CONDENSER_VERSION "0.0.0"
#endif

namespace condenser::cli {

const char* tool_version() noexcept { return CONDENSER_VERSION; }

std::string config_hash(const json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const RunReport& r) {
  json tables = json::array();
  for (const auto& t : r.tables) tables.push_back({{"name", t.name}, {"header", t.header}, {"rows", t.rows}});
  return {{"tool_version", r.tool_version},
          {"convention_version", r.convention_version},
          {"config", r.config},
          {"config_hash", r.config_hash},
          {"results", r.results},
          {"tables", tables},
          {"timestamp", r.timestamp},
          {"exit_status", r.exit_status},
          {"status", r.status}};
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.convention_version = j.at("convention_version").get<std::string>();
  r.config = j.at("config");
  r.config_hash = j.at("config_hash").get<std::string>();
  r.results = j.at("results");
  for (const auto& t : j.at("tables")) {
    Table tab;
    tab.name = t.at("name").get<std::string>();
    tab.header = t.at("header").get<std::vector<std::string>>();
    for (const auto& row : t.at("rows")) tab.rows.push_back(row.get<std::vector<json>>());
    r.tables.push_back(std::move(tab));
  }
  r.timestamp = j.at("timestamp");
  r.exit_status = j.at("exit_status").get<int>();
  r.status = j.at("status").get<std::string>();
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_string()) return csv_field(v.get<std::string>());
  return csv_field(v.dump());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.header.size(); ++k) out += (k ? "," : "") + csv_field(table.header[k]);
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_cell(row[k]);
    out += "\r\n";
  }
  return out;
}

void emit(const RunReport& report, const std::string& dir, const std::vector<std::string>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) fail(ErrorKind::Io, "cannot create output directory " + dir);
  write_file(std::filesystem::path(dir) / "report.json", to_json(report).dump(2) + "\n");
  if (std::find(formats.begin(), formats.end(), "csv") != formats.end())
    for (const auto& t : report.tables) write_file(std::filesystem::path(dir) / (t.name + ".csv"), to_csv(t));
}

json to_json(const inequality::InequalityReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"name", t.name}, {"value", number_or_null(t.value)}, {"source", t.source}});
  return {{"name", r.name},
          {"relation", std::string(inequality::to_string(r.relation))},
          {"lhs", number_or_null(r.lhs)},
          {"rhs", number_or_null(r.rhs)},
          {"margin", number_or_null(r.margin)},
          {"tolerance", number_or_null(r.tolerance)},
          {"passed", r.passed},
          {"equality", r.equality},
          {"asserted", r.asserted},
          {"precondition_failed", r.precondition_failed},
          {"diagnostic", r.diagnostic},
          {"terms", terms},
          {"metadata", r.metadata},
          {"convention_version", inequality::kConventionVersion}};
}

json to_json(const fem::ModuleEstimate& e) {
  json hist = json::array();
  for (double v : e.history) hist.push_back(number_or_null(v));
  return {{"value", number_or_null(e.value)},
          {"energy", number_or_null(e.energy)},
          {"error_estimate", number_or_null(e.error_estimate)},
          {"extrapolated", number_or_null(e.extrapolated)},
          {"observed_order", number_or_null(e.observed_order)},
          {"history", hist},
          {"ring_nodes", e.ring_nodes},
          {"node_counts", e.node_counts},
          {"accuracy_reached", e.accuracy_reached},
          {"max_principle_violation", number_or_null(e.max_principle_violation)}};
}

json to_json(const asymptotics::LimitEstimate& e) {
  return {{"intercept", number_or_null(e.intercept)},
          {"decay", number_or_null(e.decay)},
          {"residual_norm", number_or_null(e.residual_norm)},
          {"half_width", number_or_null(e.half_width)},
          {"plain_intercept", number_or_null(e.plain_intercept)},
          {"fits_disagree", e.fits_disagree},
          {"rows_used", e.rows_used}};
}

json to_json(const asymptotics::SlopeCheck& s) {
  json slopes = json::array();
  for (double v : s.slopes) slopes.push_back(number_or_null(v));
  return {{"slopes", slopes},
          {"expected", s.expected},
          {"relative_error", number_or_null(s.relative_error)},
          {"passed", s.passed}};
}

json to_json(const inequality::SweepSummary& s) {
  json failures = json::array();
  for (const auto& f : s.failures) failures.push_back(to_json(f));
  return {{"check", s.check},
          {"seed", s.seed},
          {"trials", s.trials},
          {"violations", s.violations},
          {"skipped", s.skipped},
          {"min_margin", number_or_null(s.min_margin)},
          {"min_relative_margin", number_or_null(s.min_relative_margin)},
          {"failures", failures}};
}

json to_json(const core::ReducedModuleResult& r) {
  json cross = json::array();
  for (const auto& c : r.cross_terms) cross.push_back({{"l", c.l}, {"j", c.j}, {"value", number_or_null(c.value)}});
  json diag = json::array();
  for (double v : r.diagonal_terms) diag.push_back(number_or_null(v));
  return {{"nu", r.nu}, {"value", number_or_null(r.value)}, {"diagonal_terms", diag}, {"cross_terms", cross}};
}

Table to_table(const std::vector<asymptotics::AsymptoticRow>& rows, std::string name) {
  Table t{std::move(name), {"r", "module", "corrected", "err"}, {}};
  for (const auto& row : rows)
    t.rows.push_back({row.r, number_or_null(row.module), number_or_null(row.corrected), number_or_null(row.error_estimate)});
  return t;
}

}  // namespace condenser::cli
