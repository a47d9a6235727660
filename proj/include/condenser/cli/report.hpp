#pragma once

#include <string>
#include <vector>

#include "condenser/asymptotics/harness.hpp"
#include "condenser/cli/config.hpp"
#include "condenser/inequality/haliste.hpp"
#include "condenser/inequality/report.hpp"
#include "condenser/inequality/sweeps.hpp"

namespace condenser::cli {

// Cells are JSON numbers, strings, booleans or null (non-finite values).
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

struct RunReport {
  std::string tool_version;
  std::string convention_version;
  json config;  // echo of the validated input
  std::string config_hash;
  json results = json::object();
  std::vector<Table> tables;
  // Wall clock and start time; excluded from the byte-stability guarantee.
  json timestamp = json::object();
  int exit_status = 0;
  std::string status;
};

const char* tool_version() noexcept;

// FNV-1a over the compact canonical dump (object keys sorted).
std::string config_hash(const json& config);

json to_json(const RunReport& report);
RunReport report_from_json(const json& j);

// RFC 4180 quoting; numbers in shortest round-trip form.
std::string to_csv(const Table& table);

// Writes report.json and, when "csv" is requested, <table>.csv per table.
// Throws Io when the directory cannot be created or written.
void emit(const RunReport& report, const std::string& dir, const std::vector<std::string>& formats);

std::string format_number(double v);
json number_or_null(double v);

json to_json(const inequality::InequalityReport& r);
json to_json(const fem::ModuleEstimate& e);
json to_json(const asymptotics::LimitEstimate& e);
json to_json(const asymptotics::SlopeCheck& s);
json to_json(const inequality::SweepSummary& s);
json to_json(const core::ReducedModuleResult& r);
Table to_table(const std::vector<asymptotics::AsymptoticRow>& rows, std::string name = "asymptotics");

}  // namespace condenser::cli
