#pragma once

#include "condenser/cli/config.hpp"
#include "condenser/cli/report.hpp"

namespace condenser::cli {

// 0 all asserted checks hold, 1 an asserted check is violated, 2 invalid
// config or input, 3 numeric failure, 4 I/O failure.
enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInvalid = 2, kExitNumeric = 3, kExitIo = 4 };

int exit_code_for(ErrorKind kind) noexcept;

// Runs a validated config. Library errors become a report with the matching
// exit status instead of propagating.
RunReport run(const RunConfig& config);

// Validates and runs; schema violations produce an exit-2 report carrying
// the diagnostics.
RunReport run_json(const json& config);

}  // namespace condenser::cli
