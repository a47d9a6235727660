#pragma once

#include <string>
#include <vector>

#include "condenser/core/condenser.hpp"
#include "condenser/fem/geometry.hpp"

namespace condenser::asymptotics {

struct AsymptoticRow {
  double r = 0.0;
  double module = 0.0;
  double corrected = 0.0;  // module + (nu / 2 pi) log r
  double error_estimate = 0.0;
  bool failed = false;
  std::string note;  // solver diagnostic for failed or low-accuracy rows
};

// Rows for r_list (strictly decreasing, ratio <= 1/2, at least 4 entries).
// Solver failures are recorded on the row and the table is still returned.
std::vector<AsymptoticRow> asymptotic_table(const core::CondenserSpec& spec, const std::vector<double>& r_list,
                                            const fem::SolveOptions& opts,
                                            const std::vector<fem::PlateShape>& shapes = {});

// Least-squares fit corrected = M + c / log(1/r) over the usable rows.
struct LimitEstimate {
  double intercept = 0.0;
  double decay = 0.0;
  double residual_norm = 0.0;
  double half_width = 0.0;
  double plain_intercept = 0.0;  // mean of corrected values (no decay term)
  bool fits_disagree = false;
  std::size_t rows_used = 0;
};

LimitEstimate extrapolate_limit(const std::vector<AsymptoticRow>& rows);

// Successive-difference slopes d module / d log(1/r) against nu / (2 pi).
struct SlopeCheck {
  std::vector<double> slopes;
  double expected = 0.0;
  double relative_error = 0.0;  // of the last slope
  bool passed = false;
};

SlopeCheck slope_check(const std::vector<AsymptoticRow>& rows, double nu, double tolerance = 0.05);

struct RobustnessReport {
  fem::PlateShape shape;
  std::vector<AsymptoticRow> circular_rows;
  std::vector<AsymptoticRow> shaped_rows;
  LimitEstimate circular;
  LimitEstimate shaped;
  double difference = 0.0;
  double allowed = 0.0;  // combined half-widths + 2e-2
  bool agree = false;
};

// Compares the extrapolated limit for the given plate shape with circular plates.
RobustnessReport plate_shape_robustness(const core::CondenserSpec& spec, const std::vector<double>& r_list,
                                        const fem::PlateShape& shape, const fem::SolveOptions& opts);

}  // namespace condenser::asymptotics
