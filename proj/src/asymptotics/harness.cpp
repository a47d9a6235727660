#include "condenser/asymptotics/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "condenser/fem/solver.hpp"

namespace condenser::asymptotics {
namespace {

void check_r_list(const std::vector<double>& r_list) {
  require(r_list.size() >= 4, ErrorKind::InvalidInput, "asymptotic tables need at least 4 values of r");
  for (std::size_t k = 0; k < r_list.size(); ++k) {
    require(r_list[k] > 0.0 && r_list[k] < 1.0, ErrorKind::InvalidInput, "r values must lie in (0, 1)");
    if (k > 0)
      require(r_list[k] <= 0.5 * r_list[k - 1] * (1.0 + 1e-12), ErrorKind::InvalidInput,
              "r values must decrease geometrically with ratio at most 1/2");
  }
}

double nu_of(const core::CondenserSpec& spec) {
  const auto d = spec.deltas();
  const auto l = spec.laws();
  return core::nu_total(d, l);
}

}  // namespace

std::vector<AsymptoticRow> asymptotic_table(const core::CondenserSpec& spec, const std::vector<double>& r_list,
                                            const fem::SolveOptions& opts,
                                            const std::vector<fem::PlateShape>& shapes) {
  check_r_list(r_list);
  spec.validate();
  for (const auto& s : shapes)
    require(s.satisfies_sandwich(), ErrorKind::InvalidInput,
            "plate shape " + s.describe() + " is not squeezed between two plates with the same law");
  const double nu = nu_of(spec);
  std::vector<AsymptoticRow> rows;
  for (double r : r_list) {
    AsymptoticRow row;
    row.r = r;
    try {
      const fem::ModuleEstimate est = fem::condenser_module_numeric(spec, r, opts, shapes);
      row.module = est.value;
      row.corrected = est.value + nu / (2.0 * kPi) * std::log(r);
      row.error_estimate = est.error_estimate;
      if (!est.accuracy_reached) row.note = "accuracy-not-reached";
    } catch (const Error& e) {
      row.failed = true;
      row.module = std::numeric_limits<double>::quiet_NaN();
      row.corrected = row.module;
      row.note = std::string(to_string(e.kind())) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

LimitEstimate extrapolate_limit(const std::vector<AsymptoticRow>& rows) {
  std::vector<double> x, y;
  double propagated = 0.0;
  for (const auto& row : rows) {
    if (row.failed || !std::isfinite(row.corrected)) continue;
    require(row.r > 0.0 && row.r < 1.0, ErrorKind::InvalidInput, "r values must lie in (0, 1)");
    x.push_back(1.0 / std::log(1.0 / row.r));
    y.push_back(row.corrected);
    propagated = std::max(propagated, row.error_estimate);
  }
  require(x.size() >= 3, ErrorKind::InvalidInput, "limit extrapolation needs at least 3 usable rows");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const double det = n * sxx - sx * sx;
  require(det > 1e-14 * n * sxx, ErrorKind::InvalidInput, "singular fit: all r values are equal");
  LimitEstimate est;
  est.rows_used = x.size();
  est.decay = (n * sxy - sx * sy) / det;
  est.intercept = (sy - est.decay * sx) / n;
  double rss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double res = y[k] - est.intercept - est.decay * x[k];
    rss += res * res;
  }
  est.residual_norm = std::sqrt(rss);
  const double s2 = x.size() > 2 ? rss / (n - 2.0) : 0.0;
  const double se = std::sqrt(s2 * sxx / det);
  est.half_width = std::max(2.0 * se + propagated, 1e-12 * std::max(1.0, std::abs(est.intercept)));
  est.plain_intercept = sy / n;
  est.fits_disagree = std::abs(est.plain_intercept - est.intercept) > est.half_width + 2e-2;
  return est;
}

SlopeCheck slope_check(const std::vector<AsymptoticRow>& rows, double nu, double tolerance) {
  require(nu > 0.0, ErrorKind::InvalidInput, "nu must be positive");
  SlopeCheck out;
  out.expected = nu / (2.0 * kPi);
  const AsymptoticRow* prev = nullptr;
  for (const auto& row : rows) {
    if (row.failed) continue;
    if (prev) out.slopes.push_back((row.module - prev->module) / std::log(prev->r / row.r));
    prev = &row;
  }
  require(!out.slopes.empty(), ErrorKind::InvalidInput, "slope check needs two usable rows");
  out.relative_error = std::abs(out.slopes.back() - out.expected) / out.expected;
  out.passed = out.relative_error <= tolerance;
  return out;
}

RobustnessReport plate_shape_robustness(const core::CondenserSpec& spec, const std::vector<double>& r_list,
                                        const fem::PlateShape& shape, const fem::SolveOptions& opts) {
  require(shape.satisfies_sandwich(), ErrorKind::InvalidInput,
          "plate shape " + shape.describe() + " is not squeezed between two plates with the same law");
  RobustnessReport rep;
  rep.shape = shape;
  rep.circular_rows = asymptotic_table(spec, r_list, opts);
  if (shape.kind == fem::PlateShape::Kind::Circle) {
    rep.shaped_rows = rep.circular_rows;
  } else {
    rep.shaped_rows = asymptotic_table(spec, r_list, opts, std::vector<fem::PlateShape>(spec.plates.size(), shape));
  }
  rep.circular = extrapolate_limit(rep.circular_rows);
  rep.shaped = extrapolate_limit(rep.shaped_rows);
  rep.difference = std::abs(rep.shaped.intercept - rep.circular.intercept);
  rep.allowed = rep.circular.half_width + rep.shaped.half_width + 2e-2;
  rep.agree = rep.difference <= rep.allowed;
  return rep;
}

}  // namespace condenser::asymptotics
