#include <cmath>
#include <vector>

#include "doctest.h"

#include "condenser/asymptotics/harness.hpp"

using namespace condenser;
using namespace condenser::asymptotics;
using core::CondenserSpec;
using core::PlateSpec;

namespace {

const analytic::CanonicalDomain kUnit = analytic::CanonicalDomain::disk(0.0, 1.0);

std::vector<double> r_list_4_7() { return {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128}; }

std::vector<AsymptoticRow> synthetic(double m, double c, double nu = 1.0) {
  std::vector<AsymptoticRow> rows;
  for (int k = 4; k <= 9; ++k) {
    AsymptoticRow row;
    row.r = std::ldexp(1.0, -k);
    row.corrected = m + c / std::log(1.0 / row.r);
    row.module = row.corrected - nu / (2.0 * kPi) * std::log(row.r);
    rows.push_back(row);
  }
  return rows;
}

const std::vector<AsymptoticRow>& center_rows() {
  static const auto rows =
      asymptotic_table(CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {}}}), r_list_4_7(), fem::SolveOptions{});
  return rows;
}

// Successive differences of the corrected column are nonincreasing, with at
// most one inversion among differences resolved above the error bars.
// Unresolved differences only need to stay inside the error bars.
void check_cauchy(const std::vector<AsymptoticRow>& rows) {
  int inversions = 0;
  for (std::size_t k = 2; k < rows.size(); ++k) {
    const double bars = rows[k].error_estimate + rows[k - 1].error_estimate + rows[k - 2].error_estimate;
    const double prev = std::abs(rows[k - 1].corrected - rows[k - 2].corrected);
    const double next = std::abs(rows[k].corrected - rows[k - 1].corrected);
    if (next <= prev) continue;
    CHECK(next - prev <= bars);
    if (next > bars) ++inversions;
  }
  CHECK(inversions <= 1);
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("fit recovers its own model") {
  const auto fit = extrapolate_limit(synthetic(0.3, 1.7));
  CHECK(std::abs(fit.intercept - 0.3) <= 1e-12);
  CHECK(std::abs(fit.decay - 1.7) <= 1e-11);
  CHECK(fit.residual_norm <= 1e-12);
  CHECK(fit.rows_used == 6);
}

TEST_CASE("constant rows") {
  const auto fit = extrapolate_limit(synthetic(-0.25, 0.0));
  CHECK(fit.intercept == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(std::abs(fit.decay) <= 1e-12);
  CHECK(fit.plain_intercept == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK_FALSE(fit.fits_disagree);
}

TEST_CASE("failed rows are skipped by the fit") {
  auto rows = synthetic(0.3, 1.7);
  rows[2].failed = true;
  rows[2].corrected = 1e9;
  const auto fit = extrapolate_limit(rows);
  CHECK(fit.rows_used == 5);
  CHECK(std::abs(fit.intercept - 0.3) <= 1e-12);
}

TEST_CASE("degenerate fits are rejected") {
  auto rows = synthetic(0.3, 1.7);
  for (auto& row : rows) row.r = 1.0 / 16;
  CHECK_THROWS_AS(extrapolate_limit(rows), Error);
  CHECK_THROWS_AS(extrapolate_limit({}), Error);
}

TEST_CASE("slope check on synthetic rows") {
  const double nu = 0.5;
  const auto s = slope_check(synthetic(0.3, 0.0, nu), nu);
  CHECK(s.passed);
  CHECK(s.expected == doctest::Approx(nu / (2.0 * kPi)));
  CHECK(s.relative_error <= 1e-12);
  // A large decay term bends the finite-difference slope away from nu / (2 pi).
  CHECK_FALSE(slope_check(synthetic(0.3, 20.0, nu), nu).passed);
}

TEST_CASE("r_list validation") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {}}});
  const fem::SolveOptions opts;
  CHECK_THROWS_AS(asymptotic_table(spec, {1.0 / 16, 1.0 / 32, 1.0 / 64}, opts), Error);
  CHECK_THROWS_AS(asymptotic_table(spec, {1.0 / 16, 1.0 / 64, 1.0 / 32, 1.0 / 128}, opts), Error);
  CHECK_THROWS_AS(asymptotic_table(spec, {0.1, 0.08, 0.04, 0.02}, opts), Error);
  CHECK_THROWS_AS(asymptotic_table(spec, {1.5, 0.5, 0.25, 0.125}, opts), Error);
}

TEST_CASE("center plate: corrected values tend to zero") {
  const auto& rows = center_rows();
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK_FALSE(row.failed);
    CHECK(row.corrected == doctest::Approx(row.module + std::log(row.r) / (2.0 * kPi)).epsilon(1e-14));
  }
  CHECK(std::abs(rows.back().corrected) <= 2e-2);
  const auto fit = extrapolate_limit(rows);
  CHECK(std::abs(fit.intercept) <= 1e-2);
  CHECK(slope_check(rows, 1.0).passed);
  check_cauchy(rows);
}

TEST_CASE("potential scaling of the table") {
  const auto& base = center_rows();
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.0, 2.0, {}}});
  const auto rows = asymptotic_table(spec, r_list_4_7(), fem::SolveOptions{});
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(rows[k].module == doctest::Approx(base[k].module / 4.0).epsilon(1e-9));
  CHECK(extrapolate_limit(rows).intercept == doctest::Approx(extrapolate_limit(base).intercept / 4.0).epsilon(1e-6).scale(1e-9));
}

TEST_CASE("law sensitivity: doubling mu shifts the limit by -log 2 / (2 pi)") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {0.5, 1.0}}});
  const auto rows = asymptotic_table(spec, r_list_4_7(), fem::SolveOptions{});
  const auto half = extrapolate_limit(rows).intercept;
  const auto one = extrapolate_limit(center_rows()).intercept;
  // mu 0.5 -> 1 is a doubling.
  CHECK(std::abs((one - half) - (-std::log(2.0) / (2.0 * kPi))) <= 1e-2);
}

TEST_CASE("two plates: limit matches the reduced module") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.5, 1.0, {}}, PlateSpec{-0.5, 1.0, {}}});
  const auto rows = asymptotic_table(spec, r_list_4_7(), fem::SolveOptions{});
  const auto fit = extrapolate_limit(rows);
  CHECK(std::abs(fit.intercept - core::reduced_module(spec).value) <= 2e-2);
  CHECK(std::abs(rows.back().corrected - (-0.0051366)) <= 2e-2);
  CHECK(slope_check(rows, 0.5).passed);
  check_cauchy(rows);
}

TEST_CASE("failed rows are recorded and the table is still returned") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.8, 1.0, {}}});
  const auto rows = asymptotic_table(spec, {0.25, 1.0 / 32, 1.0 / 64, 1.0 / 128}, fem::SolveOptions{});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].failed);
  CHECK_FALSE(rows[0].note.empty());
  CHECK_FALSE(rows[3].failed);
  CHECK(extrapolate_limit(rows).rows_used == 3);
}

TEST_CASE("plate shape robustness") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {}}});
  const fem::SolveOptions opts;
  SUBCASE("circle against circle gives identical tables") {
    const auto rep = plate_shape_robustness(spec, r_list_4_7(), fem::PlateShape::circle(), opts);
    REQUIRE(rep.shaped_rows.size() == rep.circular_rows.size());
    for (std::size_t k = 0; k < rep.shaped_rows.size(); ++k)
      CHECK(rep.shaped_rows[k].module == rep.circular_rows[k].module);
    CHECK(rep.difference == 0.0);
    CHECK(rep.agree);
  }
  SUBCASE("square plates") {
    const auto rep = plate_shape_robustness(spec, r_list_4_7(), fem::PlateShape::square(1.0), opts);
    CHECK(std::abs(rep.shaped.intercept) <= 2e-2 + rep.shaped.half_width);
    CHECK(rep.agree);
  }
  SUBCASE("ellipse plates with aspect 2 at the first row") {
    const auto rep = plate_shape_robustness(spec, r_list_4_7(), fem::PlateShape::ellipse(std::log(16.0)), opts);
    CHECK(rep.agree);
  }
  SUBCASE("a constant excess violates the sandwich condition") {
    fem::PlateShape fixed = fem::PlateShape::square(0.2);
    fixed.fixed_excess = true;
    CHECK_THROWS_AS(plate_shape_robustness(spec, r_list_4_7(), fixed, opts), Error);
  }
}

}  // TEST_SUITE
