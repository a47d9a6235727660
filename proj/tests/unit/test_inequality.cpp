#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "condenser/inequality/checks.hpp"
#include "condenser/inequality/haliste.hpp"
#include "condenser/inequality/sweeps.hpp"

using namespace condenser;
using namespace condenser::inequality;
using analytic::MobiusMap;
using core::CondenserSpec;
using core::PlateSpec;

namespace {

const CanonicalDomain kUnit = CanonicalDomain::disk(0.0, 1.0);

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// Product over ordered pairs k != l of |z_k - z_l|, computed directly.
double ordered_vandermonde(const std::vector<cplx>& z) {
  double p = 1.0;
  for (std::size_t k = 0; k < z.size(); ++k)
    for (std::size_t l = 0; l < z.size(); ++l)
      if (k != l) p *= std::abs(z[k] - z[l]);
  return p;
}

CondenserSpec two_disks(cplx a, cplx b, double radius, double da, double db) {
  CondenserSpec s;
  s.components = {CanonicalDomain::disk(a, radius), CanonicalDomain::disk(b, radius)};
  s.plates = {PlateSpec{a, da, {}}, PlateSpec{b, db, {}}};
  s.component_of = {0, 1};
  return s;
}

}  // namespace

TEST_SUITE("inequality") {

TEST_CASE("eq11 at roots of unity is an equality n^n") {
  for (int n = 2; n <= 8; ++n) {
    CAPTURE(n);
    const auto rep = check_radial(RadialConfig::one_per_ray(std::vector<double>(n, 1.0)), RadialMode::Eq11);
    const double nn = std::pow(n, n);
    CHECK(rel(rep.lhs, nn) <= 1e-10);
    CHECK(rel(rep.rhs, nn) <= 1e-10);
    CHECK(rep.equality);
    CHECK(rep.passed);
  }
  const auto three = check_radial(RadialConfig::one_per_ray({1.0, 1.0, 1.0}), RadialMode::Eq11);
  CHECK(three.lhs == doctest::Approx(27.0).epsilon(1e-12));
}

TEST_CASE("eq11 example z = {1, -2}") {
  // one_per_ray puts modulus 1 on arg pi and modulus 2 on arg 2 pi: {-1, 2}.
  const auto rep = check_radial(RadialConfig::one_per_ray({1.0, 2.0}), RadialMode::Eq11);
  CHECK(rep.lhs == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(rep.rhs == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(rep.relation == Relation::GreaterEqual);
  CHECK(rep.passed);
  CHECK_FALSE(rep.equality);
  CHECK(rep.margin == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strengthened form at symmetric points") {
  const auto rep = check_radial(RadialConfig::one_per_ray({1.0, 1.0}), RadialMode::Strengthened);
  CHECK(rep.lhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.rhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.equality);
}

TEST_CASE("specialization consistency of thm3") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> m(n), a(n), b(n);
    for (int k = 0; k < n; ++k) m[k] = u(rng), a[k] = u(rng), b[k] = a[k] * (1.2 + u(rng));
    const auto one = RadialConfig::one_per_ray(m);
    const auto t = check_radial(one, RadialMode::Thm3);
    const auto e = check_radial(one, RadialMode::Eq11);
    CHECK(rel(t.lhs, e.lhs) <= 1e-13 * std::max(1.0, e.lhs));
    CHECK(rel(t.rhs, e.rhs) <= 1e-13 * std::max(1.0, e.rhs));
    CHECK(t.passed == e.passed);
    // With nu = 1 / (2n) both sides of thm3 are fourth roots of reciprocals of
    // the displayed two-per-ray sides, up to the factor n^(2n).
    const auto two = RadialConfig::two_per_ray(a, b);
    const auto t2 = check_radial(two, RadialMode::Thm3);
    const auto p2 = check_radial(two, RadialMode::TwoPerRay);
    REQUIRE_FALSE(t2.precondition_failed);
    const double n2n = std::pow(n, 2.0 * n);
    CHECK(p2.lhs == doctest::Approx(n2n / std::pow(t2.lhs, 4.0)).epsilon(1e-10));
    CHECK(p2.rhs == doctest::Approx(n2n / std::pow(t2.rhs, 4.0)).epsilon(1e-10));
    CHECK(t2.passed == p2.passed);
  }
}

TEST_CASE("scaling covariance of eq11") {
  const std::vector<double> m{0.5, 1.7, 2.2, 0.9};
  const int n = 4;
  const auto base = check_radial(RadialConfig::one_per_ray(m), RadialMode::Eq11);
  for (double t : {0.3, 2.0, 7.5}) {
    std::vector<double> s = m;
    for (double& x : s) x *= t;
    const auto rep = check_radial(RadialConfig::one_per_ray(s), RadialMode::Eq11);
    const double factor = std::pow(t, n * (n - 1));
    CHECK(rep.lhs == doctest::Approx(base.lhs * factor).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(base.rhs * factor).epsilon(1e-12));
    CHECK(rep.lhs / rep.rhs == doctest::Approx(base.lhs / base.rhs).epsilon(1e-12));
    CHECK(rep.passed == base.passed);
  }
}

TEST_CASE("plate-law consistency failures are reported, not asserted") {
  auto cfg = RadialConfig::one_per_ray({1.0, 1.0});
  cfg.deltas = {{1.0}, {2.0}};
  const auto rep = check_radial(cfg, RadialMode::Thm3);
  CHECK(rep.precondition_failed);
  CHECK_FALSE(rep.violated());
  CHECK_FALSE(rep.diagnostic.empty());
  CHECK(check_radial(cfg, RadialMode::Eq11).precondition_failed);
}

TEST_CASE("malformed radial configurations") {
  CHECK_THROWS_AS(check_radial(RadialConfig::one_per_ray({1.0, 0.0}), RadialMode::Eq11), Error);
  auto cfg = RadialConfig::one_per_ray({1.0, 1.0});
  cfg.points[0][0] = cplx(0.0, 1.0);  // off its ray
  CHECK_THROWS_AS(check_radial(cfg, RadialMode::Eq11), Error);
}

TEST_CASE("schur example and independent distances") {
  std::vector<cplx> z;
  for (double a : {0.0, 2.0, 4.3}) z.push_back(std::polar(1.0, a));
  const auto rep = check_circle_pair(z, 2.0, 1.0, 0.0);
  CHECK(rep.name == "schur");
  CHECK(rep.lhs == doctest::Approx(ordered_vandermonde(z)).epsilon(1e-13));
  CHECK(rep.rhs == doctest::Approx(27.0).epsilon(1e-13));
  CHECK(rep.lhs <= 27.0);
  CHECK(rep.passed);

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    std::vector<cplx> w;
    const int n = 2 + i % 5;
    for (int k = 0; k < n; ++k) w.push_back(std::polar(1.5, u(rng)));
    const auto r = check_circle_pair(w, 3.0, 1.0, 0.0);
    CHECK(r.lhs == doctest::Approx(ordered_vandermonde(w)).epsilon(1e-12));
    CHECK(r.passed);
  }
}

TEST_CASE("circle pair at symmetric input is an equality") {
  std::vector<cplx> z;
  for (int k = 0; k < 3; ++k) z.push_back(std::polar(1.0, 2.0 * kPi * k / 3.0 + 0.4));
  for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{1.0, 1.0}, std::pair{0.5, -2.0}}) {
    const auto rep = check_circle_pair(z, 2.0, a, b);
    CHECK(rep.equality);
  }
}

TEST_CASE("thm4 extremal configurations") {
  for (int n : {2, 3})
    for (double big_r : {1.0, 2.0}) {
      CAPTURE(n);
      CAPTURE(big_r);
      const auto rep = check_thm4(Thm4Config::extremal(n, big_r));
      const double expect = std::pow(n, -n) * std::pow(big_r, n * (n + 1));
      CHECK(rel(rep.lhs, expect) <= 1e-9 * std::max(1.0, expect));
      CHECK(std::abs(rep.rhs - expect) <= 1e-9 * expect);
      CHECK(rep.equality);
    }
  CHECK(check_thm4(Thm4Config::extremal(2, 1.0)).rhs == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("thm5 and thm6 extremal configurations") {
  const auto five = check_thm5(PairConfig::thm5_extremal(2, 1.0, 4.0));
  CHECK(five.rhs == doctest::Approx(33.1776).epsilon(1e-10));
  CHECK(thm5_bound(2, 1.0, 4.0) == doctest::Approx(std::pow(2.4, 4)).epsilon(1e-13));
  CHECK(std::abs(five.lhs - five.rhs) <= 1e-6);
  CHECK(five.equality);
  const auto six = check_thm6(PairConfig::thm6_extremal(2, 1.0));
  CHECK(std::abs(six.lhs - 1.0) <= 1e-6);
  CHECK(six.rhs == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(six.equality);
  for (int n : {1, 3, 4}) {
    CAPTURE(n);
    CHECK(check_thm5(PairConfig::thm5_extremal(n, 0.5, 2.0)).equality);
    CHECK(check_thm6(PairConfig::thm6_extremal(n, 1.5)).equality);
    CHECK(thm6_bound(n, 1.5) == doctest::Approx(std::pow(3.0 / n, 2 * n)).epsilon(1e-13));
  }
}

TEST_CASE("thm4 rejects overlapping domains") {
  auto cfg = Thm4Config::extremal(2, 1.0);
  cfg.domains[0] = CanonicalDomain::disk(-0.5, 0.6);
  cfg.points[0] = -0.5;
  CHECK_THROWS_AS(check_thm4(cfg), Error);
}

TEST_CASE("lemma2 examples") {
  const auto sym = lemma2_decompose(kUnit, 0.5, -0.5);
  CHECK(sym.product == doctest::Approx(0.36).epsilon(1e-13));
  CHECK(std::sqrt(sym.product) == doctest::Approx(0.6).epsilon(1e-13));
  CHECK(lemma2_decompose(kUnit, 0.0, 0.5).product == doctest::Approx(0.1875).epsilon(1e-13));
  CHECK(sym.log_product == doctest::Approx(std::log(0.36)).epsilon(1e-13));
  CHECK_THROWS_AS(lemma2_decompose(kUnit, 0.5, 0.5), Error);
}

TEST_CASE("lemma2 level-set decomposition with the solver") {
  const fem::SolveOptions opts;
  const auto res = lemma2_decompose(kUnit, 0.5, -0.5, &opts);
  REQUIRE(res.numeric_r1);
  REQUIRE(res.numeric_r2);
  CHECK(*res.numeric_r1 == doctest::Approx(0.6).epsilon(1e-2));
  CHECK(*res.numeric_r2 == doctest::Approx(0.6).epsilon(1e-2));
}

TEST_CASE("thm7 identity examples") {
  const auto id = AnalyticFunction::identity();
  const auto unit = analytic::CompactSet::closed_disk(1.0);
  const auto one = check_thm7(id, unit, 0.0, {0.5});
  CHECK(std::abs(one.lhs - 1.0) <= 1e-9);
  CHECK(std::abs(one.rhs - 4.0 / 3.0) <= 1e-9);
  CHECK(one.passed);
  const auto two = check_thm7(id, unit, 0.0, {0.5, -0.5});
  CHECK(std::abs(two.lhs - 1.0) <= 1e-9);
  CHECK(std::abs(two.rhs - 1.0 / 0.87890625) <= 1e-9);
  CHECK(two.passed);
  const auto big = check_thm7(id, analytic::CompactSet::closed_disk(2.0), 0.0, {0.5});
  CHECK(big.precondition_failed);
  CHECK_FALSE(big.violated());
  CHECK(check_thm7(id, analytic::CompactSet::segment(4.0), 0.0, {0.5}).passed);
}

TEST_CASE("k functional examples") {
  const auto k = k_functional(CanonicalDomain::disk(0.0, 2.0), 1.0);
  CHECK(std::abs(k.value - 4.0 / 9.0) <= 1e-6);
  CHECK(k.exponent == doctest::Approx(2.0).epsilon(1e-2));

  for (double theta : {0.4, 1.9, -2.5}) {
    const cplx e = std::polar(1.0, theta);
    const auto rotated = CanonicalDomain::mobius_image(CanonicalDomain::disk(0.0, 2.0), MobiusMap::scaling(e));
    CHECK(std::abs(k_functional(rotated, e).value - k.value) <= 1e-10);
  }

  const auto f = AnalyticFunction::power_of_mobius(MobiusMap(1.0, 1.0, -1.0, 1.0), 2.0);
  const auto image = f.image_of_unit_disk();
  REQUIRE(image);
  CHECK(std::abs(k_functional(*image, 1.0).value - 0.125) <= 1e-6);
  CHECK_THROWS_AS(k_functional(kUnit, 0.0), Error);
}

TEST_CASE("thm8 extremal sums and mode agreement") {
  const auto n1 = check_thm8(thm8_extremals(1), Thm8Mode::Schwarzian, DerivativeSource::Exact);
  CHECK(std::abs(n1.lhs - 0.125) <= 1e-9);
  CHECK(n1.rhs == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(n1.equality);
  const auto n2 = check_thm8(thm8_extremals(2), Thm8Mode::Schwarzian, DerivativeSource::Numeric);
  CHECK(std::abs(n2.lhs - 0.5) <= 1e-3);
  CHECK(n2.passed);
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const auto fs = thm8_extremals(n);
    const auto s = check_thm8(fs, Thm8Mode::Schwarzian);
    const auto k = check_thm8(fs, Thm8Mode::KFunctional);
    CHECK(std::abs(s.lhs - k.lhs) <= 1e-4);
    CHECK(s.rhs == doctest::Approx(n * (n * n + 2) / 24.0).epsilon(1e-14));
    CHECK(s.passed);
    CHECK(k.passed);
  }
  // Single-function term: f'(0) = 4, S_f(0) = -6, f(0) = 1.
  CHECK(thm8_term(thm8_extremals(1)[0], DerivativeSource::Exact) == doctest::Approx(1.0 / 16.0 + 1.0 / 16.0).epsilon(1e-14));
  const auto box = AnalyticFunction::black_box([](cplx z) { return z; }, "box");
  CHECK_THROWS_AS(thm8_term(box, DerivativeSource::Exact), Error);
}

TEST_CASE("nehari and goluzin examples") {
  const auto small = two_disks(0.5, -0.5, 0.4, 1.0, -1.0);
  const auto eq = check_nehari(small, &small, NehariMode::General);
  CHECK(eq.equality);
  CHECK(std::abs(eq.lhs - eq.rhs) <= 1e-12);
  CHECK(std::abs(eq.margin) <= 1e-12);

  const auto large = CondenserSpec::single(CanonicalDomain::disk(0.0, 2.0), {PlateSpec{0.5, 1.0, {}}, PlateSpec{-0.5, -1.0, {}}});
  const auto nested = check_nehari(small, &large, NehariMode::General);
  CHECK(nested.passed);
  CHECK(nested.margin > 0.0);

  const auto gol = check_nehari(two_disks(0.0, 1.0, 0.4, 1.0, -1.0), nullptr, NehariMode::Goluzin);
  CHECK(gol.lhs == doctest::Approx(0.16).epsilon(1e-14));
  CHECK(gol.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gol.passed);

  CHECK_THROWS_AS(check_nehari(two_disks(0.0, 1.0, 0.4, 1.0, 1.0), nullptr, NehariMode::Goluzin), Error);
  CHECK_THROWS_AS(check_nehari(large, &small, NehariMode::General), Error);
}

TEST_CASE("every check holds over 200 seeded random trials") {
  for (const auto& name : sweep_checks()) {
    CAPTURE(name);
    const auto s = random_sweep(name, 20240101, 200);
    CHECK(s.trials == 200);
    CHECK(s.violations == 0);
    CHECK(s.skipped < s.trials);
    CHECK(s.min_relative_margin >= -1e-10);
  }
}

TEST_CASE("sweeps are deterministic in the seed") {
  const auto a = random_sweep("eq11", 5, 50), b = random_sweep("eq11", 5, 50), c = random_sweep("eq11", 6, 50);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.min_relative_margin == b.min_relative_margin);
  CHECK(a.min_margin != c.min_margin);
  CHECK_THROWS_AS(random_sweep("no-such-check", 1, 10), Error);
  CHECK_THROWS_AS(random_sweep("eq11", 1, 0), Error);
}

TEST_CASE("report helpers") {
  const auto r = make_report("x", Relation::LessEqual, 1.0, 1.0 + 1e-12, 1e-10);
  CHECK(r.passed);
  CHECK(r.equality);
  const auto v = make_report("x", Relation::GreaterEqual, 1.0, 2.0, 1e-10);
  CHECK_FALSE(v.passed);
  CHECK(v.violated());
  CHECK(v.margin == doctest::Approx(-1.0));
  auto reported = v;
  reported.asserted = false;
  CHECK_FALSE(reported.violated());
  CHECK(std::string(kConventionVersion) == "ordered-tuples/drop-zero-infinite/v1");
}

TEST_CASE("haliste at the symmetric configuration gives zero differences") {
  // Bit-identical directions: identical meshes, so exactly zero.
  const std::vector<cplx> exact{std::polar(1.0, 0.0), std::polar(1.0, kPi)};
  const auto rep = haliste_explore(exact, {{0.5, 1.0}}, {0.25}, fem::SolveOptions{});
  REQUIRE(rep.rows.size() == 1);
  const auto& row = rep.rows[0];
  CHECK_FALSE(row.failed);
  CHECK(row.double_report.lhs == row.double_report.rhs);
  CHECK(row.inner_report.lhs == row.inner_report.rhs);
  CHECK(row.conjecture.lhs == row.conjecture.rhs);
  CHECK_FALSE(row.conjecture.asserted);
  CHECK(rep.asserted_hold());

  // -1 differs from polar(1, pi) in the last bit of the imaginary part.
  const auto near = haliste_explore({1.0, -1.0}, {{0.5, 1.0}}, {0.25}, fem::SolveOptions{});
  for (const auto* r : {&near.rows[0].double_report, &near.rows[0].inner_report, &near.rows[0].conjecture}) {
    CAPTURE(r->name);
    CHECK(std::abs(r->lhs - r->rhs) <= r->tolerance);
    CHECK(r->equality);
  }
}

TEST_CASE("haliste example a = {1, exp(2.5 i)}") {
  const auto rep = haliste_explore({1.0, std::polar(1.0, 2.5)}, {{0.5, 1.0}}, {0.25}, fem::SolveOptions{});
  REQUIRE(rep.rows.size() == 1);
  const auto& row = rep.rows[0];
  CHECK_FALSE(row.failed);
  CHECK(row.inner_report.passed);
  CHECK(row.double_report.passed);
  CHECK_FALSE(row.conjecture.asserted);
  CHECK(std::isfinite(row.conjecture.margin));
}

TEST_CASE("haliste values approach the slit-free disk as K shrinks to {1}") {
  const std::vector<cplx> a{1.0, std::polar(1.0, 2.5)};
  const double r = 0.25;
  const double single_disk = 2.0 * kPi * std::log(1.0 / r);
  double previous_gap = INFINITY;
  for (double lo : {0.5, 0.8, 0.95}) {
    CAPTURE(lo);
    const auto rep = haliste_explore(a, {{lo, 1.0}}, {r}, fem::SolveOptions{});
    const auto& row = rep.rows[0];
    const double gap = std::max(std::abs(row.given.single - single_disk), std::abs(row.symmetric.single - single_disk));
    CHECK(gap < previous_gap);
    CHECK(std::abs(row.given.inner_radius - 1.0) <= std::abs(1.0 - lo) + 1e-2);
    previous_gap = gap;
  }
  CHECK(previous_gap <= 2e-2);
}

TEST_CASE("haliste input validation") {
  const fem::SolveOptions opts;
  CHECK_THROWS_AS(haliste_explore({1.0, 1.0}, {{0.5, 1.0}}, {0.25}, opts), Error);
  CHECK_THROWS_AS(haliste_explore({1.0, 2.0}, {{0.5, 1.0}}, {0.25}, opts), Error);
  CHECK_THROWS_AS(haliste_explore({1.0, -1.0}, {{0.0, 1.0}}, {0.25}, opts), Error);
  CHECK_THROWS_AS(haliste_explore({1.0, -1.0}, {{0.5, 1.0}}, {1.5}, opts), Error);
}

}  // TEST_SUITE
