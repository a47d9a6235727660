#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "condenser/analytic/domain.hpp"
#include "condenser/fem/mesh.hpp"
#include "condenser/fem/solver.hpp"

using namespace condenser;
using namespace condenser::fem;
using core::CondenserSpec;
using core::PlateSpec;
using analytic::CanonicalDomain;

namespace {

const CanonicalDomain kUnit = CanonicalDomain::disk(0.0, 1.0);
const double kRing = std::log(10.0) / (2.0 * kPi);

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double triangle_area(const Mesh& m, const std::array<std::int32_t, 3>& t) {
  return 0.5 * cross(m.nodes[t[1]] - m.nodes[t[0]], m.nodes[t[2]] - m.nodes[t[0]]);
}

// Proper crossing: the open segments intersect at an interior point of both,
// with every endpoint at least `eps` away from the other segment's line.
bool properly_crosses(cplx p, cplx q, const Segment& s, double eps) {
  const double ls = std::abs(s.b - s.a), le = std::abs(q - p);
  const double d1 = cross(s.b - s.a, p - s.a) / ls, d2 = cross(s.b - s.a, q - s.a) / ls;
  const double d3 = cross(q - p, s.a - p) / le, d4 = cross(q - p, s.b - p) / le;
  return d1 * d2 < 0.0 && d3 * d4 < 0.0 && std::abs(d1) > eps && std::abs(d2) > eps && std::abs(d3) > eps &&
         std::abs(d4) > eps;
}

PlateOutline circle_plate(cplx c, double rad) { return {c, [rad](double) { return rad; }, rad}; }

std::vector<cplx> sunflower(int n, double radius) {
  std::vector<cplx> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) out.push_back(std::polar(radius * std::sqrt((i + 0.5) / n), golden * i));
  return out;
}

}  // namespace

TEST_SUITE("fem") {

TEST_CASE("delaunay of a square grid") {
  std::vector<cplx> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) pts.emplace_back(0.2 * i - 0.4, 0.2 * j - 0.4);
  const auto tris = delaunay(pts);
  CHECK(tris.size() == 32);
  double area = 0.0;
  for (const auto& t : tris) {
    const double a = 0.5 * cross(pts[t[1]] - pts[t[0]], pts[t[2]] - pts[t[0]]);
    CHECK(a > 0.0);
    area += a;
  }
  CHECK(area == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("mesh invariants with a plate and an axis slit") {
  MeshGeometry g;
  g.plates.push_back(circle_plate(0.3, 0.05));
  g.slits.push_back({cplx(-0.9, 0.0), cplx(-0.4, 0.0)});
  const Mesh m = build_mesh(g, MeshParams{});
  CHECK(m.constraints_resolved);
  CHECK(m.size() == m.kind.size());
  CHECK(m.size() == m.plate_of.size());
  double area = 0.0;
  for (const auto& t : m.triangles) {
    const double a = triangle_area(m, t);
    CHECK(a > 0.0);
    area += a;
  }
  // Polygon inscribed in the unit disk, minus the plate.
  CHECK(area < kPi);
  CHECK(area > kPi - kPi * 0.0025 - 0.01);
  int outer = 0, plate = 0, slit = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(std::abs(m.nodes[i]) <= 1.0 + 1e-8);  // lattice snapping
    switch (m.kind[i]) {
      case NodeKind::Outer: ++outer; CHECK(std::abs(std::abs(m.nodes[i]) - 1.0) <= 1e-8); break;
      case NodeKind::Plate: ++plate; CHECK(m.plate_of[i] == 0); CHECK(std::abs(m.nodes[i] - 0.3) <= 0.05 + 1e-8); break;
      case NodeKind::Slit: ++slit; CHECK(std::abs(m.nodes[i].imag()) <= 1e-8); break;
      default: break;
    }
  }
  CHECK(outer > 0);
  CHECK(plate >= 64);
  CHECK(slit > 0);

  std::ostringstream os;
  m.write_text(os);
  std::istringstream is(os.str());
  std::string word;
  std::size_t count = 0;
  is >> word >> count;
  CHECK(word == "nodes");
  CHECK(count == m.size());
}

TEST_CASE("oblique slits resolve without runaway refinement") {
  MeshGeometry g;
  const cplx dir = std::polar(1.0, 0.7);
  const Segment s{0.2 * dir, 0.9 * dir};
  g.slits.push_back(s);
  g.slits.push_back({0.5 * std::polar(1.0, 2.9), 1.0 * std::polar(1.0, 2.9)});
  g.refine_points.push_back(0.0);
  MeshParams p;
  p.far_size = 0.02;
  const Mesh m = build_mesh(g, p);
  CHECK(m.constraints_resolved);
  CHECK(m.size() < 40000);
  int crossings = 0;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e)
      for (const auto& sl : g.slits)
        if (properly_crosses(m.nodes[t[e]], m.nodes[t[(e + 1) % 3]], sl, 1e-7)) ++crossings;
  CHECK(crossings == 0);
}

TEST_CASE("dirichlet energy of linear and constant fields") {
  MeshGeometry g;
  const Mesh m = build_mesh(g, MeshParams{});
  double area = 0.0;
  for (const auto& t : m.triangles) area += triangle_area(m, t);
  std::vector<double> x(m.size()), c(m.size(), 3.0);
  for (std::size_t i = 0; i < m.size(); ++i) x[i] = 2.0 * m.nodes[i].real() - m.nodes[i].imag();
  CHECK(dirichlet_energy(m, x) == doctest::Approx(5.0 * area).epsilon(1e-10));
  CHECK(std::abs(dirichlet_energy(m, c)) <= 1e-12);
}

TEST_CASE("harmonic solve reproduces linear boundary data") {
  MeshGeometry g;
  g.plates.push_back(circle_plate({0.2, 0.1}, 0.1));
  const Mesh m = build_mesh(g, MeshParams{});
  std::vector<double> data(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.is_dirichlet(i)) data[i] = m.nodes[i].real() + 0.5 * m.nodes[i].imag();
  const auto sol = solve_harmonic(m, data, 1e-12, 100000);
  CHECK(sol.cg.converged);
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    worst = std::max(worst, std::abs(sol.values[i] - (m.nodes[i].real() + 0.5 * m.nodes[i].imag())));
  CHECK(worst <= 1e-9);
}

TEST_CASE("level fit") {
  const auto fit = fit_levels({1.5, 1.125, 1.03125});
  CHECK(fit.order == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.extrapolated == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.finest == 1.03125);
  const auto flat = fit_levels({1.0, 1.0, 1.0});
  CHECK(flat.order == 0.0);
  CHECK(flat.error == 0.0);
  const auto osc = fit_levels({1.0, 1.1, 1.05});
  CHECK(osc.order == 0.0);
  CHECK(osc.error == doctest::Approx(0.1));
  CHECK_THROWS_AS(fit_levels({}), Error);
}

TEST_CASE("ring calibration") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {}}});
  const auto est = condenser_module_numeric(spec, 0.1, SolveOptions{});
  CHECK(std::abs(est.value - kRing) / kRing <= 1e-3);
  REQUIRE(est.history.size() == 3);
  CHECK(est.max_principle_violation <= 1e-10);
  CHECK(est.accuracy_reached);

  SUBCASE("every level from the third on is within 1e-3") {
    SolveOptions four;
    four.min_levels = four.max_levels = 4;
    const auto deep = condenser_module_numeric(spec, 0.1, four);
    REQUIRE(deep.history.size() == 4);
    for (std::size_t level = 3; level <= 4; ++level) CHECK(std::abs(deep.history[level - 1] - kRing) / kRing <= 1e-3);
    CHECK(deep.observed_order >= 1.0);
  }
  SUBCASE("potential scaling") {
    const auto est2 = condenser_module_numeric(spec.scaled_potentials(2.0), 0.1, SolveOptions{});
    CHECK(est2.value == doctest::Approx(est.value / 4.0).epsilon(1e-9));
    CHECK(est2.max_principle_violation <= 1e-10);
  }
  SUBCASE("determinism") {
    const auto again = condenser_module_numeric(spec, 0.1, SolveOptions{});
    CHECK(again.value == est.value);
    CHECK(again.history == est.history);
    CHECK(again.node_counts == est.node_counts);
  }
}

TEST_CASE("exterior field set through inversion") {
  // {|z| > 1} with the plate {|z| >= 1/r} at infinity: ring 1 < |z| < 10.
  const auto ext = CanonicalDomain::exterior_disk(0.0, 1.0);
  const auto spec = CondenserSpec::single(ext, {PlateSpec{analytic::SpherePoint::infinity(), 1.0, {}}});
  const auto est = condenser_module_numeric(spec, 0.1, SolveOptions{});
  CHECK(std::abs(est.value - kRing) / kRing <= 1e-3);
}

TEST_CASE("module decreases as the plate grows") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{cplx(0.1, 0.05), 1.0, {}}});
  double previous = INFINITY;
  for (double r : {0.02, 0.04, 0.08, 0.12, 0.16}) {
    CAPTURE(r);
    const auto est = condenser_module_numeric(spec, r, SolveOptions{});
    CHECK(est.value < previous);
    previous = est.value;
  }
}

TEST_CASE("maximum principle with mixed potentials") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.5, 1.0, {}}, PlateSpec{-0.5, -2.0, {}}});
  const auto est = condenser_module_numeric(spec, 0.05, SolveOptions{});
  CHECK(est.max_principle_violation <= 1e-10);
  CHECK(est.value > 0.0);
}

TEST_CASE("two plates agree with the reduced-module prediction") {
  const auto spec = CondenserSpec::single(kUnit, {PlateSpec{0.5, 1.0, {}}, PlateSpec{-0.5, 1.0, {}}});
  const double r = 1e-2;
  const auto red = core::reduced_module(spec);
  const auto est = condenser_module_numeric(spec, r, SolveOptions{});
  CHECK(std::abs(est.value - (-red.nu / (2.0 * kPi) * std::log(r) + red.value)) <= 2e-2);
}

TEST_CASE("half-plane field set") {
  const auto hp = CanonicalDomain::half_plane(0.0, 1.0);
  const auto spec = CondenserSpec::single(hp, {PlateSpec{1.0, 1.0, {}}});
  const double r = 1e-2;
  const auto est = condenser_module_numeric(spec, r, SolveOptions{});
  // Exact: the plate maps to a disk of a ring-like condenser; log(2/r) to O(r^2).
  CHECK(est.value == doctest::Approx(std::log(2.0 / r) / (2.0 * kPi)).epsilon(1e-3));
}

TEST_CASE("solver error paths") {
  SolveOptions opts;
  CHECK_THROWS_AS(condenser_module_numeric(CondenserSpec::single(kUnit, {PlateSpec{0.95, 1.0, {}}}), 0.1, opts), Error);
  try {
    condenser_module_numeric(CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {}}, PlateSpec{0.15, 1.0, {}}}), 0.1, opts);
    FAIL("expected overlapping plates to be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Geometry);
  }
  try {
    SolveOptions tiny;
    tiny.max_cg_iterations = 1;
    condenser_module_numeric(CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {}}}), 0.1, tiny);
    FAIL("expected a numeric failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NumericFailure);
  }
  SolveOptions bad;
  bad.min_levels = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(condenser_module_numeric(CondenserSpec::single(kUnit, {PlateSpec{0.0, 1.0, {}}}), 1.5, opts), Error);
}

TEST_CASE("numeric green of the unit disk") {
  const cplx zeta = 0.5;
  const auto g = numeric_green(NumericDomain::unit_disk(), zeta, SolveOptions{});
  double worst = 0.0;
  int used = 0;
  for (cplx z : sunflower(120, 0.95)) {
    if (std::abs(z - zeta) < 0.05 || used == 100) continue;
    ++used;
    worst = std::max(worst, std::abs(g(z) - analytic::green(kUnit, z, zeta)));
  }
  CHECK(used == 100);
  CHECK(worst <= 1e-3);
  CHECK(g.log_inner_radius() == doctest::Approx(std::log(0.75)).epsilon(5e-3));
}

TEST_CASE("numeric green reflection symmetry") {
  const auto dom = NumericDomain::radially_slit_disk({cplx(0.0, 1.0), cplx(0.0, -1.0)}, {{0.5, 1.0}});
  const auto g = numeric_green(dom, 0.3, SolveOptions{});
  for (cplx z : {cplx(0.1, 0.4), cplx(-0.6, 0.2), cplx(0.7, 0.1), cplx(-0.2, 0.8)})
    CHECK(std::abs(g(z) - g(std::conj(z))) <= std::max(2e-3, 3.0 * g.error_estimate()));
}

TEST_CASE("numeric green domain monotonicity in K") {
  const std::vector<cplx> dirs{cplx(0.0, 1.0), cplx(-1.0, 0.0)};
  double previous = -INFINITY;
  for (double lo : {0.5, 0.7, 0.9}) {
    CAPTURE(lo);
    const auto g = numeric_green(NumericDomain::radially_slit_disk(dirs, {{lo, 1.0}}), 0.5, SolveOptions{});
    const double v = g(0.0);
    CHECK(v >= previous - 3.0 * g.error_estimate());
    previous = v;
  }
  CHECK(previous <= std::log(2.0) + 1e-3);
}

TEST_CASE("numeric inner radius examples") {
  const SolveOptions opts;
  const auto a = numeric_inner_radius(NumericDomain::unit_disk(), 0.0, opts);
  CHECK(std::abs(a.value - 1.0) <= 5e-3);
  const auto b = numeric_inner_radius(NumericDomain::unit_disk(), 0.5, opts);
  CHECK(std::abs(b.value - 0.75) <= 5e-3);
  const auto c = numeric_inner_radius(NumericDomain::radially_slit_disk({1.0, -1.0}, {{1.0, 1.0}}), 0.0, opts);
  CHECK(std::abs(c.value - 1.0) <= 5e-3);
  const auto d = numeric_inner_radius(NumericDomain::disk(cplx(1.0, -1.0), 2.0), cplx(1.0, -1.0), opts);
  CHECK(std::abs(d.value - 2.0) <= 1e-2);
}

TEST_CASE("circle green integrals on the unit disk") {
  const SolveOptions opts;
  const auto single = circle_green_integral(NumericDomain::unit_disk(), 0.5, opts);
  CHECK(single.value == doctest::Approx(2.0 * kPi * std::log(2.0)).epsilon(1e-3));
  const auto twice = double_circle_green_integral(NumericDomain::unit_disk(), 0.5, opts);
  CHECK(twice.value == doctest::Approx(4.0 * kPi * kPi * std::log(2.0)).epsilon(1e-3));
  CHECK(twice.cross_check == doctest::Approx(2.0 * kPi * std::log(2.0)).epsilon(1e-3));
  CHECK_FALSE(twice.low_accuracy);
}

TEST_CASE("numeric domain geometry") {
  const auto d = NumericDomain::radially_slit_disk({1.0, cplx(0.0, 1.0)}, {{0.5, 1.0}});
  CHECK(d.slits().size() == 2);
  CHECK_FALSE(d.contains(0.75));
  CHECK(d.contains(0.25));
  CHECK(d.contains(cplx(0.5, 0.5)));
  CHECK(d.distance_to_boundary(0.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(numeric_green(d, 0.75, SolveOptions{}), Error);
  CHECK_THROWS_AS(NumericDomain::radially_slit_disk({1.0}, {{0.0, 1.0}}), Error);
}

TEST_CASE("plate shapes") {
  const auto sq = PlateShape::square(1.0);
  const double r = 1.0 / 16.0;
  CHECK(sq.satisfies_sandwich());
  for (double t = 0.0; t < 2.0 * kPi; t += 0.1) CHECK(sq.radial(t, r, r) >= r);
  CHECK(sq.max_radial(r, r) >= sq.radial(kPi / 4.0, r, r) - 1e-15);
  CHECK(sq.excess(r) == doctest::Approx(1.0 / std::log(16.0)));
  PlateShape fixed = sq;
  fixed.fixed_excess = true;
  CHECK_FALSE(fixed.satisfies_sandwich());
  CHECK(PlateShape::circle().radial(1.0, 0.3, r) == 0.3);
  CHECK(parse_plate_kind("ellipse") == PlateShape::Kind::Ellipse);
  CHECK_THROWS_AS(parse_plate_kind("star"), Error);
}

}  // TEST_SUITE
