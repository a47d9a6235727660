#include "condenser/fem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace condenser::fem {
namespace {

using analytic::MobiusMap;
using analytic::SpherePoint;

struct Circle {
  cplx center;
  double radius;
};

Circle circumcircle(cplx a, cplx b, cplx c) {
  const cplx ba = b - a;
  const cplx ca = c - a;
  const double den = 2.0 * (ba.real() * ca.imag() - ba.imag() * ca.real());
  require(den != 0.0, ErrorKind::Geometry, "degenerate plate image");
  const double bn = std::norm(ba);
  const double cn = std::norm(ca);
  const cplx center = a + cplx((ca.imag() * bn - ba.imag() * cn) / den, (ba.real() * cn - ca.real() * bn) / den);
  return {center, std::abs(a - center)};
}

// One simply connected piece of the field set, mapped to the unit disk.
struct ComponentProblem {
  MeshGeometry geometry;
  std::vector<double> deltas;  // per plate in geometry.plates
};

MeshParams level_params(const SolveOptions& opts, int level) {
  MeshParams p;
  p.ring_nodes = opts.base_ring_nodes << level;
  p.far_size = std::ldexp(opts.far_field_size, -level);
  return p;
}

void check_plates(const MeshGeometry& g) {
  for (std::size_t l = 0; l < g.plates.size(); ++l) {
    const PlateOutline& a = g.plates[l];
    require(std::abs(a.center) + a.max_radius < 1.0, ErrorKind::Geometry, "plate meets the complement of the field");
    for (std::size_t j = 0; j < l; ++j) {
      const PlateOutline& b = g.plates[j];
      require(std::abs(a.center - b.center) > a.max_radius + b.max_radius, ErrorKind::Geometry, "plates overlap");
    }
    for (const Segment& s : g.slits)
      require(distance_to_segment(a.center, s) > a.max_radius, ErrorKind::Geometry, "plate meets a slit");
    if (g.cut) require(g.cut->u(a.center) > 0.0, ErrorKind::Geometry, "plate lies in the cut region");
  }
}

PlateOutline affine_plate(cplx center, double psi, double r, const PlateShape& shape, cplx k, cplx shift) {
  const double mag = std::abs(k);
  const double rot = std::arg(k);
  PlateOutline out;
  out.center = k * center + shift;
  out.max_radius = mag * shape.max_radial(psi, r);
  out.radial = [shape, psi, r, mag, rot](double t) { return mag * shape.radial(t - rot, psi, r); };
  return out;
}

std::vector<ComponentProblem> normalize(const core::CondenserSpec& spec, double r, const std::vector<PlateShape>& shapes) {
  spec.validate();
  require(r > 0.0 && r < 1.0, ErrorKind::InvalidInput, "plate parameter r must lie in (0, 1)");
  require(shapes.empty() || shapes.size() == spec.plates.size(), ErrorKind::InvalidInput, "one plate shape per plate");
  auto shape_of = [&](std::size_t l) { return shapes.empty() ? PlateShape::circle() : shapes[l]; };
  std::vector<ComponentProblem> out;
  if (spec.numeric_field) {
    const NumericDomain& d = *spec.numeric_field;
    const cplx k = 1.0 / d.radius();
    const cplx shift = -d.center() / d.radius();
    ComponentProblem cp;
    for (const Segment& s : d.slits()) cp.geometry.slits.push_back({k * s.a + shift, k * s.b + shift});
    if (d.cut()) {
      const auto u = d.cut()->u;
      const cplx c = d.center();
      const double rad = d.radius();
      cp.geometry.cut = LevelSetCut{[u, c, rad](cplx w) { return u(c + rad * w); }, d.cut()->description};
    }
    for (std::size_t l = 0; l < spec.plates.size(); ++l) {
      const auto& p = spec.plates[l];
      cp.geometry.plates.push_back(affine_plate(p.center.value(), p.law(r), r, shape_of(l), k, shift));
      cp.deltas.push_back(p.delta);
    }
    out.push_back(std::move(cp));
  } else {
    out.resize(spec.components.size());
    for (std::size_t l = 0; l < spec.plates.size(); ++l) {
      const auto& p = spec.plates[l];
      const auto& comp = spec.components[spec.component_of[l]];
      const auto norm = comp.circular_normalizer();
      require(norm.has_value(), ErrorKind::UnsupportedDomain,
              "numeric modules need components bounded by a circle or line: " + comp.describe());
      const MobiusMap& t = *norm;
      const PlateShape shape = shape_of(l);
      const double psi = p.law(r);
      ComponentProblem& cp = out[spec.component_of[l]];
      if (t.is_affine() && p.center.is_finite()) {
        cp.geometry.plates.push_back(affine_plate(p.center.value(), psi, r, shape, t.a() / t.d(), t.b() / t.d()));
      } else {
        require(shape.kind == PlateShape::Kind::Circle, ErrorKind::UnsupportedShape,
                "non-circular plates need a similarity normalization");
        std::array<cplx, 3> img{};
        for (int m = 0; m < 3; ++m) {
          const cplx e = std::polar(1.0, 2.0 * kPi * m / 3.0);
          const cplx z = p.center.is_finite() ? p.center.value() + psi * e : e / psi;
          img[static_cast<std::size_t>(m)] = t(z);
        }
        const Circle c = circumcircle(img[0], img[1], img[2]);
        PlateOutline o;
        o.center = c.center;
        o.max_radius = c.radius;
        const double rad = c.radius;
        o.radial = [rad](double) { return rad; };
        cp.geometry.plates.push_back(std::move(o));
      }
      cp.deltas.push_back(p.delta);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const ComponentProblem& c) { return c.deltas.empty(); }),
              out.end());
  }
  for (const auto& cp : out) check_plates(cp.geometry);
  return out;
}

std::vector<double> plate_data(const Mesh& mesh, const std::vector<double>& deltas) {
  std::vector<double> data(mesh.size(), 0.0);
  for (std::size_t i = 0; i < mesh.size(); ++i)
    if (mesh.kind[i] == NodeKind::Plate) data[i] = deltas[static_cast<std::size_t>(mesh.plate_of[i])];
  return data;
}

struct LevelResult {
  double energy = 0.0;
  std::size_t nodes = 0;
  double violation = 0.0;
};

LevelResult solve_level(const std::vector<ComponentProblem>& problems, const SolveOptions& opts, int level) {
  LevelResult res;
  for (const auto& cp : problems) {
    const Mesh mesh = build_mesh(cp.geometry, level_params(opts, level));
    const auto data = plate_data(mesh, cp.deltas);
    const auto sol = solve_harmonic(mesh, data, opts.linear_tolerance, opts.max_cg_iterations);
    res.energy += sol.energy;
    res.nodes += mesh.size();
    const double lo = std::min(0.0, *std::min_element(cp.deltas.begin(), cp.deltas.end()));
    const double hi = std::max(0.0, *std::max_element(cp.deltas.begin(), cp.deltas.end()));
    for (double v : sol.values) res.violation = std::max({res.violation, lo - v, v - hi});
  }
  return res;
}

// Mean of f over the circle c + rho e^{it} with n equispaced nodes.
template <class F>
double circle_mean(F&& f, cplx c, double rho, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += f(c + rho * std::polar(1.0, 2.0 * kPi * k / n));
  return s / n;
}

struct NormalizedDomain {
  MeshGeometry geometry;
  cplx center;
  double scale;
};

NormalizedDomain normalize(const NumericDomain& d) {
  NormalizedDomain nd;
  nd.center = d.center();
  nd.scale = d.radius();
  for (const Segment& s : d.slits())
    nd.geometry.slits.push_back({(s.a - nd.center) / nd.scale, (s.b - nd.center) / nd.scale});
  if (d.cut()) {
    const auto u = d.cut()->u;
    const cplx c = nd.center;
    const double rad = nd.scale;
    nd.geometry.cut = LevelSetCut{[u, c, rad](cplx w) { return u(c + rad * w); }, d.cut()->description};
  }
  return nd;
}

// Points spread over the unit disk for field comparisons between levels.
std::vector<cplx> probe_points() {
  std::vector<cplx> pts;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < 100; ++k) pts.push_back(0.95 * std::sqrt((k + 0.5) / 100.0) * std::polar(1.0, golden * k));
  return pts;
}

struct GreenLevel {
  std::shared_ptr<const P1Field> h;
};

GreenLevel green_level(const NormalizedDomain& nd, cplx w0, const SolveOptions& opts, int level) {
  MeshGeometry g = nd.geometry;
  g.refine_points.push_back(w0);
  auto mesh = std::make_shared<const Mesh>(build_mesh(g, level_params(opts, level)));
  std::vector<double> data(mesh->size(), 0.0);
  for (std::size_t i = 0; i < mesh->size(); ++i)
    if (mesh->is_dirichlet(i)) data[i] = std::log(std::abs(mesh->nodes[i] - w0));
  auto sol = solve_harmonic(*mesh, data, opts.linear_tolerance, opts.max_cg_iterations);
  auto loc = std::make_shared<const TriangleLocator>(mesh);
  return {std::make_shared<const P1Field>(loc, std::move(sol.values))};
}

int level_count(const SolveOptions& opts) {
  opts.validate();
  return opts.min_levels;
}

}  // namespace

HarmonicSolution solve_harmonic(const Mesh& mesh, const std::vector<double>& data, double tolerance,
                                int max_iterations) {
  require(data.size() == mesh.size(), ErrorKind::InvalidInput, "one Dirichlet value per node");
  const std::size_t n = mesh.size();
  std::vector<std::int32_t> free_index(n, -1);
  std::int32_t nfree = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!mesh.is_dirichlet(i)) free_index[i] = nfree++;
  std::vector<Triplet> trips;
  trips.reserve(mesh.triangles.size() * 9);
  std::vector<double> rhs(static_cast<std::size_t>(nfree), 0.0);
  for (const auto& t : mesh.triangles) {
    const cplx p[3] = {mesh.nodes[static_cast<std::size_t>(t[0])], mesh.nodes[static_cast<std::size_t>(t[1])],
                       mesh.nodes[static_cast<std::size_t>(t[2])]};
    const cplx e[3] = {p[2] - p[1], p[0] - p[2], p[1] - p[0]};
    const double area2 = (std::conj(e[2]) * (-e[1])).imag();
    require(area2 > 0.0, ErrorKind::Geometry, "inverted or degenerate triangle");
    for (int a = 0; a < 3; ++a) {
      const std::int32_t fa = free_index[static_cast<std::size_t>(t[static_cast<std::size_t>(a)])];
      if (fa < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const double k = (e[a] * std::conj(e[b])).real() / (2.0 * area2);
        const std::size_t nb = static_cast<std::size_t>(t[static_cast<std::size_t>(b)]);
        const std::int32_t fb = free_index[nb];
        if (fb >= 0) trips.push_back({fa, fb, k});
        else rhs[static_cast<std::size_t>(fa)] -= k * data[nb];
      }
    }
  }
  const CsrMatrix a = CsrMatrix::from_triplets(nfree, std::move(trips));
  std::vector<double> x(static_cast<std::size_t>(nfree), 0.0);
  HarmonicSolution sol;
  sol.cg = pcg(a, rhs, x, tolerance, max_iterations);
  if (!sol.cg.converged) {
    fail(ErrorKind::NumericFailure, "linear solve did not converge: relative residual " +
                                        std::to_string(sol.cg.relative_residual) + " after " +
                                        std::to_string(sol.cg.iterations) + " iterations");
  }
  sol.values = data;
  for (std::size_t i = 0; i < n; ++i)
    if (free_index[i] >= 0) sol.values[i] = x[static_cast<std::size_t>(free_index[i])];
  sol.energy = dirichlet_energy(mesh, sol.values);
  return sol;
}

double dirichlet_energy(const Mesh& mesh, const std::vector<double>& values) {
  double energy = 0.0;
  for (const auto& t : mesh.triangles) {
    const cplx p0 = mesh.nodes[static_cast<std::size_t>(t[0])];
    const cplx p1 = mesh.nodes[static_cast<std::size_t>(t[1])];
    const cplx p2 = mesh.nodes[static_cast<std::size_t>(t[2])];
    const double u0 = values[static_cast<std::size_t>(t[0])];
    const double u1 = values[static_cast<std::size_t>(t[1])];
    const double u2 = values[static_cast<std::size_t>(t[2])];
    // grad u = i * sum_k u_k e_k / (2 A), e_k the edge opposite vertex k.
    const cplx g = u0 * (p2 - p1) + u1 * (p0 - p2) + u2 * (p1 - p0);
    const double area2 = (std::conj(p1 - p0) * (p2 - p0)).imag();
    energy += std::norm(g) / (2.0 * area2);
  }
  return energy;
}

LevelFit fit_levels(const std::vector<double>& values) {
  require(!values.empty(), ErrorKind::InvalidInput, "no levels to fit");
  LevelFit fit;
  fit.finest = values.back();
  fit.extrapolated = fit.finest;
  const std::size_t n = values.size();
  if (n == 1) return fit;
  if (n == 2) {
    fit.error = std::abs(values[1] - values[0]);
    return fit;
  }
  const double d1 = values[n - 2] - values[n - 3];
  const double d2 = values[n - 1] - values[n - 2];
  if (d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
    fit.order = std::log2(d1 / d2);
    const double tail = d2 / (std::exp2(fit.order) - 1.0);
    fit.extrapolated = fit.finest + tail;
    fit.error = std::abs(tail);
  } else {
    fit.error = std::max(std::abs(d1), std::abs(d2));
  }
  return fit;
}

ModuleEstimate condenser_module_numeric(const core::CondenserSpec& spec, double r, const SolveOptions& opts,
                                        const std::vector<PlateShape>& shapes) {
  opts.validate();
  const auto problems = normalize(spec, r, shapes);
  require(!problems.empty(), ErrorKind::InvalidInput, "no plates to solve for");
  ModuleEstimate est;
  std::vector<double> energies;
  for (int level = 0; level < opts.max_levels; ++level) {
    const LevelResult lr = solve_level(problems, opts, level);
    require(lr.energy > 0.0, ErrorKind::NumericFailure, "zero Dirichlet energy");
    energies.push_back(lr.energy);
    est.history.push_back(1.0 / lr.energy);
    est.ring_nodes.push_back(opts.base_ring_nodes << level);
    est.node_counts.push_back(lr.nodes);
    est.max_principle_violation = std::max(est.max_principle_violation, lr.violation);
    if (level + 1 >= opts.min_levels) {
      const LevelFit fit = fit_levels(est.history);
      est.value = fit.finest;
      est.energy = energies.back();
      est.extrapolated = fit.extrapolated;
      est.error_estimate = fit.error;
      est.observed_order = fit.order;
      est.accuracy_reached = fit.error <= opts.target_relative_error * std::abs(fit.finest);
      if (est.accuracy_reached) break;
    }
  }
  return est;
}

Mesh condenser_mesh(const core::CondenserSpec& spec, double r, const SolveOptions& opts, int level,
                    const std::vector<PlateShape>& shapes) {
  opts.validate();
  const auto problems = normalize(spec, r, shapes);
  require(problems.size() == 1, ErrorKind::UnsupportedDomain, "mesh export supports a single field component");
  return build_mesh(problems[0].geometry, level_params(opts, level));
}

GreenField::GreenField(std::shared_ptr<const P1Field> harmonic, cplx center, double scale, cplx pole_normalized,
                       double error_estimate, const NumericDomain& domain)
    : h_(std::move(harmonic)), center_(center), scale_(scale), pole_(pole_normalized), error_(error_estimate),
      domain_(domain) {}

double GreenField::operator()(cplx z) const {
  if (!domain_.contains(z)) return 0.0;
  const cplx w = to_unit(z);
  if (w == pole_) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log(std::abs(w - pole_)) + (*h_)(w));
}

double GreenField::log_inner_radius() const { return std::log(scale_) + (*h_)(pole_); }

GreenField numeric_green(const NumericDomain& domain, cplx zeta, const SolveOptions& opts) {
  const int levels = level_count(opts);
  require(domain.contains(zeta) && domain.distance_to_boundary(zeta) > 0.0, ErrorKind::InvalidInput,
          "Green pole must be an interior point of the domain");
  const NormalizedDomain nd = normalize(domain);
  const cplx w0 = (zeta - nd.center) / nd.scale;
  std::vector<GreenLevel> lv;
  for (int level = 0; level < levels; ++level) lv.push_back(green_level(nd, w0, opts, level));
  double diff = 0.0;
  for (cplx p : probe_points()) {
    if (!domain.contains(nd.center + nd.scale * p)) continue;
    diff = std::max(diff, std::abs((*lv.back().h)(p) - (*lv[lv.size() - 2].h)(p)));
  }
  // Second-order convergence: the finest error is about a third of the last change.
  return GreenField(lv.back().h, nd.center, nd.scale, w0, diff / 3.0, domain);
}

InnerRadiusEstimate numeric_inner_radius(const NumericDomain& domain, cplx z0, const SolveOptions& opts) {
  const int levels = level_count(opts);
  require(domain.contains(z0) && domain.distance_to_boundary(z0) > 0.0, ErrorKind::InvalidInput,
          "inner radius needs an interior point");
  const NormalizedDomain nd = normalize(domain);
  const cplx w0 = (z0 - nd.center) / nd.scale;
  double dist = domain.distance_to_boundary(z0) / nd.scale;
  if (nd.geometry.cut) {
    // Shrink until a circle around w0 stays on the positive side of the cut.
    while (dist > 1e-6) {
      bool ok = true;
      for (int k = 0; k < 64 && ok; ++k) ok = nd.geometry.cut->u(w0 + dist * std::polar(1.0, 2.0 * kPi * k / 64)) > 0.0;
      if (ok) break;
      dist *= 0.5;
    }
  }
  const double rho = 0.25 * dist;
  InnerRadiusEstimate est;
  std::vector<double> logs;
  for (int level = 0; level < levels; ++level) {
    const GreenLevel g = green_level(nd, w0, opts, level);
    double a[3];
    for (int k = 0; k < 3; ++k) a[k] = circle_mean(*g.h, w0, std::ldexp(rho, -k), opts.quadrature_nodes);
    const double d1 = a[1] - a[0];
    const double d2 = a[2] - a[1];
    if (d1 * d2 < 0.0 && std::max(std::abs(d1), std::abs(d2)) > 1e-3) {
      fail(ErrorKind::NumericFailure, "inner-radius extrapolation is not monotone: " + std::to_string(a[0]) + ", " +
                                          std::to_string(a[1]) + ", " + std::to_string(a[2]));
    }
    // Circle means of a harmonic function are exact; residual differences are
    // discretization effects that shrink like rho^2.
    const double limit = a[2] + d2 / 3.0;
    logs.push_back(std::log(nd.scale) + limit);
    est.history.push_back(std::exp(logs.back()));
  }
  const LevelFit fit = fit_levels(logs);
  est.value = std::exp(fit.finest);
  est.error_estimate = est.value * fit.error;
  return est;
}

CircleIntegral circle_green_integral(const NumericDomain& domain, double r, const SolveOptions& opts, cplx z0) {
  const int levels = level_count(opts);
  require(r > 0.0, ErrorKind::InvalidInput, "circle radius must be positive");
  require(domain.contains(z0), ErrorKind::InvalidInput, "circle center must lie in the domain");
  const NormalizedDomain nd = normalize(domain);
  const cplx w0 = (z0 - nd.center) / nd.scale;
  const double rn = r / nd.scale;
  CircleIntegral out;
  for (int level = 0; level < levels; ++level) {
    const GreenLevel g = green_level(nd, w0, opts, level);
    const double mean = circle_mean(
        [&](cplx w) {
          const cplx z = nd.center + nd.scale * w;
          if (!domain.contains(z)) return 0.0;
          return std::max(0.0, -std::log(rn) + (*g.h)(w));
        },
        w0, rn, opts.quadrature_nodes);
    out.history.push_back(2.0 * kPi * mean);
  }
  const LevelFit fit = fit_levels(out.history);
  out.value = fit.finest;
  out.error_estimate = fit.error;
  const double h_fine = std::ldexp(opts.far_field_size, -(levels - 1));
  for (const Segment& s : nd.geometry.slits) {
    for (cplx e : {s.a, s.b}) out.low_accuracy = out.low_accuracy || std::abs(std::abs(e - w0) - rn) < h_fine;
    out.low_accuracy = out.low_accuracy || distance_to_segment(w0, s) < rn + h_fine;
  }
  return out;
}

CircleIntegral double_circle_green_integral(const NumericDomain& domain, double r, const SolveOptions& opts) {
  const int levels = level_count(opts);
  require(r > 0.0, ErrorKind::InvalidInput, "circle radius must be positive");
  const NormalizedDomain nd = normalize(domain);
  const cplx wc = -nd.center / nd.scale;
  const double rn = r / nd.scale;
  require(domain.contains(0.0), ErrorKind::InvalidInput, "circle center must lie in the domain");
  CircleIntegral out;
  std::vector<double> singles;
  for (int level = 0; level < levels; ++level) {
    MeshGeometry g = nd.geometry;
    g.refine_points.push_back(wc);
    auto mesh = std::make_shared<const Mesh>(build_mesh(g, level_params(opts, level)));
    std::vector<double> data(mesh->size(), 0.0);
    for (std::size_t i = 0; i < mesh->size(); ++i)
      if (mesh->is_dirichlet(i)) data[i] = 2.0 * kPi * std::log(std::max(std::abs(mesh->nodes[i] - wc), rn));
    auto sol = solve_harmonic(*mesh, data, opts.linear_tolerance, opts.max_cg_iterations);
    const P1Field v(std::make_shared<const TriangleLocator>(mesh), std::move(sol.values));
    const double mean_v = circle_mean(v, wc, rn, opts.quadrature_nodes);
    out.history.push_back(-4.0 * kPi * kPi * std::log(rn) + 2.0 * kPi * mean_v);
    singles.push_back(-2.0 * kPi * std::log(rn) + v(wc));
  }
  const LevelFit fit = fit_levels(out.history);
  out.value = fit.finest;
  out.error_estimate = fit.error;
  out.cross_check = singles.back();
  for (const Segment& s : nd.geometry.slits)
    out.low_accuracy = out.low_accuracy || distance_to_segment(wc, s) < rn;
  return out;
}

}  // namespace condenser::fem
