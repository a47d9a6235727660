#include "condenser/analytic/domain.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace condenser::analytic {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTouch = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct LocalStep {
  SpherePoint out;
  cplx derivative;  // d(local out) / d(local in); local coordinate at infinity is 1/z
};

LocalStep mobius_step(const MobiusMap& g, const SpherePoint& z) {
  const SpherePoint out = g(z);
  const cplx det = g.determinant();
  if (z.is_finite()) {
    const cplx w = z.value();
    if (out.is_finite()) {
      const cplx den = g.c() * w + g.d();
      return {out, det / (den * den)};
    }
    const cplx num = g.a() * w + g.b();
    return {out, -det / (num * num)};
  }
  if (out.is_finite()) return {out, -det / (g.c() * g.c())};
  return {out, det / (g.a() * g.a())};
}

// Right half-plane t -> unit disk, t0 = 1 -> 0.
UniformizerJet half_plane_to_disk(cplx t, cplx dt) {
  const cplx den = t + 1.0;
  return {(t - 1.0) / den, 2.0 / (den * den) * dt};
}

cplx unit(cplx v, const char* what) {
  const double m = std::abs(v);
  require(m > 0.0 && std::isfinite(m), ErrorKind::InvalidInput, std::string(what) + " must be a nonzero direction");
  return v / m;
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return d > kPi ? 2.0 * kPi - d : d;
}

double distance_to_ray(cplx c, cplx origin, cplx direction) {
  const cplx rel = (c - origin) * std::conj(direction);
  if (rel.real() <= 0.0) return std::abs(c - origin);
  return std::abs(rel.imag());
}

bool sector_contains(const Sector& s, cplx z) {
  const cplx rel = (z - s.vertex) / s.bisector;
  if (rel == cplx(0.0)) return false;
  if (s.opening >= 2.0 * kPi) return !(rel.imag() == 0.0 && rel.real() < 0.0);
  return std::abs(std::arg(rel)) < 0.5 * s.opening;
}

double min_distance_to_sector_rays(const Sector& s, cplx c) {
  const cplx e1 = s.bisector * std::polar(1.0, 0.5 * s.opening);
  const cplx e2 = s.bisector * std::polar(1.0, -0.5 * s.opening);
  return std::min(distance_to_ray(c, s.vertex, e1), distance_to_ray(c, s.vertex, e2));
}

std::string fmt(cplx z) { return SpherePoint(z).to_string(); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool same_domain(const CanonicalDomain& a, const CanonicalDomain& b) { return a.describe() == b.describe(); }

}  // namespace

CanonicalDomain CanonicalDomain::disk(cplx center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidInput, "disk radius must be positive");
  return CanonicalDomain(Disk{center, radius});
}

CanonicalDomain CanonicalDomain::exterior_disk(cplx center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidInput, "exterior disk radius must be positive");
  return CanonicalDomain(ExteriorDisk{center, radius});
}

CanonicalDomain CanonicalDomain::half_plane(cplx boundary_point, cplx inward_normal) {
  return CanonicalDomain(HalfPlane{boundary_point, unit(inward_normal, "half-plane normal")});
}

CanonicalDomain CanonicalDomain::sector(cplx vertex, cplx bisector, double opening) {
  require(opening > 0.0 && opening <= 2.0 * kPi, ErrorKind::InvalidInput, "sector opening must lie in (0, 2pi]");
  return CanonicalDomain(Sector{vertex, unit(bisector, "sector bisector"), opening});
}

CanonicalDomain CanonicalDomain::power_preimage(double threshold, int order) {
  require(threshold > 0.0, ErrorKind::InvalidInput, "power preimage threshold must be positive");
  require(order >= 1, ErrorKind::InvalidInput, "power preimage order must be >= 1");
  return CanonicalDomain(PowerPreimage{threshold, order, std::nullopt});
}

CanonicalDomain CanonicalDomain::power_preimage_petal(double threshold, int order, int petal) {
  require(threshold > 0.0, ErrorKind::InvalidInput, "power preimage threshold must be positive");
  require(order >= 1, ErrorKind::InvalidInput, "power preimage order must be >= 1");
  const int k = ((petal % order) + order) % order;
  return CanonicalDomain(PowerPreimage{threshold, order, k});
}

CanonicalDomain CanonicalDomain::mobius_image(const CanonicalDomain& base, const MobiusMap& map) {
  return CanonicalDomain(MobiusImage{std::make_shared<const CanonicalDomain>(base), map});
}

CanonicalDomain CanonicalDomain::power_image(const CanonicalDomain& base, double exponent, cplx rotation) {
  require(exponent > 0.0 && std::isfinite(exponent), ErrorKind::InvalidInput, "power exponent must be positive");
  const cplx rot = unit(rotation, "power image rotation");
  const double half_angle = std::min(kPi, kPi / exponent);
  // The base must sit inside the cone |arg w| < half_angle.
  const bool ok = std::visit(
      Overloaded{
          [&](const Disk& d) {
            if (std::abs(std::arg(d.center)) >= half_angle || d.center == cplx(0.0)) return false;
            if (half_angle >= kPi) return distance_to_ray(d.center, 0.0, -1.0) >= d.radius;
            return std::min(distance_to_ray(d.center, 0.0, std::polar(1.0, half_angle)),
                            distance_to_ray(d.center, 0.0, std::polar(1.0, -half_angle))) >= d.radius;
          },
          [&](const HalfPlane& h) {
            return (h.boundary_point * std::conj(h.inward_normal)).real() >= 0.0 &&
                   std::abs(std::arg(h.inward_normal)) + 0.5 * kPi <= half_angle + kTouch;
          },
          [&](const Sector& s) {
            return s.vertex == cplx(0.0) &&
                   std::abs(std::arg(s.bisector)) + 0.5 * s.opening <= half_angle + kTouch;
          },
          [](const auto&) { return false; },
      },
      base.variant());
  require(ok, ErrorKind::UnsupportedDomain,
          "power image base must be a disk, half-plane or vertex-0 sector inside the univalence cone");
  return CanonicalDomain(PowerImage{std::make_shared<const CanonicalDomain>(base), exponent, rot});
}

bool CanonicalDomain::contains(const SpherePoint& z) const {
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return z.is_finite() && std::abs(z.value() - d.center) < d.radius; },
          [&](const ExteriorDisk& d) { return z.is_infinite() || std::abs(z.value() - d.center) > d.radius; },
          [&](const HalfPlane& h) {
            return z.is_finite() && ((z.value() - h.boundary_point) * std::conj(h.inward_normal)).real() > 0.0;
          },
          [&](const Sector& s) { return z.is_finite() && sector_contains(s, z.value()); },
          [&](const PowerPreimage& p) {
            if (z.is_infinite()) return false;
            const cplx w = z.value();
            if (!p.petal) return std::pow(w, p.order).real() < p.threshold;
            const cplx s = w * std::polar(1.0, -2.0 * kPi * *p.petal / p.order);
            if (s == cplx(0.0) || std::abs(std::arg(s)) >= kPi / p.order) return false;
            return std::pow(s, p.order).real() > p.threshold;
          },
          [&](const MobiusImage& m) { return m.base->contains(m.map.inverse()(z)); },
          [&](const PowerImage& p) {
            if (z.is_infinite() || z.value() == cplx(0.0)) return false;
            const cplx q = z.value() / p.rotation;
            // The principal power maps the cone |arg w| < pi onto |arg q| < min(1, exponent) pi.
            if (q.imag() == 0.0 && q.real() < 0.0) return false;
            if (std::abs(std::arg(q)) >= std::min(1.0, p.exponent) * kPi) return false;
            return p.base->contains(SpherePoint(std::pow(q, 1.0 / p.exponent)));
          },
      },
      v_);
}

UniformizerJet CanonicalDomain::uniformize(const SpherePoint& z) const {
  require(contains(z), ErrorKind::InvalidInput, "point " + z.to_string() + " is not in " + describe());
  return std::visit(
      Overloaded{
          [&](const Disk& d) -> UniformizerJet {
            return {(z.value() - d.center) / d.radius, cplx(1.0 / d.radius)};
          },
          [&](const ExteriorDisk& d) -> UniformizerJet {
            if (z.is_infinite()) return {0.0, cplx(d.radius)};
            const cplx rel = z.value() - d.center;
            return {d.radius / rel, -d.radius / (rel * rel)};
          },
          [&](const HalfPlane& h) -> UniformizerJet {
            const cplx t = (z.value() - h.boundary_point) / h.inward_normal;
            return half_plane_to_disk(t, 1.0 / h.inward_normal);
          },
          [&](const Sector& s) -> UniformizerJet {
            const cplx rel = (z.value() - s.vertex) / s.bisector;
            const double beta = kPi / s.opening;
            const cplx t = std::pow(rel, beta);
            return half_plane_to_disk(t, beta * t / rel / s.bisector);
          },
          [&](const PowerPreimage& p) -> UniformizerJet {
            const cplx w = z.value();
            const double n = p.order;
            if (!p.petal) {
              const cplx q = 2.0 * p.threshold - std::pow(w, p.order);
              const cplx root = std::pow(q, -1.0 / n);
              return {w * root, 2.0 * p.threshold * root / q};
            }
            const cplx rot = std::polar(1.0, -2.0 * kPi * *p.petal / n);
            const cplx s = w * rot;
            const cplx sn = std::pow(s, p.order);
            const cplx dsn = n * sn / s * rot;
            return half_plane_to_disk(sn - p.threshold, dsn);
          },
          [&](const MobiusImage& m) -> UniformizerJet {
            const LocalStep step = mobius_step(m.map.inverse(), z);
            const UniformizerJet base = m.base->uniformize(step.out);
            return {base.value, base.derivative * step.derivative};
          },
          [&](const PowerImage& p) -> UniformizerJet {
            const cplx q = z.value() / p.rotation;
            const cplx y = std::pow(q, 1.0 / p.exponent);
            const UniformizerJet base = p.base->uniformize(SpherePoint(y));
            const cplx dy = y / (p.exponent * z.value());
            return {base.value, base.derivative * dy};
          },
      },
      v_);
}

std::optional<MobiusMap> CanonicalDomain::circular_normalizer() const {
  return std::visit(
      Overloaded{
          [](const Disk& d) -> std::optional<MobiusMap> {
            return MobiusMap(1.0 / d.radius, -d.center / d.radius, 0.0, 1.0);
          },
          [](const ExteriorDisk& d) -> std::optional<MobiusMap> { return MobiusMap(0.0, d.radius, 1.0, -d.center); },
          [](const HalfPlane& h) -> std::optional<MobiusMap> {
            const MobiusMap to_right(1.0 / h.inward_normal, -h.boundary_point / h.inward_normal, 0.0, 1.0);
            return MobiusMap(1.0, -1.0, 1.0, 1.0).compose(to_right);
          },
          [](const MobiusImage& m) -> std::optional<MobiusMap> {
            auto base = m.base->circular_normalizer();
            if (!base) return std::nullopt;
            return base->compose(m.map.inverse());
          },
          [](const auto&) -> std::optional<MobiusMap> { return std::nullopt; },
      },
      v_);
}

std::string CanonicalDomain::describe() const {
  return std::visit(
      Overloaded{
          [](const Disk& d) { return "Disk(center=" + fmt(d.center) + ", radius=" + fmt(d.radius) + ")"; },
          [](const ExteriorDisk& d) {
            return "ExteriorDisk(center=" + fmt(d.center) + ", radius=" + fmt(d.radius) + ")";
          },
          [](const HalfPlane& h) {
            return "HalfPlane(point=" + fmt(h.boundary_point) + ", normal=" + fmt(h.inward_normal) + ")";
          },
          [](const Sector& s) {
            return "Sector(vertex=" + fmt(s.vertex) + ", bisector=" + fmt(s.bisector) + ", opening=" + fmt(s.opening) +
                   ")";
          },
          [](const PowerPreimage& p) {
            std::string s = "PowerPreimage(threshold=" + fmt(p.threshold) + ", order=" + std::to_string(p.order);
            s += p.petal ? ", petal=" + std::to_string(*p.petal) + ")" : ", inner)";
            return s;
          },
          [](const MobiusImage& m) {
            return "MobiusImage(base=" + m.base->describe() + ", a=" + fmt(m.map.a()) + ", b=" + fmt(m.map.b()) +
                   ", c=" + fmt(m.map.c()) + ", d=" + fmt(m.map.d()) + ")";
          },
          [](const PowerImage& p) {
            return "PowerImage(base=" + p.base->describe() + ", exponent=" + fmt(p.exponent) +
                   ", rotation=" + fmt(p.rotation) + ")";
          },
      },
      v_);
}

double green(const CanonicalDomain& domain, const SpherePoint& z, const SpherePoint& zeta) {
  require(domain.contains(zeta), ErrorKind::InvalidInput,
          "Green function pole " + zeta.to_string() + " is outside " + domain.describe());
  if (!domain.contains(z)) return 0.0;
  if (z == zeta) return kInf;
  const cplx fz = domain.uniformize(z).value;
  const cplx fzeta = domain.uniformize(zeta).value;
  const cplx diff = fz - fzeta;
  if (diff == cplx(0.0)) return kInf;
  return std::log(std::abs(1.0 - std::conj(fzeta) * fz) / std::abs(diff));
}

double inner_radius(const CanonicalDomain& domain, const SpherePoint& z0) {
  require(domain.contains(z0), ErrorKind::InvalidInput,
          "inner radius requested at " + z0.to_string() + " outside " + domain.describe());
  const UniformizerJet jet = domain.uniformize(z0);
  return (1.0 - std::norm(jet.value)) / std::abs(jet.derivative);
}

double regular_part(const CanonicalDomain& domain, const SpherePoint& z, const SpherePoint& zeta) {
  if (z == zeta) return std::log(inner_radius(domain, z));
  require(z.is_finite() && zeta.is_finite(), ErrorKind::InvalidInput,
          "regular part is undefined off the diagonal when a point is at infinity");
  return green(domain, z, zeta) + std::log(std::abs(z.value() - zeta.value()));
}

TransportResult transport(const CanonicalDomain& domain, const MobiusMap& f, std::span<const SpherePoint> points) {
  TransportResult out{CanonicalDomain::mobius_image(domain, f), {}, {}};
  for (const SpherePoint& p : points) {
    require(p.is_finite(), ErrorKind::InvalidInput, "derivative factor requested at infinity");
    require(!(f.has_finite_pole() && p.value() == f.pole()), ErrorKind::InvalidInput,
            "derivative requested at the pole of the map");
    out.images.push_back(f(p));
    out.derivative_moduli.push_back(std::abs(f.derivative(p.value())));
  }
  return out;
}

double power_preimage_green(double threshold, int order, const SpherePoint& z) {
  require(threshold > 0.0 && order >= 1, ErrorKind::InvalidInput, "power preimage needs c > 0 and n >= 1");
  if (z.is_infinite()) return 0.0;
  const cplx zn = std::pow(z.value(), order);
  if (zn.real() >= threshold) return 0.0;
  if (zn == cplx(0.0)) return kInf;
  return std::log(std::abs((zn - 2.0 * threshold) / zn)) / order;
}

std::optional<bool> contained_in(const CanonicalDomain& inner, const CanonicalDomain& outer) {
  if (same_domain(inner, outer)) return true;
  const auto* d = std::get_if<Disk>(&inner.variant());
  if (d) {
    return std::visit(
        Overloaded{
            [&](const Disk& o) -> std::optional<bool> {
              return std::abs(d->center - o.center) + d->radius <= o.radius * (1.0 + kTouch);
            },
            [&](const ExteriorDisk& o) -> std::optional<bool> {
              return std::abs(d->center - o.center) >= (d->radius + o.radius) * (1.0 - kTouch);
            },
            [&](const HalfPlane& h) -> std::optional<bool> {
              return ((d->center - h.boundary_point) * std::conj(h.inward_normal)).real() >= d->radius * (1.0 - kTouch);
            },
            [&](const Sector& s) -> std::optional<bool> {
              return sector_contains(s, d->center) && min_distance_to_sector_rays(s, d->center) >= d->radius;
            },
            [&](const PowerPreimage& p) -> std::optional<bool> {
              if (p.petal || d->center != cplx(0.0)) return std::nullopt;
              return std::pow(d->radius, p.order) <= p.threshold;
            },
            [](const auto&) -> std::optional<bool> { return std::nullopt; },
        },
        outer.variant());
  }
  const auto* h = std::get_if<HalfPlane>(&inner.variant());
  const auto* ho = std::get_if<HalfPlane>(&outer.variant());
  if (h && ho) {
    if (std::abs(h->inward_normal - ho->inward_normal) > kTouch) return false;
    return ((h->boundary_point - ho->boundary_point) * std::conj(ho->inward_normal)).real() >= -kTouch;
  }
  return std::nullopt;
}

std::optional<bool> disjoint(const CanonicalDomain& a, const CanonicalDomain& b) {
  if (same_domain(a, b)) return false;
  const auto& va = a.variant();
  const auto& vb = b.variant();
  if (const auto* d1 = std::get_if<Disk>(&va)) {
    if (const auto* d2 = std::get_if<Disk>(&vb)) {
      return std::abs(d1->center - d2->center) >= (d1->radius + d2->radius) * (1.0 - kTouch);
    }
    if (const auto* e = std::get_if<ExteriorDisk>(&vb)) {
      return std::abs(d1->center - e->center) + d1->radius <= e->radius * (1.0 + kTouch);
    }
    if (const auto* h = std::get_if<HalfPlane>(&vb)) {
      return ((d1->center - h->boundary_point) * std::conj(h->inward_normal)).real() <= -d1->radius * (1.0 - kTouch);
    }
    if (const auto* s = std::get_if<Sector>(&vb)) {
      return !sector_contains(*s, d1->center) && min_distance_to_sector_rays(*s, d1->center) >= d1->radius;
    }
    if (const auto* p = std::get_if<PowerPreimage>(&vb)) {
      // A disk inside the inner component misses every petal.
      if (p->petal) {
        auto inner_ok = contained_in(a, CanonicalDomain::power_preimage(p->threshold, p->order));
        if (inner_ok && *inner_ok) return true;
      }
      return std::nullopt;
    }
    return std::nullopt;
  }
  if (std::holds_alternative<Disk>(vb)) return disjoint(b, a);
  if (const auto* h1 = std::get_if<HalfPlane>(&va)) {
    if (const auto* h2 = std::get_if<HalfPlane>(&vb)) {
      if (std::abs(h1->inward_normal + h2->inward_normal) > kTouch) return false;
      const cplx n = h1->inward_normal;
      return (h2->boundary_point * std::conj(n)).real() <= (h1->boundary_point * std::conj(n)).real() + kTouch;
    }
    return std::nullopt;
  }
  if (const auto* s1 = std::get_if<Sector>(&va)) {
    if (const auto* s2 = std::get_if<Sector>(&vb)) {
      if (s1->vertex != s2->vertex) return std::nullopt;
      const double gap = circular_distance(std::arg(s1->bisector), std::arg(s2->bisector));
      return gap >= 0.5 * (s1->opening + s2->opening) - kTouch;
    }
    return std::nullopt;
  }
  if (const auto* p1 = std::get_if<PowerPreimage>(&va)) {
    if (const auto* p2 = std::get_if<PowerPreimage>(&vb)) {
      if (p1->threshold != p2->threshold || p1->order != p2->order) return std::nullopt;
      return p1->petal != p2->petal;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

double transfinite_diameter(const CompactSet& set) {
  switch (set.kind) {
    case CompactSet::Kind::ClosedDisk:
      require(set.size > 0.0, ErrorKind::InvalidInput, "disk radius must be positive");
      return set.size;
    case CompactSet::Kind::Segment:
      require(set.size > 0.0, ErrorKind::InvalidInput, "segment length must be positive");
      return 0.25 * set.size;
    case CompactSet::Kind::Other:
      break;
  }
  fail(ErrorKind::UnsupportedShape, "transfinite diameter is only available for disks and segments: " +
                                        set.description);
}

}  // namespace condenser::analytic
