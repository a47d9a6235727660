#include "condenser/core/condenser.hpp"

#include <cmath>

#include "condenser/core/term_filter.hpp"

namespace condenser::core {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool outside_all(const std::vector<CanonicalDomain>& comps, const SpherePoint& p) {
  for (const auto& d : comps)
    if (d.contains(p)) return false;
  return true;
}

// Searches for a small disk missed by every component.
bool union_complement_has_interior(const std::vector<CanonicalDomain>& comps) {
  constexpr int kRing = 12;
  auto disk_free = [&](cplx c, double eps) {
    if (!outside_all(comps, c)) return false;
    for (int i = 0; i < kRing; ++i)
      if (!outside_all(comps, c + eps * std::polar(1.0, 2.0 * kPi * i / kRing))) return false;
    return true;
  };
  for (double big : {1e6, 1e8}) {
    bool free = outside_all(comps, SpherePoint::infinity());
    for (int i = 0; free && i < kRing; ++i) free = outside_all(comps, big * std::polar(1.0, 2.0 * kPi * i / kRing));
    if (free) return true;
  }
  for (int i = -32; i <= 32; ++i)
    for (int j = -32; j <= 32; ++j)
      if (disk_free(cplx(0.125 * i, 0.125 * j), 1e-3)) return true;
  return false;
}

}  // namespace

double PlateLaw::operator()(double r) const { return mu * std::pow(r, exponent); }

void PlateLaw::validate() const {
  require(mu > 0.0 && std::isfinite(mu), ErrorKind::InvalidInput, "plate law scale mu must be positive");
  require(exponent > 0.0 && std::isfinite(exponent), ErrorKind::InvalidInput, "plate law exponent must be positive");
}

CondenserSpec CondenserSpec::single(const CanonicalDomain& field, std::vector<PlateSpec> plates) {
  CondenserSpec s;
  s.components = {field};
  s.component_of.assign(plates.size(), 0);
  s.plates = std::move(plates);
  return s;
}

CondenserSpec CondenserSpec::numeric(const fem::NumericDomain& field, std::vector<PlateSpec> plates) {
  CondenserSpec s;
  s.numeric_field = field;
  s.component_of.assign(plates.size(), 0);
  s.plates = std::move(plates);
  return s;
}

std::vector<double> CondenserSpec::deltas() const {
  std::vector<double> d;
  for (const auto& p : plates) d.push_back(p.delta);
  return d;
}

std::vector<PlateLaw> CondenserSpec::laws() const {
  std::vector<PlateLaw> l;
  for (const auto& p : plates) l.push_back(p.law);
  return l;
}

CondenserSpec CondenserSpec::scaled_potentials(double c) const {
  require(c != 0.0 && std::isfinite(c), ErrorKind::InvalidInput, "potential scale must be finite and nonzero");
  CondenserSpec s = *this;
  for (auto& p : s.plates) p.delta *= c;
  return s;
}

bool complement_has_interior(const CanonicalDomain& domain) {
  using namespace analytic;
  return std::visit(
      Overloaded{
          [](const Sector& s) { return s.opening < 2.0 * kPi; },
          [](const MobiusImage& m) { return complement_has_interior(*m.base); },
          [](const PowerImage& p) {
            return std::visit(Overloaded{
                                  [](const Disk&) { return true; },
                                  [&](const HalfPlane& h) {
                                    return p.exponent < 2.0 || (h.boundary_point * std::conj(h.inward_normal)).real() > 0.0;
                                  },
                                  [&](const Sector& s) { return p.exponent * s.opening < 2.0 * kPi; },
                                  [](const auto&) { return false; },
                              },
                              p.base->variant());
          },
          [](const auto&) { return true; },
      },
      domain.variant());
}

void CondenserSpec::validate() const {
  require(!plates.empty(), ErrorKind::InvalidInput, "condenser needs at least one plate");
  require(components.empty() != !numeric_field.has_value(), ErrorKind::InvalidInput,
          "field set must be either canonical components or one numeric domain");
  require(component_of.size() == plates.size(), ErrorKind::InvalidInput, "component_of must list every plate");
  for (std::size_t l = 0; l < plates.size(); ++l) {
    const PlateSpec& p = plates[l];
    require(p.delta != 0.0 && std::isfinite(p.delta), ErrorKind::InvalidInput, "plate potentials must be nonzero");
    p.law.validate();
    for (std::size_t j = 0; j < l; ++j)
      require(!(plates[j].center == p.center), ErrorKind::InvalidInput,
              "plate centers must be distinct: " + p.center.to_string());
    if (numeric_field) {
      require(component_of[l] == 0, ErrorKind::InvalidInput, "numeric field sets have a single component");
      require(p.center.is_finite() && numeric_field->contains(p.center.value()), ErrorKind::InvalidInput,
              "plate center " + p.center.to_string() + " is not in the field set");
    } else {
      require(component_of[l] < components.size(), ErrorKind::InvalidInput, "plate component index out of range");
      require(components[component_of[l]].contains(p.center), ErrorKind::InvalidInput,
              "plate center " + p.center.to_string() + " is not in " + components[component_of[l]].describe());
    }
  }
  if (numeric_field) return;
  for (std::size_t a = 0; a < components.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      const auto dis = analytic::disjoint(components[a], components[b]);
      require(!dis || *dis, ErrorKind::InvalidInput, "field set components overlap");
    }
  const bool interior = components.size() == 1 ? complement_has_interior(components[0])
                                                : union_complement_has_interior(components);
  require(interior, ErrorKind::InvalidInput, "complement of the field set must contain a disk");
}

double nu_total(std::span<const double> deltas, std::span<const PlateLaw> laws) {
  require(!deltas.empty(), ErrorKind::InvalidInput, "nu needs at least one plate");
  require(deltas.size() == laws.size(), ErrorKind::InvalidInput, "one plate law per potential");
  double s = 0.0;
  for (std::size_t l = 0; l < deltas.size(); ++l) {
    require(deltas[l] != 0.0 && std::isfinite(deltas[l]), ErrorKind::InvalidInput, "plate potentials must be nonzero");
    laws[l].validate();
    s += deltas[l] * deltas[l] / laws[l].exponent;
  }
  return 1.0 / s;
}

double ReducedModuleResult::term_sum() const {
  std::vector<double> t = diagonal_terms;
  for (const auto& c : cross_terms) t.push_back(c.value);
  return filtered_sum(t);
}

ReducedModuleResult reduced_module(const CondenserSpec& spec) {
  spec.validate();
  require(!spec.numeric_field, ErrorKind::UnsupportedDomain,
          "reduced module needs canonical components; use the numeric solver for numeric field sets");
  const auto deltas = spec.deltas();
  const auto laws = spec.laws();
  ReducedModuleResult out;
  out.nu = nu_total(deltas, laws);
  const std::size_t m = spec.plates.size();
  for (std::size_t l = 0; l < m; ++l) {
    const PlateSpec& p = spec.plates[l];
    const CanonicalDomain& bl = spec.components[spec.component_of[l]];
    const double nl = p.law.exponent;
    out.diagonal_terms.push_back(p.delta * p.delta / (nl * nl) * std::log(analytic::inner_radius(bl, p.center) / p.law.mu));
  }
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t j = 0; j < m; ++j) {
      if (l == j) continue;
      const PlateSpec& pl = spec.plates[l];
      const PlateSpec& pj = spec.plates[j];
      double g = 0.0;
      if (spec.component_of[l] == spec.component_of[j])
        g = analytic::green(spec.components[spec.component_of[l]], pj.center, pl.center);
      out.cross_terms.push_back({l, j, pl.delta * pj.delta / (pl.law.exponent * pj.law.exponent) * g});
    }
  }
  out.value = out.nu * out.nu / (2.0 * kPi) * out.term_sum();
  return out;
}

double reduced_module_disk_closed_form(double rho, std::span<const cplx> points) {
  require(rho > 0.0 && std::isfinite(rho), ErrorKind::InvalidInput, "disk radius must be positive");
  require(!points.empty(), ErrorKind::InvalidInput, "closed form needs at least one point besides 0");
  const std::size_t n = points.size();
  for (std::size_t k = 0; k < n; ++k) {
    require(points[k] != cplx(0.0), ErrorKind::InvalidInput, "points must differ from 0");
    require(std::abs(points[k]) < rho, ErrorKind::InvalidInput, "points must lie inside the disk");
    for (std::size_t l = 0; l < k; ++l)
      require(points[k] != points[l], ErrorKind::InvalidInput, "coincident points");
  }
  const double nn = static_cast<double>(n);
  const double r2 = rho * rho;
  double s = nn * nn * std::log(rho);
  for (const cplx& z : points) s += std::log((r2 - std::norm(z)) / rho);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      if (k != l)
        s += std::log(std::abs((r2 - std::conj(points[k]) * points[l]) / (rho * (points[k] - points[l]))));
  for (const cplx& z : points) s -= 2.0 * nn * std::log(rho / std::abs(z));
  const double q = nn * (nn + 1.0);
  return s / (2.0 * kPi * q * q);
}

double conformal_shift(double m_in, std::span<const double> deltas, std::span<const PlateLaw> laws,
                       std::span<const double> derivative_moduli) {
  require(derivative_moduli.size() == deltas.size(), ErrorKind::InvalidInput, "one derivative modulus per plate");
  const double nu = nu_total(deltas, laws);
  double s = 0.0;
  for (std::size_t l = 0; l < deltas.size(); ++l) {
    const double d = derivative_moduli[l];
    require(d > 0.0 && std::isfinite(d), ErrorKind::InvalidInput, "derivative moduli must be positive and finite");
    const double nl = laws[l].exponent;
    s += deltas[l] * deltas[l] / (nl * nl) * std::log(d);
  }
  return m_in + nu * nu / (2.0 * kPi) * s;
}

MonotonicityReport monotonicity_assert(const CondenserSpec& small, const CondenserSpec& large) {
  small.validate();
  large.validate();
  require(small.plates.size() == large.plates.size(), ErrorKind::InvalidInput, "specs must share their plates");
  for (std::size_t l = 0; l < small.plates.size(); ++l) {
    const PlateSpec& a = small.plates[l];
    const PlateSpec& b = large.plates[l];
    require(a.center == b.center && a.delta == b.delta && a.law.mu == b.law.mu && a.law.exponent == b.law.exponent,
            ErrorKind::InvalidInput, "specs must share Z, Delta and Psi");
  }
  require(!small.numeric_field && !large.numeric_field, ErrorKind::UnsupportedComparison,
          "containment of numeric field sets cannot be verified");
  for (const auto& c : small.components) {
    bool inside = false;
    bool decided = false;
    for (const auto& big : large.components) {
      const auto in = analytic::contained_in(c, big);
      if (in) decided = true;
      if (in && *in) inside = true;
    }
    require(decided, ErrorKind::UnsupportedComparison, "cannot verify that " + c.describe() + " lies in the larger set");
    require(inside, ErrorKind::InvalidInput, c.describe() + " is not contained in the larger set");
  }
  MonotonicityReport rep;
  rep.small_value = reduced_module(small).value;
  rep.large_value = reduced_module(large).value;
  rep.margin = rep.large_value - rep.small_value;
  rep.holds = rep.margin >= -1e-12 * std::max(1.0, std::abs(rep.large_value));
  return rep;
}

}  // namespace condenser::core
