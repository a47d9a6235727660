#include "condenser/fem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace condenser::fem {

NumericDomain NumericDomain::disk(cplx center, double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidInput, "numeric domain radius must be positive");
  return NumericDomain(center, radius);
}

NumericDomain NumericDomain::radially_slit_disk(const std::vector<cplx>& directions,
                                                const std::vector<Interval>& k_set) {
  NumericDomain d = unit_disk();
  for (const Interval& iv : k_set) {
    require(iv.lo > 0.0 && iv.lo <= iv.hi && iv.hi <= 1.0, ErrorKind::InvalidInput,
            "slit parameter intervals must lie in (0, 1]");
  }
  for (const cplx& a : directions) {
    require(std::abs(std::abs(a) - 1.0) < 1e-12, ErrorKind::InvalidInput, "slit directions must lie on |z| = 1");
    for (const Interval& iv : k_set) {
      // A degenerate interval is a single point, which has zero capacity.
      if (iv.hi > iv.lo) d.slits_.push_back({a * iv.lo, a * iv.hi});
    }
  }
  return d;
}

NumericDomain NumericDomain::with_slit(Segment s) const {
  require(std::abs(s.a - center_) <= radius_ * (1.0 + 1e-12) && std::abs(s.b - center_) <= radius_ * (1.0 + 1e-12),
          ErrorKind::InvalidInput, "slit must lie inside the disk");
  require(s.a != s.b, ErrorKind::InvalidInput, "slit endpoints coincide");
  NumericDomain d = *this;
  d.slits_.push_back(s);
  return d;
}

NumericDomain NumericDomain::with_cut(LevelSetCut cut) const {
  require(static_cast<bool>(cut.u), ErrorKind::InvalidInput, "level-set function is empty");
  NumericDomain d = *this;
  d.cut_ = std::move(cut);
  return d;
}

std::pair<cplx, cplx> NumericDomain::bounding_box() const {
  return {center_ - cplx(radius_, radius_), center_ + cplx(radius_, radius_)};
}

double distance_to_segment(cplx z, const Segment& s) noexcept {
  const cplx d = s.b - s.a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - s.a);
  const double t = std::clamp(((z - s.a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (s.a + t * d));
}

bool NumericDomain::contains(cplx z) const {
  if (std::abs(z - center_) >= radius_) return false;
  for (const Segment& s : slits_)
    if (distance_to_segment(z, s) == 0.0) return false;
  if (cut_ && cut_->u(z) <= 0.0) return false;
  return true;
}

double NumericDomain::distance_to_boundary(cplx z) const {
  double d = radius_ - std::abs(z - center_);
  for (const Segment& s : slits_) d = std::min(d, distance_to_segment(z, s));
  return d;
}

std::string NumericDomain::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "NumericDomain(center=" << analytic::SpherePoint(center_).to_string() << ", radius=" << radius_
     << ", slits=" << slits_.size();
  if (cut_) os << ", cut=" << cut_->description;
  os << ')';
  return os.str();
}

double PlateShape::excess(double r) const {
  if (kind == Kind::Circle) return 0.0;
  if (fixed_excess) return kappa;
  require(r > 0.0 && r < 1.0, ErrorKind::InvalidInput, "plate parameter r must lie in (0, 1)");
  return kappa / std::log(1.0 / r);
}

double PlateShape::radial(double theta, double psi, double r) const {
  const double e = excess(r);
  switch (kind) {
    case Kind::Circle:
      return psi;
    case Kind::Ellipse: {
      const double a = psi * (1.0 + e);
      const double b = psi;
      return a * b / std::hypot(b * std::cos(theta), a * std::sin(theta));
    }
    case Kind::Square: {
      // Axis-aligned square with circumradius psi (1 + e), united with the disk.
      const double apothem = psi * (1.0 + e) / std::sqrt(2.0);
      const double sq = apothem / std::max(std::abs(std::cos(theta)), std::abs(std::sin(theta)));
      return std::max(psi, sq);
    }
  }
  return psi;
}

double PlateShape::max_radial(double psi, double r) const {
  if (kind == Kind::Circle) return psi;
  return psi * (1.0 + excess(r));
}

std::string PlateShape::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Circle: return "circle";
    case Kind::Square: os << "square"; break;
    case Kind::Ellipse: os << "ellipse"; break;
  }
  os << "(kappa=" << kappa << (fixed_excess ? ", fixed" : "") << ')';
  return os.str();
}

PlateShape::Kind parse_plate_kind(const std::string& name) {
  if (name == "disk" || name == "circle") return PlateShape::Kind::Circle;
  if (name == "square") return PlateShape::Kind::Square;
  if (name == "ellipse") return PlateShape::Kind::Ellipse;
  fail(ErrorKind::UnsupportedShape, "unknown plate shape '" + name + "'");
}

void SolveOptions::validate() const {
  require(target_relative_error > 0.0 && target_relative_error <= 0.1, ErrorKind::InvalidInput,
          "target relative error must lie in (0, 0.1]");
  require(min_levels >= 3 && max_levels >= min_levels, ErrorKind::InvalidInput,
          "at least three refinement levels are required");
  require(base_ring_nodes >= 64, ErrorKind::InvalidInput, "plates need at least 64 boundary nodes");
  require(linear_tolerance > 0.0 && linear_tolerance < 1e-4, ErrorKind::InvalidInput,
          "linear solver tolerance must lie in (0, 1e-4)");
  require(quadrature_nodes >= 256, ErrorKind::InvalidInput, "quadrature needs at least 256 nodes");
  require(far_field_size > 0.0 && far_field_size <= 0.5, ErrorKind::InvalidInput,
          "far-field element size must lie in (0, 0.5]");
  require(max_cg_iterations > 0, ErrorKind::InvalidInput, "iteration cap must be positive");
}

}  // namespace condenser::fem
