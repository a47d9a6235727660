#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "condenser/analytic/mobius.hpp"

namespace condenser::analytic {

class CanonicalDomain;

struct Disk {
  cplx center;
  double radius;
};

struct ExteriorDisk {
  cplx center;
  double radius;
};

// {z : Re((z - boundary_point) * conj(inward_normal)) > 0}
struct HalfPlane {
  cplx boundary_point;
  cplx inward_normal;  // unit
};

// {z : |arg((z - vertex) / bisector)| < opening / 2}, opening in (0, 2 pi].
struct Sector {
  cplx vertex;
  cplx bisector;  // unit
  double opening;
};

// {Re z^n < threshold} when petal is empty (contains 0); otherwise the
// component of {Re z^n > threshold} around the ray arg z = 2 pi petal / n.
struct PowerPreimage {
  double threshold;
  int order;
  std::optional<int> petal;
};

// map(base)
struct MobiusImage {
  std::shared_ptr<const CanonicalDomain> base;
  MobiusMap map;
};

// {rotation * w^exponent : w in base}, principal branch. The base must lie in
// the cone |arg w| < min(pi, pi / exponent) so the map is univalent.
struct PowerImage {
  std::shared_ptr<const CanonicalDomain> base;
  double exponent;
  cplx rotation;  // unit
};

// Value and derivative of the uniformizing map onto the unit disk. At
// infinity the derivative is taken in the local coordinate 1/z.
struct UniformizerJet {
  cplx value;
  cplx derivative;
};

// An analytically described simply connected domain on the sphere with exact
// Green function, uniformized onto the unit disk by an explicit map.
class CanonicalDomain {
 public:
  using Variant = std::variant<Disk, ExteriorDisk, HalfPlane, Sector, PowerPreimage, MobiusImage, PowerImage>;

  static CanonicalDomain disk(cplx center, double radius);
  static CanonicalDomain exterior_disk(cplx center, double radius);
  static CanonicalDomain half_plane(cplx boundary_point, cplx inward_normal);
  static CanonicalDomain sector(cplx vertex, cplx bisector, double opening);
  static CanonicalDomain power_preimage(double threshold, int order);
  static CanonicalDomain power_preimage_petal(double threshold, int order, int petal);
  static CanonicalDomain mobius_image(const CanonicalDomain& base, const MobiusMap& map);
  static CanonicalDomain power_image(const CanonicalDomain& base, double exponent, cplx rotation = 1.0);

  const Variant& variant() const noexcept { return v_; }

  bool contains(const SpherePoint& z) const;
  // pre: contains(z)
  UniformizerJet uniformize(const SpherePoint& z) const;

  // Mobius map T with T(domain) = unit disk, when the boundary is a circle or
  // line (disk, exterior disk, half-plane and their Mobius images).
  std::optional<MobiusMap> circular_normalizer() const;

  std::string describe() const;

 private:
  explicit CanonicalDomain(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Green function with pole zeta, continued by zero outside the domain.
// Returns +inf at z == zeta. Throws InvalidInput if zeta is not in the domain.
double green(const CanonicalDomain& domain, const SpherePoint& z, const SpherePoint& zeta);

double inner_radius(const CanonicalDomain& domain, const SpherePoint& z0);

// g(z, zeta) + log|z - zeta|; on the diagonal, log inner_radius(domain, z).
double regular_part(const CanonicalDomain& domain, const SpherePoint& z, const SpherePoint& zeta);

struct TransportResult {
  CanonicalDomain domain;
  std::vector<SpherePoint> images;
  std::vector<double> derivative_moduli;  // |f'(z)| at each finite non-pole point
};

// Image of the domain under f, with images of `points` and |f'| there.
TransportResult transport(const CanonicalDomain& domain, const MobiusMap& f,
                          std::span<const SpherePoint> points);

// Green function of {Re z^n < c} with pole at 0, (1/n) log|(z^n - 2c) / z^n|.
double power_preimage_green(double threshold, int order, const SpherePoint& z);

// Containment / disjointness for the pairs that can be decided exactly;
// std::nullopt when the pair is not supported.
std::optional<bool> contained_in(const CanonicalDomain& inner, const CanonicalDomain& outer);
std::optional<bool> disjoint(const CanonicalDomain& a, const CanonicalDomain& b);

// Compact sets with classical transfinite diameters.
struct CompactSet {
  enum class Kind { ClosedDisk, Segment, Other };
  Kind kind;
  double size;  // radius for disks, length for segments
  std::string description;

  static CompactSet closed_disk(double radius) { return {Kind::ClosedDisk, radius, "closed disk"}; }
  static CompactSet segment(double length) { return {Kind::Segment, length, "segment"}; }
  static CompactSet other(std::string what) { return {Kind::Other, 0.0, std::move(what)}; }
};

// disk of radius R -> R, segment of length L -> L / 4.
double transfinite_diameter(const CompactSet& set);

}  // namespace condenser::analytic
