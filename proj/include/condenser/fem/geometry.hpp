#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "condenser/analytic/sphere_point.hpp"

namespace condenser::fem {

struct Segment {
  cplx a, b;
};

struct Interval {
  double lo, hi;
};

// Points where u(z) <= 0 are removed from the field (Dirichlet value 0).
struct LevelSetCut {
  std::function<double(cplx)> u;
  std::string description;
};

// A disk {|z - center| < radius} with slits (closed segments) removed and an
// optional level-set cut. Slits and the cut belong to the complement.
class NumericDomain {
 public:
  static NumericDomain disk(cplx center, double radius);
  static NumericDomain unit_disk() { return disk(0.0, 1.0); }
  // {|z| < 1} minus the sets {a_k t : t in K}.
  static NumericDomain radially_slit_disk(const std::vector<cplx>& directions, const std::vector<Interval>& k_set);

  NumericDomain with_slit(Segment s) const;
  NumericDomain with_cut(LevelSetCut cut) const;

  cplx center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  const std::vector<Segment>& slits() const noexcept { return slits_; }
  const std::optional<LevelSetCut>& cut() const noexcept { return cut_; }

  // Bounding box {lo, hi} as corner points.
  std::pair<cplx, cplx> bounding_box() const;

  bool contains(cplx z) const;
  double distance_to_boundary(cplx z) const;
  std::string describe() const;

 private:
  NumericDomain(cplx c, double r) : center_(c), radius_(r) {}

  cplx center_;
  double radius_;
  std::vector<Segment> slits_;
  std::optional<LevelSetCut> cut_;
};

double distance_to_segment(cplx z, const Segment& s) noexcept;

// Star-shaped plate outlines. Non-circular shapes carry an excess
// eps(r) = kappa / log(1/r) that vanishes as r -> 0, or a constant excess
// kappa when `fixed_excess` is set.
struct PlateShape {
  enum class Kind { Circle, Square, Ellipse };
  Kind kind = Kind::Circle;
  double kappa = 0.0;
  bool fixed_excess = false;

  static PlateShape circle() { return {}; }
  static PlateShape square(double kappa = 1.0) { return {Kind::Square, kappa, false}; }
  static PlateShape ellipse(double kappa) { return {Kind::Ellipse, kappa, false}; }

  double excess(double r) const;
  // Boundary distance from the plate center in direction theta, for a plate
  // law value psi at parameter r. Always >= psi (the outline contains the disk).
  double radial(double theta, double psi, double r) const;
  double max_radial(double psi, double r) const;
  // E(z, psi(r)) subset plate subset E(z, psi(r) (1 + o(1))).
  bool satisfies_sandwich() const noexcept { return kind == Kind::Circle || !fixed_excess; }
  std::string describe() const;
};

PlateShape::Kind parse_plate_kind(const std::string& name);

struct SolveOptions {
  double target_relative_error = 1e-3;
  int min_levels = 3;
  int max_levels = 3;
  int base_ring_nodes = 64;  // nodes around each plate on the coarsest level
  double linear_tolerance = 1e-10;
  int quadrature_nodes = 512;  // N_theta
  double far_field_size = 0.08;  // element size away from features, coarsest level
  int max_cg_iterations = 200000;

  void validate() const;
};

struct ModuleEstimate {
  double value = 0.0;  // 1 / energy on the finest level
  double energy = 0.0;
  double error_estimate = 0.0;
  double extrapolated = 0.0;
  double observed_order = 0.0;
  std::vector<double> history;  // per-level module values
  std::vector<int> ring_nodes;   // per-level plate resolution
  std::vector<std::size_t> node_counts;
  bool accuracy_reached = true;
  double max_principle_violation = 0.0;
};

}  // namespace condenser::fem
