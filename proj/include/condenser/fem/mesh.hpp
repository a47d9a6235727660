#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "condenser/fem/geometry.hpp"

namespace condenser::fem {

enum class NodeKind : std::uint8_t { Interior, Plate, Outer, Slit, Cut };

// A star-shaped plate around `center`: boundary at center + radial(t) e^{it}.
struct PlateOutline {
  cplx center;
  std::function<double(double)> radial;
  double max_radius;
};

// Geometry in normalized coordinates: the field lies in the unit disk.
struct MeshGeometry {
  std::vector<PlateOutline> plates;
  std::vector<Segment> slits;
  std::optional<LevelSetCut> cut;
  std::vector<cplx> refine_points;  // included as nodes, with local refinement
};

struct MeshParams {
  int ring_nodes = 64;
  double far_size = 0.08;
  double grading = 0.25;      // growth of element size with distance from tips/points
  double tip_ratio = 1.0 / 16.0;  // tip element size relative to far_size
  double point_ratio = 1.0 / 4.0;
};

struct Mesh {
  std::vector<cplx> nodes;
  std::vector<NodeKind> kind;
  std::vector<std::int32_t> plate_of;  // plate index for Plate nodes, -1 otherwise
  std::vector<std::array<std::int32_t, 3>> triangles;  // counter-clockwise
  MeshParams params;
  bool constraints_resolved = true;  // no edge crosses a slit or plate

  std::size_t size() const noexcept { return nodes.size(); }
  bool is_dirichlet(std::size_t i) const noexcept { return kind[i] != NodeKind::Interior; }

  // Plain text:
  //   nodes <count>
  //   <index> <x> <y> <kind> <plate>      (kind: interior|plate|outer|slit|cut)
  //   triangles <count>
  //   <index> <a> <b> <c>
  void write_text(std::ostream& out) const;
};

std::string_view to_string(NodeKind kind) noexcept;

// Graded triangulation: staggered rings around plates, quadtree far field,
// boundary and slit nodes by arc length, Delaunay via the Voronoi dual, and
// insertion of constraint crossings until no edge crosses a slit or plate.
Mesh build_mesh(const MeshGeometry& geometry, const MeshParams& params);

// Delaunay triangles of a point set (counter-clockwise, degenerate faces fanned).
std::vector<std::array<std::int32_t, 3>> delaunay(const std::vector<cplx>& points);

}  // namespace condenser::fem
