#pragma once

#include <memory>
#include <vector>

#include "condenser/fem/mesh.hpp"

namespace condenser::fem {

// Locates the triangle containing a point. Points outside the triangulated
// polygon are attributed to the nearest triangle.
class TriangleLocator {
 public:
  explicit TriangleLocator(std::shared_ptr<const Mesh> mesh);
  ~TriangleLocator();
  TriangleLocator(TriangleLocator&&) noexcept;
  TriangleLocator& operator=(TriangleLocator&&) noexcept;

  struct Hit {
    std::int32_t triangle;
    double l0, l1, l2;  // barycentric coordinates, clamped to the triangle
  };
  Hit locate(cplx z) const;
  const Mesh& mesh() const noexcept { return *mesh_; }

 private:
  struct Index;
  std::shared_ptr<const Mesh> mesh_;
  std::unique_ptr<Index> index_;
};

// Piecewise-linear nodal field on a mesh.
class P1Field {
 public:
  P1Field(std::shared_ptr<const TriangleLocator> locator, std::vector<double> values);

  double operator()(cplx z) const;
  const std::vector<double>& values() const noexcept { return values_; }
  const Mesh& mesh() const noexcept { return locator_->mesh(); }
  const std::shared_ptr<const TriangleLocator>& locator() const noexcept { return locator_; }

 private:
  std::shared_ptr<const TriangleLocator> locator_;
  std::vector<double> values_;
};

}  // namespace condenser::fem
