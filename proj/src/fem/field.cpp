#include "condenser/fem/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

namespace condenser::fem {
namespace {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;
using Point = bg::model::point<double, 2, bg::cs::cartesian>;
using Box = bg::model::box<Point>;
using Value = std::pair<Box, std::int32_t>;

struct Bary {
  double l0, l1, l2;
};

Bary barycentric(cplx a, cplx b, cplx c, cplx z) {
  const double det = (b.real() - a.real()) * (c.imag() - a.imag()) - (c.real() - a.real()) * (b.imag() - a.imag());
  const double l1 = ((z.real() - a.real()) * (c.imag() - a.imag()) - (c.real() - a.real()) * (z.imag() - a.imag())) / det;
  const double l2 = ((b.real() - a.real()) * (z.imag() - a.imag()) - (z.real() - a.real()) * (b.imag() - a.imag())) / det;
  return {1.0 - l1 - l2, l1, l2};
}

cplx closest_on_segment(cplx a, cplx b, cplx z) {
  const cplx d = b - a;
  const double t = std::clamp(((z - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
  return a + t * d;
}

}  // namespace

struct TriangleLocator::Index {
  bgi::rtree<Value, bgi::quadratic<16>> tree;
};

TriangleLocator::TriangleLocator(std::shared_ptr<const Mesh> mesh) : mesh_(std::move(mesh)) {
  require(mesh_ && !mesh_->triangles.empty(), ErrorKind::InvalidInput, "locator needs a nonempty mesh");
  std::vector<Value> boxes;
  boxes.reserve(mesh_->triangles.size());
  for (std::size_t t = 0; t < mesh_->triangles.size(); ++t) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (std::int32_t v : mesh_->triangles[t]) {
      const cplx p = mesh_->nodes[static_cast<std::size_t>(v)];
      x0 = std::min(x0, p.real());
      y0 = std::min(y0, p.imag());
      x1 = std::max(x1, p.real());
      y1 = std::max(y1, p.imag());
    }
    boxes.emplace_back(Box(Point(x0, y0), Point(x1, y1)), static_cast<std::int32_t>(t));
  }
  index_ = std::make_unique<Index>(Index{bgi::rtree<Value, bgi::quadratic<16>>(boxes)});
}

TriangleLocator::~TriangleLocator() = default;
TriangleLocator::TriangleLocator(TriangleLocator&&) noexcept = default;
TriangleLocator& TriangleLocator::operator=(TriangleLocator&&) noexcept = default;

TriangleLocator::Hit TriangleLocator::locate(cplx z) const {
  const Point p(z.real(), z.imag());
  std::vector<Value> hits;
  index_->tree.query(bgi::intersects(p), std::back_inserter(hits));
  std::sort(hits.begin(), hits.end(), [](const Value& a, const Value& b) { return a.second < b.second; });
  const auto& nodes = mesh_->nodes;
  auto corner = [&](std::int32_t t, int k) {
    return nodes[static_cast<std::size_t>(mesh_->triangles[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)])];
  };
  Hit best{-1, 0, 0, 0};
  double best_violation = std::numeric_limits<double>::infinity();
  auto consider = [&](std::int32_t t) {
    const Bary b = barycentric(corner(t, 0), corner(t, 1), corner(t, 2), z);
    const double violation = -std::min({b.l0, b.l1, b.l2});
    if (violation < best_violation) {
      best_violation = violation;
      best = {t, b.l0, b.l1, b.l2};
    }
  };
  for (const Value& v : hits) {
    consider(v.second);
    if (best_violation <= 0.0) return best;
  }
  if (best_violation > 1e-12) {
    // Outside every candidate: project onto the nearest triangle.
    hits.clear();
    index_->tree.query(bgi::nearest(p, 8), std::back_inserter(hits));
    std::sort(hits.begin(), hits.end(), [](const Value& a, const Value& b) { return a.second < b.second; });
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Value& v : hits) {
      const std::int32_t t = v.second;
      const cplx a = corner(t, 0), b = corner(t, 1), c = corner(t, 2);
      for (const cplx q : {closest_on_segment(a, b, z), closest_on_segment(b, c, z), closest_on_segment(c, a, z)}) {
        const double d = std::abs(q - z);
        if (d < best_dist) {
          best_dist = d;
          const Bary bb = barycentric(a, b, c, q);
          best = {t, bb.l0, bb.l1, bb.l2};
        }
      }
    }
  }
  const double l0 = std::max(0.0, best.l0), l1 = std::max(0.0, best.l1), l2 = std::max(0.0, best.l2);
  const double s = l0 + l1 + l2;
  return {best.triangle, l0 / s, l1 / s, l2 / s};
}

P1Field::P1Field(std::shared_ptr<const TriangleLocator> locator, std::vector<double> values)
    : locator_(std::move(locator)), values_(std::move(values)) {
  require(locator_ && values_.size() == locator_->mesh().size(), ErrorKind::InvalidInput,
          "field needs one value per mesh node");
}

double P1Field::operator()(cplx z) const {
  const auto h = locator_->locate(z);
  const auto& t = mesh().triangles[static_cast<std::size_t>(h.triangle)];
  return h.l0 * values_[static_cast<std::size_t>(t[0])] + h.l1 * values_[static_cast<std::size_t>(t[1])] +
         h.l2 * values_[static_cast<std::size_t>(t[2])];
}

}  // namespace condenser::fem
