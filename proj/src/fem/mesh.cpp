#include "condenser/fem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include <boost/polygon/voronoi.hpp>

namespace condenser::fem {
namespace {

constexpr double kScale = 268435456.0;  // 2^28 lattice for the integer Voronoi input
constexpr int kMaxRepairRounds = 24;

// Twice the signed area of (a, b, c); positive for counter-clockwise.
double orient(cplx a, cplx b, cplx c) { return (std::conj(b - a) * (c - a)).imag(); }

int priority(NodeKind k) {
  switch (k) {
    case NodeKind::Plate: return 4;
    case NodeKind::Slit: return 3;
    case NodeKind::Outer: return 2;
    case NodeKind::Cut: return 1;
    case NodeKind::Interior: return 0;
  }
  return 0;
}

std::pair<std::int64_t, std::int64_t> lattice(cplx z) {
  return {std::llround(z.real() * kScale), std::llround(z.imag() * kScale)};
}

cplx snap(cplx z) {
  const auto [x, y] = lattice(z);
  return {static_cast<double>(x) / kScale, static_cast<double>(y) / kScale};
}

class Builder {
 public:
  Builder(const MeshGeometry& g, const MeshParams& p) : g_(g), p_(p) {
    require(p.ring_nodes >= 16 && p.far_size > 0.0, ErrorKind::InvalidInput, "invalid mesh parameters");
    alpha_ = 2.0 * kPi / p.ring_nodes;
    q_ = std::exp(alpha_ * std::sqrt(3.0) / 2.0);
    h_tip_ = p.far_size * p.tip_ratio;
    h_point_ = p.far_size * p.point_ratio;
    for (const Segment& s : g.slits) {
      for (cplx e : {s.a, s.b}) {
        require(std::abs(e) <= 1.0 + 1e-12, ErrorKind::Geometry, "slit leaves the unit disk");
        if (std::abs(e) < 1.0 - 1e-12) tips_.push_back(e);
      }
    }
    compute_zones();
  }

  Mesh run() {
    place_rings();
    place_outer();
    place_slits();
    for (cplx z : g_.refine_points) add(z, NodeKind::Interior, -1);
    place_quadtree();
    if (g_.cut) apply_cut();
    return triangulate_and_repair();
  }

 private:
  void compute_zones() {
    const std::size_t m = g_.plates.size();
    zone_.resize(m);
    for (std::size_t l = 0; l < m; ++l) {
      const PlateOutline& pl = g_.plates[l];
      double d = 1.0 - std::abs(pl.center);
      for (std::size_t j = 0; j < m; ++j)
        if (j != l) d = std::min(d, std::abs(pl.center - g_.plates[j].center) - g_.plates[j].max_radius);
      for (const Segment& s : g_.slits) d = std::min(d, distance_to_segment(pl.center, s));
      for (cplx z : g_.refine_points) d = std::min(d, std::abs(pl.center - z));
      require(pl.max_radius > 0.0 && 4.0 * pl.max_radius < d, ErrorKind::Geometry,
              "plate too large for its neighbourhood: radius " + std::to_string(pl.max_radius) +
                  ", free distance " + std::to_string(d));
      zone_[l] = 0.5 * d;
    }
  }

  double size(cplx z) const {
    double h = p_.far_size;
    for (const PlateOutline& pl : g_.plates) h = std::min(h, alpha_ * std::max(std::abs(z - pl.center), pl.max_radius));
    for (cplx t : tips_) h = std::min(h, h_tip_ + p_.grading * std::abs(z - t));
    for (cplx t : g_.refine_points) h = std::min(h, h_point_ + p_.grading * std::abs(z - t));
    return h;
  }

  void add(cplx z, NodeKind k, std::int32_t plate) {
    pts_.push_back(z);
    kind_.push_back(k);
    plate_of_.push_back(plate);
  }

  void place_rings() {
    const int n = p_.ring_nodes;
    for (std::size_t l = 0; l < g_.plates.size(); ++l) {
      const PlateOutline& pl = g_.plates[l];
      std::vector<double> radial(static_cast<std::size_t>(2 * n));
      for (int i = 0; i < 2 * n; ++i) radial[static_cast<std::size_t>(i)] = pl.radial(kPi * i / n);
      double f = 1.0;
      for (int j = 0;; ++j, f *= q_) {
        if (j > 0 && f * pl.max_radius > zone_[l]) break;
        for (int i = 0; i < n; ++i) {
          const int half = 2 * i + (j & 1);
          const double t = kPi * half / n;
          add(pl.center + f * radial[static_cast<std::size_t>(half)] * std::polar(1.0, t),
              j == 0 ? NodeKind::Plate : NodeKind::Interior, j == 0 ? static_cast<std::int32_t>(l) : -1);
        }
      }
    }
  }

  // Places nodes along a curve c(s), s in [0, 1], with spacing `factor * size`.
  template <class Curve>
  std::vector<cplx> march(Curve curve, double length, double factor, bool closed) {
    constexpr int kSamples = 8192;
    std::vector<double> cum(kSamples + 1, 0.0);
    for (int i = 0; i < kSamples; ++i) {
      const double s = (i + 0.5) / kSamples;
      cum[static_cast<std::size_t>(i) + 1] = cum[static_cast<std::size_t>(i)] + length / kSamples / (factor * size(curve(s)));
    }
    const int count = std::max(closed ? 16 : 1, static_cast<int>(std::ceil(cum.back())));
    std::vector<cplx> out;
    const int last = closed ? count - 1 : count;
    std::size_t seg = 0;
    for (int k = 0; k <= last; ++k) {
      const double target = cum.back() * k / count;
      while (seg + 1 < cum.size() - 1 && cum[seg + 1] < target) ++seg;
      const double span = cum[seg + 1] - cum[seg];
      const double frac = span > 0.0 ? std::clamp((target - cum[seg]) / span, 0.0, 1.0) : 0.0;
      out.push_back(curve((static_cast<double>(seg) + frac) / kSamples));
    }
    if (!closed) out.back() = curve(1.0);
    return out;
  }

  void place_outer() {
    for (cplx z : march([](double s) { return std::polar(1.0, 2.0 * kPi * s); }, 2.0 * kPi, 1.0, true))
      add(z, NodeKind::Outer, -1);
  }

  void place_slits() {
    for (const Segment& s : g_.slits) {
      const cplx d = s.b - s.a;
      for (cplx z : march([&](double t) { return s.a + t * d; }, std::abs(d), 0.8, false)) add(z, NodeKind::Slit, -1);
    }
  }

  bool in_zone(cplx z, double margin) const {
    for (std::size_t l = 0; l < g_.plates.size(); ++l)
      if (std::abs(z - g_.plates[l].center) < zone_[l] + margin) return true;
    return false;
  }

  void place_quadtree() {
    struct Cell {
      cplx c;
      double s;
    };
    std::vector<Cell> stack{{0.0, 2.0}};
    const double half_diag = std::sqrt(0.5);
    while (!stack.empty()) {
      const Cell cell = stack.back();
      stack.pop_back();
      const double reach = cell.s * half_diag;
      if (std::abs(cell.c) - reach > 1.0) continue;
      bool inside_zone = false;
      for (std::size_t l = 0; l < g_.plates.size() && !inside_zone; ++l)
        inside_zone = std::abs(cell.c - g_.plates[l].center) + reach < zone_[l];
      if (inside_zone) continue;
      if (cell.s > size(cell.c) && cell.s > 1e-7) {
        const double q = cell.s / 4.0;
        // Fixed child order keeps the point sequence deterministic.
        stack.push_back({cell.c + cplx(q, q), cell.s / 2});
        stack.push_back({cell.c + cplx(-q, q), cell.s / 2});
        stack.push_back({cell.c + cplx(-q, -q), cell.s / 2});
        stack.push_back({cell.c + cplx(q, -q), cell.s / 2});
        continue;
      }
      const cplx z = cell.c;
      const double margin = 0.5 * cell.s;
      if (std::abs(z) > 1.0 - margin) continue;
      if (in_zone(z, margin)) continue;
      bool near = false;
      for (const Segment& s : g_.slits) near = near || distance_to_segment(z, s) < margin;
      for (cplx t : g_.refine_points) near = near || std::abs(z - t) < margin;
      if (near) continue;
      add(z, NodeKind::Interior, -1);
    }
  }

  void apply_cut() {
    const auto& u = g_.cut->u;
    const auto tris = delaunay(snapped_points());
    std::vector<double> val(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) val[i] = u(pts_[i]);
    std::set<std::pair<std::int32_t, std::int32_t>> edges;
    for (const auto& t : tris)
      for (int e = 0; e < 3; ++e) {
        std::int32_t a = t[static_cast<std::size_t>(e)], b = t[static_cast<std::size_t>((e + 1) % 3)];
        if (a > b) std::swap(a, b);
        edges.insert({a, b});
      }
    std::vector<cplx> crossings;
    for (const auto& [a, b] : edges) {
      const std::size_t ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
      if ((val[ia] > 0.0) == (val[ib] > 0.0)) continue;
      if (kind_[ia] == NodeKind::Plate || kind_[ib] == NodeKind::Plate) continue;
      double lo = 0.0, hi = 1.0;
      const bool lo_pos = val[ia] > 0.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((u(pts_[ia] + mid * (pts_[ib] - pts_[ia])) > 0.0) == lo_pos) lo = mid;
        else hi = mid;
      }
      const cplx z = pts_[ia] + 0.5 * (lo + hi) * (pts_[ib] - pts_[ia]);
      bool close = false;
      for (cplx c : crossings) close = close || std::abs(c - z) < 0.3 * size(z);
      if (!close) crossings.push_back(z);
    }
    std::vector<cplx> keep_pts;
    std::vector<NodeKind> keep_kind;
    std::vector<std::int32_t> keep_plate;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (kind_[i] == NodeKind::Interior) {
        bool close = false;
        for (cplx c : crossings) close = close || std::abs(c - pts_[i]) < 0.3 * size(c);
        if (close) continue;
      }
      keep_pts.push_back(pts_[i]);
      keep_kind.push_back(kind_[i] == NodeKind::Interior && val[i] <= 0.0 ? NodeKind::Cut : kind_[i]);
      keep_plate.push_back(plate_of_[i]);
    }
    pts_ = std::move(keep_pts);
    kind_ = std::move(keep_kind);
    plate_of_ = std::move(keep_plate);
    for (cplx c : crossings) add(c, NodeKind::Cut, -1);
  }

  // Merges nodes that share a lattice point, keeping the strongest tag.
  void dedupe() {
    std::vector<std::size_t> order(pts_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<std::pair<std::int64_t, std::int64_t>> key(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) key[i] = lattice(pts_[i]);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    std::vector<bool> drop(pts_.size(), false);
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i, best = order[i];
      for (; j < order.size() && key[order[j]] == key[order[i]]; ++j)
        if (priority(kind_[order[j]]) > priority(kind_[best])) best = order[j];
      for (std::size_t k = i; k < j; ++k)
        if (order[k] != best) drop[order[k]] = true;
      i = j;
    }
    std::vector<cplx> p;
    std::vector<NodeKind> k;
    std::vector<std::int32_t> pl;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (drop[i]) continue;
      p.push_back(snap(pts_[i]));
      k.push_back(kind_[i]);
      pl.push_back(plate_of_[i]);
    }
    pts_ = std::move(p);
    kind_ = std::move(k);
    plate_of_ = std::move(pl);
  }

  std::vector<cplx> snapped_points() {
    dedupe();
    return pts_;
  }

  bool inside_plate(std::size_t l, cplx z, double slack) const {
    const PlateOutline& pl = g_.plates[l];
    const cplx rel = z - pl.center;
    const double r = std::abs(rel);
    if (r >= pl.max_radius) return false;
    return r < pl.radial(std::arg(rel)) * (1.0 - slack);
  }

  Mesh triangulate_and_repair() {
    std::vector<std::array<std::int32_t, 3>> tris;
    int rounds = 0;
    for (;; ++rounds) {
      tris = delaunay(snapped_points());
      if (rounds == kMaxRepairRounds) break;
      std::set<std::pair<std::int32_t, std::int32_t>> edges;
      for (const auto& t : tris)
        for (int e = 0; e < 3; ++e) {
          std::int32_t a = t[static_cast<std::size_t>(e)], b = t[static_cast<std::size_t>((e + 1) % 3)];
          if (a > b) std::swap(a, b);
          edges.insert({a, b});
        }
      std::vector<std::pair<cplx, std::pair<NodeKind, std::int32_t>>> inserts;
      for (const auto& [ia, ib] : edges) {
        const cplx a = pts_[static_cast<std::size_t>(ia)];
        const cplx b = pts_[static_cast<std::size_t>(ib)];
        for (const Segment& s : g_.slits) {
          if (std::max(a.real(), b.real()) < std::min(s.a.real(), s.b.real()) ||
              std::min(a.real(), b.real()) > std::max(s.a.real(), s.b.real()) ||
              std::max(a.imag(), b.imag()) < std::min(s.a.imag(), s.b.imag()) ||
              std::min(a.imag(), b.imag()) > std::max(s.a.imag(), s.b.imag()))
            continue;
          const double d1 = orient(s.a, s.b, a), d2 = orient(s.a, s.b, b);
          const double d3 = orient(a, b, s.a), d4 = orient(a, b, s.b);
          if (!(d1 * d2 < 0.0 && d3 * d4 < 0.0)) continue;
          // Snapped slit nodes sit up to half a lattice step off an oblique slit.
          const double on_line = 4.0 / kScale * std::abs(s.b - s.a);
          if (std::abs(d1) <= on_line || std::abs(d2) <= on_line) continue;
          const double t = d1 / (d1 - d2);
          inserts.push_back({a + t * (b - a), {NodeKind::Slit, -1}});
        }
        for (std::size_t l = 0; l < g_.plates.size(); ++l) {
          const std::size_t ka = static_cast<std::size_t>(ia), kb = static_cast<std::size_t>(ib);
          if ((kind_[ka] == NodeKind::Plate && plate_of_[ka] == static_cast<std::int32_t>(l)) ||
              (kind_[kb] == NodeKind::Plate && plate_of_[kb] == static_cast<std::int32_t>(l)))
            continue;
          const cplx c = g_.plates[l].center;
          const cplx d = b - a;
          const double t = std::clamp(((c - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
          const cplx z = a + t * d;
          if (!inside_plate(l, z, 1e-9)) continue;
          const double th = std::arg(z - c);
          inserts.push_back({c + g_.plates[l].radial(th) * std::polar(1.0, th), {NodeKind::Plate, static_cast<std::int32_t>(l)}});
        }
      }
      if (inserts.empty()) break;
      const std::size_t before = pts_.size();
      for (const auto& [z, tag] : inserts) add(z, tag.first, tag.second);
      dedupe();
      if (pts_.size() == before) break;
    }
    Mesh mesh;
    mesh.params = p_;
    mesh.constraints_resolved = rounds < kMaxRepairRounds;
    std::vector<std::int32_t> remap(pts_.size(), -1);
    for (const auto& t : tris) {
      bool all_plate = true;
      for (std::int32_t v : t) all_plate = all_plate && kind_[static_cast<std::size_t>(v)] == NodeKind::Plate;
      if (all_plate) {
        const std::int32_t l = plate_of_[static_cast<std::size_t>(t[0])];
        const cplx cen = (pts_[static_cast<std::size_t>(t[0])] + pts_[static_cast<std::size_t>(t[1])] +
                          pts_[static_cast<std::size_t>(t[2])]) / 3.0;
        if (plate_of_[static_cast<std::size_t>(t[1])] == l && plate_of_[static_cast<std::size_t>(t[2])] == l &&
            inside_plate(static_cast<std::size_t>(l), cen, 0.0))
          continue;
      }
      std::array<std::int32_t, 3> out{};
      for (int k = 0; k < 3; ++k) {
        const std::size_t v = static_cast<std::size_t>(t[static_cast<std::size_t>(k)]);
        if (remap[v] < 0) {
          remap[v] = static_cast<std::int32_t>(mesh.nodes.size());
          mesh.nodes.push_back(pts_[v]);
          mesh.kind.push_back(kind_[v]);
          mesh.plate_of.push_back(plate_of_[v]);
        }
        out[static_cast<std::size_t>(k)] = remap[v];
      }
      mesh.triangles.push_back(out);
    }
    return mesh;
  }

  const MeshGeometry& g_;
  MeshParams p_;
  double alpha_, q_, h_tip_, h_point_;
  std::vector<double> zone_;
  std::vector<cplx> tips_;
  std::vector<cplx> pts_;
  std::vector<NodeKind> kind_;
  std::vector<std::int32_t> plate_of_;
};

}  // namespace

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Interior: return "interior";
    case NodeKind::Plate: return "plate";
    case NodeKind::Outer: return "outer";
    case NodeKind::Slit: return "slit";
    case NodeKind::Cut: return "cut";
  }
  return "unknown";
}

void Mesh::write_text(std::ostream& out) const {
  out.precision(17);
  out << "nodes " << nodes.size() << '\n';
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out << i << ' ' << nodes[i].real() << ' ' << nodes[i].imag() << ' ' << to_string(kind[i]) << ' ' << plate_of[i]
        << '\n';
  out << "triangles " << triangles.size() << '\n';
  for (std::size_t i = 0; i < triangles.size(); ++i)
    out << i << ' ' << triangles[i][0] << ' ' << triangles[i][1] << ' ' << triangles[i][2] << '\n';
}

std::vector<std::array<std::int32_t, 3>> delaunay(const std::vector<cplx>& points) {
  namespace bp = boost::polygon;
  std::vector<bp::point_data<std::int32_t>> input;
  input.reserve(points.size());
  for (const cplx& z : points) {
    const auto [x, y] = lattice(z);
    require(std::llabs(x) < (1LL << 30) && std::llabs(y) < (1LL << 30), ErrorKind::Geometry,
            "mesh point outside the integer lattice range");
    input.emplace_back(static_cast<std::int32_t>(x), static_cast<std::int32_t>(y));
  }
  bp::voronoi_diagram<double> vd;
  bp::construct_voronoi(input.begin(), input.end(), &vd);
  std::vector<std::array<std::int32_t, 3>> tris;
  tris.reserve(2 * points.size());
  std::vector<std::int32_t> ring;
  for (const auto& v : vd.vertices()) {
    ring.clear();
    const auto* e = v.incident_edge();
    do {
      ring.push_back(static_cast<std::int32_t>(e->cell()->source_index()));
      e = e->rot_next();
    } while (e != v.incident_edge());
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
      std::array<std::int32_t, 3> t{ring[0], ring[k], ring[k + 1]};
      const double area = orient(points[static_cast<std::size_t>(t[0])], points[static_cast<std::size_t>(t[1])],
                                 points[static_cast<std::size_t>(t[2])]);
      if (area == 0.0) continue;
      if (area < 0.0) std::swap(t[1], t[2]);
      tris.push_back(t);
    }
  }
  return tris;
}

Mesh build_mesh(const MeshGeometry& geometry, const MeshParams& params) { return Builder(geometry, params).run(); }

}  // namespace condenser::fem
