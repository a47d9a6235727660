#include <cmath>
#include <string>

#include "condenser/core/term_filter.hpp"
#include "condenser/inequality/checks.hpp"

namespace condenser::inequality {
namespace {

cplx ray(int k, int n) { return std::polar(1.0, 2.0 * kPi * k / n); }

struct Flat {
  std::vector<cplx> z;
  std::vector<double> delta;
  std::vector<int> ray;
};

Flat flatten(const RadialConfig& cfg) {
  Flat f;
  for (int k = 0; k < cfg.n; ++k)
    for (std::size_t l = 0; l < cfg.points[static_cast<std::size_t>(k)].size(); ++l) {
      f.z.push_back(cfg.points[static_cast<std::size_t>(k)][l]);
      f.delta.push_back(cfg.deltas[static_cast<std::size_t>(k)][l]);
      f.ray.push_back(k);
    }
  return f;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

InequalityReport thm3(const RadialConfig& cfg) {
  const double n = cfg.n;
  const double nu = cfg.nu();
  const auto nuk = cfg.nu_k();
  double total = 0.0, weighted = 0.0, nusum = 0.0;
  for (int k = 0; k < cfg.n; ++k) {
    double s = 0.0;
    for (double d : cfg.deltas[static_cast<std::size_t>(k)]) s += d;
    total += s;
    weighted += nuk[static_cast<std::size_t>(k)] * nuk[static_cast<std::size_t>(k)] * s * s;
    nusum += nuk[static_cast<std::size_t>(k)];
  }
  const double c1_lhs = nu * nu * total * total;
  const double c1_rhs = weighted / n;
  const double c2_rhs = nusum / (n * n);
  const bool c1 = close(c1_lhs, c1_rhs);
  const bool c2 = close(nu, c2_rhs);
  if (!c1 || !c2) {
    std::string why;
    if (!c1)
      why += "nu^2 (sum delta)^2 = " + std::to_string(c1_lhs) + " differs from (1/n) sum nu_k^2 (sum_l delta_kl)^2 = " +
             std::to_string(c1_rhs) + ". ";
    if (!c2)
      why += "nu = (sum delta^2)^-1 = " + std::to_string(nu) + " differs from n^-2 sum nu_k = " + std::to_string(c2_rhs) +
             ".";
    return precondition_report("thm3", why);
  }
  const Flat f = flatten(cfg);
  core::FilteredProduct lhs, rhs;
  for (std::size_t a = 0; a < f.z.size(); ++a)
    for (std::size_t b = 0; b < f.z.size(); ++b)
      lhs.multiply_pow(std::abs(f.z[a] - f.z[b]), n * n * nu * nu * f.delta[a] * f.delta[b]);
  for (std::size_t a = 0; a < f.z.size(); ++a) {
    const double nk = nuk[static_cast<std::size_t>(f.ray[a])];
    rhs.multiply_pow(n * std::pow(std::abs(f.z[a]), n - 1.0), nk * nk * f.delta[a] * f.delta[a]);
    for (std::size_t b = 0; b < f.z.size(); ++b) {
      if (f.ray[b] != f.ray[a]) continue;
      rhs.multiply_pow(std::abs(std::pow(std::abs(f.z[a]), n) - std::pow(std::abs(f.z[b]), n)),
                       nk * nk * f.delta[a] * f.delta[b]);
    }
  }
  auto rep = make_report("thm3", Relation::GreaterEqual, lhs.value(), rhs.value(), kAnalyticTolerance,
                         {{"nu", nu, "(sum delta^2)^-1"}});
  rep.metadata["rhs-exponent"] = "nu_k^2 delta_kl^2";
  return rep;
}

InequalityReport eq11(const RadialConfig& cfg) {
  const int n = cfg.n;
  for (int k = 0; k < n; ++k) {
    const auto& pts = cfg.points[static_cast<std::size_t>(k)];
    if (pts.size() != 1 || cfg.deltas[static_cast<std::size_t>(k)][0] != 1.0)
      return precondition_report("eq11", "needs exactly one point per ray with delta = 1");
  }
  core::FilteredProduct lhs, rhs;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      lhs.multiply(std::abs(cfg.points[static_cast<std::size_t>(k)][0] - cfg.points[static_cast<std::size_t>(l)][0]));
  rhs.multiply_pow(n, n);
  for (int k = 0; k < n; ++k) rhs.multiply_pow(std::abs(cfg.points[static_cast<std::size_t>(k)][0]), n - 1.0);
  return make_report("eq11", Relation::GreaterEqual, lhs.value(), rhs.value(), kAnalyticTolerance);
}

InequalityReport two_per_ray(const RadialConfig& cfg) {
  const int n = cfg.n;
  for (int k = 0; k < n; ++k) {
    const auto& d = cfg.deltas[static_cast<std::size_t>(k)];
    if (d.size() != 2 || d[0] != 1.0 || d[1] != -1.0)
      return precondition_report("two_per_ray", "needs two points per ray with delta_k1 = -delta_k2 = 1");
  }
  auto p = [&](int k, int i) { return cfg.points[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; };
  core::FilteredProduct lhs, rhs;
  lhs.multiply_pow(n, 2.0 * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      // Mixed pairs appear once for each order.
      lhs.multiply_pow(std::abs(p(k, 0) - p(l, 1)), 2.0);
      lhs.multiply_pow(std::abs(p(k, 0) - p(l, 0)), -1.0);
      lhs.multiply_pow(std::abs(p(k, 1) - p(l, 1)), -1.0);
    }
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(p(k, 0));
    const double b = std::abs(p(k, 1));
    rhs.multiply_pow(std::abs(std::pow(a, n) - std::pow(b, n)), 2.0);
    rhs.multiply_pow(a * b, -(n - 1.0));
  }
  auto rep = make_report("two_per_ray", Relation::LessEqual, lhs.value(), rhs.value(), kAnalyticTolerance);
  rep.metadata["mixed-product"] = "ordered pairs over the whole point set";
  return rep;
}

InequalityReport strengthened(const RadialConfig& cfg) {
  const int n = cfg.n;
  for (int k = 0; k < n; ++k) {
    const auto& pts = cfg.points[static_cast<std::size_t>(k)];
    if (pts.size() != 1 || cfg.deltas[static_cast<std::size_t>(k)][0] != 1.0)
      return precondition_report("strengthened", "needs exactly one point per ray with delta = 1");
  }
  auto z = [&](int k) { return cfg.points[static_cast<std::size_t>(k % n)][0]; };
  core::FilteredProduct lhs, rhs;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) lhs.multiply(std::abs(z(k) - z(l)));
  const double h = 0.5 * n;
  rhs.multiply_pow(h, n);
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(z(k));
    rhs.multiply_pow(a, h - 1.0);
    rhs.multiply(std::pow(a, h) + std::pow(std::abs(z(k + 1)), h));
  }
  return make_report("strengthened", Relation::GreaterEqual, lhs.value(), rhs.value(), kAnalyticTolerance);
}

}  // namespace

RadialConfig RadialConfig::one_per_ray(const std::vector<double>& moduli) {
  RadialConfig c;
  c.n = static_cast<int>(moduli.size());
  for (int k = 1; k <= c.n; ++k) {
    c.points.push_back({moduli[static_cast<std::size_t>(k - 1)] * ray(k, c.n)});
    c.deltas.push_back({1.0});
  }
  return c;
}

RadialConfig RadialConfig::two_per_ray(const std::vector<double>& first, const std::vector<double>& second) {
  require(first.size() == second.size(), ErrorKind::InvalidInput, "one pair of moduli per ray");
  RadialConfig c;
  c.n = static_cast<int>(first.size());
  for (int k = 1; k <= c.n; ++k) {
    const cplx e = ray(k, c.n);
    c.points.push_back({first[static_cast<std::size_t>(k - 1)] * e, second[static_cast<std::size_t>(k - 1)] * e});
    c.deltas.push_back({1.0, -1.0});
  }
  return c;
}

double RadialConfig::nu() const {
  double s = 0.0;
  for (const auto& d : deltas)
    for (double x : d) s += x * x;
  return 1.0 / s;
}

std::vector<double> RadialConfig::nu_k() const {
  std::vector<double> out;
  for (const auto& d : deltas) {
    double s = 0.0;
    for (double x : d) s += x * x;
    out.push_back(1.0 / s);
  }
  return out;
}

void RadialConfig::validate() const {
  require(n >= 1, ErrorKind::InvalidInput, "radial configurations need n >= 1");
  require(points.size() == static_cast<std::size_t>(n) && deltas.size() == points.size(), ErrorKind::InvalidInput,
          "one point list and one weight list per ray");
  std::vector<cplx> all;
  for (int k = 0; k < n; ++k) {
    const auto& pts = points[static_cast<std::size_t>(k)];
    require(!pts.empty() && pts.size() == deltas[static_cast<std::size_t>(k)].size(), ErrorKind::InvalidInput,
            "every ray needs points with one weight each");
    const cplx dir = ray(k + 1, n);
    for (std::size_t l = 0; l < pts.size(); ++l) {
      const cplx z = pts[l];
      require(z != cplx(0.0) && std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorKind::InvalidInput,
              "points must be finite and nonzero");
      require(std::abs(std::arg(z / dir)) <= 1e-12, ErrorKind::InvalidInput,
              "point " + std::to_string(z.real()) + "," + std::to_string(z.imag()) + " is not on ray " +
                  std::to_string(k + 1));
      const double d = deltas[static_cast<std::size_t>(k)][l];
      require(d != 0.0 && std::isfinite(d), ErrorKind::InvalidInput, "weights must be nonzero");
      for (cplx w : all) require(w != z, ErrorKind::InvalidInput, "points must be distinct");
      all.push_back(z);
    }
  }
}

InequalityReport check_radial(const RadialConfig& cfg, RadialMode mode) {
  cfg.validate();
  switch (mode) {
    case RadialMode::Thm3: return thm3(cfg);
    case RadialMode::Eq11: return eq11(cfg);
    case RadialMode::TwoPerRay: return two_per_ray(cfg);
    case RadialMode::Strengthened: return strengthened(cfg);
  }
  fail(ErrorKind::InvalidInput, "unknown radial mode");
}

}  // namespace condenser::inequality
