#include <cmath>
#include <numeric>
#include <string>

#include "condenser/core/term_filter.hpp"
#include "condenser/fem/solver.hpp"
#include "condenser/inequality/checks.hpp"

namespace condenser::inequality {
namespace {

bool same(const CanonicalDomain& a, const CanonicalDomain& b) { return a.describe() == b.describe(); }

// Component labels of the union of the domains: equal domains share a
// component, distinct ones must be provably disjoint.
std::vector<std::size_t> union_components(const std::vector<CanonicalDomain>& ds) {
  std::vector<std::size_t> label(ds.size());
  std::iota(label.begin(), label.end(), 0);
  for (std::size_t k = 0; k < ds.size(); ++k)
    for (std::size_t l = 0; l < k; ++l) {
      if (same(ds[k], ds[l])) {
        label[k] = label[l];
        break;
      }
      const auto dis = analytic::disjoint(ds[k], ds[l]);
      require(dis.has_value(), ErrorKind::UnsupportedDomain,
              "cannot decide whether " + ds[k].describe() + " and " + ds[l].describe() + " overlap");
      require(*dis, ErrorKind::UnsupportedDomain,
              "overlapping distinct domains: their union has no canonical description");
    }
  return label;
}

void require_nonoverlapping(const std::vector<CanonicalDomain>& ds, InequalityReport* unverified) {
  for (std::size_t k = 0; k < ds.size(); ++k)
    for (std::size_t l = 0; l < k; ++l) {
      const auto dis = analytic::disjoint(ds[k], ds[l]);
      if (!dis) {
        if (unverified) unverified->metadata["disjointness"] = "not verified for every pair";
        continue;
      }
      require(*dis, ErrorKind::InvalidInput,
              "domains " + ds[k].describe() + " and " + ds[l].describe() + " overlap");
    }
}

InequalityReport pair_product(const std::string& name, const PairConfig& cfg, double bound) {
  const std::size_t n = cfg.domains.size();
  require(n >= 1 && cfg.z.size() == n && cfg.zeta.size() == n, ErrorKind::InvalidInput,
          "one domain and one pair of points per index");
  core::FilteredProduct lhs;
  std::vector<Term> terms;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& d = cfg.domains[k];
    require(d.contains(cfg.z[k]) && d.contains(cfg.zeta[k]), ErrorKind::InvalidInput,
            "points " + std::to_string(k) + " are not in their domain");
    const double r1 = analytic::inner_radius(d, cfg.z[k]);
    const double r2 = analytic::inner_radius(d, cfg.zeta[k]);
    const double g = analytic::green(d, cfg.z[k], cfg.zeta[k]);
    terms.push_back({"r(D_" + std::to_string(k) + ",z)", r1, "inner radius"});
    terms.push_back({"r(D_" + std::to_string(k) + ",zeta)", r2, "inner radius"});
    terms.push_back({"g_" + std::to_string(k) + "(z,zeta)", g, "Green function"});
    lhs.multiply(r1);
    lhs.multiply(r2);
    lhs.multiply(std::exp(-2.0 * g));
  }
  auto rep = make_report(name, Relation::LessEqual, lhs.value(), bound, kAnalyticTolerance, std::move(terms));
  require_nonoverlapping(cfg.domains, &rep);
  return rep;
}

}  // namespace

Thm4Config Thm4Config::extremal(int n, double radius) {
  require(n >= 1 && radius > 0.0, ErrorKind::InvalidInput, "extremal configuration needs n >= 1 and R > 0");
  const double c = 0.5 * std::pow(radius, n);
  Thm4Config cfg{n, CanonicalDomain::power_preimage(c, n), {}, {}};
  for (int k = 1; k <= n; ++k) {
    cfg.domains.push_back(CanonicalDomain::power_preimage_petal(c, n, k));
    cfg.points.push_back(std::polar(radius, 2.0 * kPi * k / n));
  }
  return cfg;
}

InequalityReport check_thm4(const Thm4Config& cfg) {
  const int n = cfg.n;
  require(n >= 1 && cfg.domains.size() == static_cast<std::size_t>(n) && cfg.points.size() == cfg.domains.size(),
          ErrorKind::InvalidInput, "the petal check needs n domains and n points");
  require(cfg.d0.contains(SpherePoint(0.0)), ErrorKind::InvalidInput, "D_0 must contain 0");
  for (int k = 1; k <= n; ++k) {
    const cplx z = cfg.points[static_cast<std::size_t>(k - 1)];
    require(z != cplx(0.0) && std::abs(std::arg(z / std::polar(1.0, 2.0 * kPi * k / n))) <= 1e-10,
            ErrorKind::InvalidInput, "arg z_k must equal 2 pi k / n");
    require(cfg.domains[static_cast<std::size_t>(k - 1)].contains(z), ErrorKind::InvalidInput,
            "z_" + std::to_string(k) + " is not in D_" + std::to_string(k));
  }
  const auto label = union_components(cfg.domains);
  std::vector<Term> terms;
  core::FilteredProduct lhs;
  double gsum = 0.0;
  for (std::size_t k = 0; k < label.size(); ++k)
    for (std::size_t l = k + 1; l < label.size(); ++l)
      if (label[k] == label[l]) {
        const double g = analytic::green(cfg.domains[k], cfg.points[l], cfg.points[k]);
        terms.push_back({"g_" + std::to_string(k + 1) + "(z_" + std::to_string(l + 1) + ")", g, "Green function"});
        gsum += g;
      }
  lhs.multiply(std::exp(2.0 * gsum));
  const double r0 = analytic::inner_radius(cfg.d0, SpherePoint(0.0));
  terms.push_back({"r(D_0,0)", r0, "inner radius"});
  lhs.multiply_pow(r0, static_cast<double>(n) * n);
  for (int k = 0; k < n; ++k) {
    const double r = analytic::inner_radius(cfg.domains[static_cast<std::size_t>(k)], cfg.points[static_cast<std::size_t>(k)]);
    terms.push_back({"r(D_" + std::to_string(k + 1) + ",z_" + std::to_string(k + 1) + ")", r, "inner radius"});
    lhs.multiply(r);
  }
  core::FilteredProduct rhs;
  rhs.multiply_pow(n, -static_cast<double>(n));
  for (cplx z : cfg.points) rhs.multiply_pow(std::abs(z), n + 1.0);
  auto rep = make_report("thm4", Relation::LessEqual, lhs.value(), rhs.value(), kAnalyticTolerance, std::move(terms));
  for (const auto& d : cfg.domains) {
    const auto dis = analytic::disjoint(cfg.d0, d);
    if (!dis) {
      rep.metadata["disjointness"] = "D_0 against some D_k not verified";
      continue;
    }
    require(*dis, ErrorKind::InvalidInput, "D_0 meets " + d.describe());
  }
  return rep;
}

double thm5_bound(int n, double r, double big_r) {
  require(n >= 1 && r > 0.0 && big_r > r, ErrorKind::InvalidInput, "the sector-pair check needs 0 < r < R");
  const double a = std::pow(big_r, 0.5 * n);
  const double b = std::pow(r, 0.5 * n);
  return std::pow(4.0 * std::sqrt(r * big_r) * (a - b) / (n * (a + b)), 2.0 * n);
}

double thm6_bound(int n, double r) {
  require(n >= 1 && r > 0.0, ErrorKind::InvalidInput, "the circle-pair check needs r > 0");
  return std::pow(2.0 * r / n, 2.0 * n);
}

PairConfig PairConfig::thm5_extremal(int n, double r, double big_r) {
  PairConfig cfg;
  for (int k = 1; k <= n; ++k) {
    const cplx dir = std::polar(1.0, kPi / n + 2.0 * kPi * k / n);
    cfg.domains.push_back(CanonicalDomain::sector(0.0, dir, 2.0 * kPi / n));
    cfg.z.push_back(r * dir);
    cfg.zeta.push_back(big_r * dir);
  }
  return cfg;
}

PairConfig PairConfig::thm6_extremal(int n, double r) {
  PairConfig cfg;
  for (int k = 1; k <= n; ++k) {
    cfg.domains.push_back(CanonicalDomain::sector(0.0, std::polar(1.0, kPi / n + 2.0 * kPi * k / n), 2.0 * kPi / n));
    cfg.z.push_back(std::polar(r, kPi / (2.0 * n) + 2.0 * kPi * k / n));
    cfg.zeta.push_back(std::polar(r, 3.0 * kPi / (2.0 * n) + 2.0 * kPi * k / n));
  }
  return cfg;
}

InequalityReport check_thm5(const PairConfig& cfg) {
  const int n = static_cast<int>(cfg.domains.size());
  require(n >= 1 && cfg.z.size() == cfg.domains.size() && cfg.zeta.size() == cfg.domains.size(),
          ErrorKind::InvalidInput, "one domain and one pair of points per index");
  const double r = std::abs(cfg.z[0]);
  const double big_r = std::abs(cfg.zeta[0]);
  for (int k = 0; k < n; ++k) {
    const cplx z = cfg.z[static_cast<std::size_t>(k)];
    const cplx w = cfg.zeta[static_cast<std::size_t>(k)];
    require(std::abs(std::abs(z) - r) <= 1e-12 * r && std::abs(std::abs(w) - big_r) <= 1e-12 * big_r,
            ErrorKind::InvalidInput, "points must lie on |z| = r and |zeta| = R");
    require(std::abs(std::arg(w / z)) <= 1e-10, ErrorKind::InvalidInput, "arg z_k must equal arg zeta_k");
  }
  auto rep = pair_product("thm5", cfg, thm5_bound(n, r, big_r));
  rep.metadata["extremal-opening"] = "2 pi / n";
  return rep;
}

InequalityReport check_thm6(const PairConfig& cfg) {
  const int n = static_cast<int>(cfg.domains.size());
  require(n >= 1 && cfg.z.size() == cfg.domains.size() && cfg.zeta.size() == cfg.domains.size(),
          ErrorKind::InvalidInput, "one domain and one pair of points per index");
  const double r = std::abs(cfg.z[0]);
  for (std::size_t k = 0; k < cfg.z.size(); ++k)
    require(std::abs(std::abs(cfg.z[k]) - r) <= 1e-12 * r && std::abs(std::abs(cfg.zeta[k]) - r) <= 1e-12 * r,
            ErrorKind::InvalidInput, "all points must lie on one circle |z| = r");
  return pair_product("thm6", cfg, thm6_bound(n, r));
}

Lemma2Result lemma2_decompose(const CanonicalDomain& d, cplx z1, cplx z2, const fem::SolveOptions* numeric) {
  require(z1 != z2, ErrorKind::InvalidInput, "the two points must differ");
  require(d.contains(z1) && d.contains(z2), ErrorKind::InvalidInput, "both points must lie in the domain");
  Lemma2Result res;
  res.log_product = std::log(analytic::inner_radius(d, z1)) + std::log(analytic::inner_radius(d, z2)) -
                    2.0 * analytic::green(d, z1, z2);
  res.product = std::exp(res.log_product);
  const auto* disk = std::get_if<analytic::Disk>(&d.variant());
  if (numeric && disk) {
    const CanonicalDomain dd = d;
    auto u = [dd, z1, z2](cplx z) {
      if (z == z1) return 1e300;
      if (z == z2) return -1e300;
      return analytic::green(dd, z, z1) - analytic::green(dd, z, z2);
    };
    const auto base = fem::NumericDomain::disk(disk->center, disk->radius);
    const auto d1 = base.with_cut({u, "g(., z1) - g(., z2) > 0"});
    const auto d2 = base.with_cut({[u](cplx z) { return -u(z); }, "g(., z2) - g(., z1) > 0"});
    const auto e1 = fem::numeric_inner_radius(d1, z1, *numeric);
    const auto e2 = fem::numeric_inner_radius(d2, z2, *numeric);
    res.numeric_r1 = e1.value;
    res.numeric_r2 = e2.value;
    res.numeric_error = e1.error_estimate * e2.value + e2.error_estimate * e1.value;
  }
  return res;
}

}  // namespace condenser::inequality
