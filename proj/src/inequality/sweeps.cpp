#include "condenser/inequality/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "condenser/inequality/checks.hpp"

namespace condenser::inequality {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<double> sorted_angles(Rng& rng, int count, double min_gap) {
  for (;;) {
    std::vector<double> t;
    for (int i = 0; i < count; ++i) t.push_back(uniform(rng, 0.0, 2.0 * kPi));
    std::sort(t.begin(), t.end());
    bool ok = true;
    for (int i = 0; i < count; ++i) {
      const double next = i + 1 < count ? t[static_cast<std::size_t>(i + 1)] : t[0] + 2.0 * kPi;
      ok = ok && next - t[static_cast<std::size_t>(i)] > min_gap;
    }
    if (ok) return t;
  }
}

std::vector<double> moduli(Rng& rng, int n) {
  std::vector<double> m;
  for (int k = 0; k < n; ++k) m.push_back(uniform(rng, 0.2, 3.0));
  return m;
}

RadialConfig two_per_ray_config(Rng& rng) {
  const int n = uniform_int(rng, 1, 5);
  std::vector<double> a, b;
  for (int k = 0; k < n; ++k) {
    const double x = uniform(rng, 0.2, 3.0);
    double y;
    do y = uniform(rng, 0.2, 3.0);
    while (std::abs(y - x) < 1e-3);
    a.push_back(x);
    b.push_back(y);
  }
  return RadialConfig::two_per_ray(a, b);
}

// Sectors with vertex 0 between consecutive cut angles; cuts[k] < cuts[k+1].
CanonicalDomain sector_between(double lo, double hi) {
  return CanonicalDomain::sector(0.0, std::polar(1.0, 0.5 * (lo + hi)), hi - lo);
}

Thm4Config thm4_config(Rng& rng) {
  const int n = uniform_int(rng, 1, 4);
  auto ray = [n](int k) { return std::polar(1.0, 2.0 * kPi * k / n); };
  if (uniform_int(rng, 0, 1) == 0) {
    // One exterior disk shared by every D_k.
    const double a = uniform(rng, 0.2, 2.0);
    const double b = a * uniform(rng, 1.0, 2.0);
    Thm4Config cfg{n, CanonicalDomain::disk(0.0, a), {}, {}};
    for (int k = 1; k <= n; ++k) {
      cfg.domains.push_back(CanonicalDomain::exterior_disk(0.0, b));
      cfg.points.push_back(b * uniform(rng, 1.05, 4.0) * ray(k));
    }
    return cfg;
  }
  // Pairwise disjoint disks along the rays, outside a central disk.
  const double a = uniform(rng, 0.2, 1.5);
  Thm4Config cfg{n, CanonicalDomain::disk(0.0, a), {}, {}};
  const double half_angle = n == 1 ? 0.5 * kPi : kPi / n;
  for (int k = 1; k <= n; ++k) {
    const double c = a * uniform(rng, 1.3, 4.0);
    const double room = std::min(c - a, c * std::sin(half_angle));
    const double rad = room * uniform(rng, 0.2, 0.95);
    cfg.domains.push_back(CanonicalDomain::disk(c * ray(k), rad));
    cfg.points.push_back((c + rad * uniform(rng, -0.9, 0.9)) * ray(k));
  }
  return cfg;
}

PairConfig thm5_config(Rng& rng) {
  const int n = uniform_int(rng, 1, 4);
  const double r = uniform(rng, 0.2, 2.0);
  const double big_r = r * uniform(rng, 1.1, 5.0);
  const auto t = sorted_angles(rng, n, 0.05);
  PairConfig cfg;
  std::vector<double> cuts;
  for (int k = 0; k < n; ++k) {
    const double next = k + 1 < n ? t[static_cast<std::size_t>(k + 1)] : t[0] + 2.0 * kPi;
    cuts.push_back(t[static_cast<std::size_t>(k)] + uniform(rng, 0.05, 0.95) * (next - t[static_cast<std::size_t>(k)]));
  }
  for (int k = 0; k < n; ++k) {
    const double lo = k == 0 ? cuts[static_cast<std::size_t>(n - 1)] - 2.0 * kPi : cuts[static_cast<std::size_t>(k - 1)];
    const double hi = cuts[static_cast<std::size_t>(k)];
    cfg.domains.push_back(sector_between(lo, hi));
    cfg.z.push_back(std::polar(r, t[static_cast<std::size_t>(k)]));
    cfg.zeta.push_back(std::polar(big_r, t[static_cast<std::size_t>(k)]));
  }
  return cfg;
}

PairConfig thm6_config(Rng& rng) {
  const int n = uniform_int(rng, 1, 4);
  const double r = uniform(rng, 0.2, 2.0);
  const auto t = sorted_angles(rng, 2 * n, 0.05);
  // One cut in each gap between consecutive pairs.
  std::vector<double> cuts;
  for (int k = 0; k < n; ++k) {
    const double b = t[static_cast<std::size_t>(2 * k + 1)];
    const double next = k + 1 < n ? t[static_cast<std::size_t>(2 * k + 2)] : t[0] + 2.0 * kPi;
    cuts.push_back(b + uniform(rng, 0.05, 0.95) * (next - b));
  }
  PairConfig cfg;
  for (int k = 0; k < n; ++k) {
    const double lo = k == 0 ? cuts[static_cast<std::size_t>(n - 1)] - 2.0 * kPi : cuts[static_cast<std::size_t>(k - 1)];
    cfg.domains.push_back(sector_between(lo, cuts[static_cast<std::size_t>(k)]));
    cfg.z.push_back(std::polar(r, t[static_cast<std::size_t>(2 * k)]));
    cfg.zeta.push_back(std::polar(r, t[static_cast<std::size_t>(2 * k + 1)]));
  }
  return cfg;
}

InequalityReport thm7_trial(Rng& rng) {
  using analytic::MobiusMap;
  const int n = uniform_int(rng, 1, 4);
  const double s = uniform(rng, 0.2, 1.0);
  const cplx c(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  const cplx a = std::polar(uniform(rng, 0.0, 0.8), uniform(rng, 0.0, 2.0 * kPi));
  const MobiusMap f = MobiusMap::translation(c)
                          .compose(MobiusMap::scaling(std::polar(s, uniform(rng, 0.0, 2.0 * kPi))))
                          .compose(MobiusMap::disk_automorphism(a));
  const cplx w0 = c + std::polar(s * uniform(rng, 0.0, 0.8), uniform(rng, 0.0, 2.0 * kPi));
  const double room = s - std::abs(w0 - c);
  const double theta0 = uniform(rng, 0.0, 2.0 * kPi);
  std::vector<cplx> z;
  const MobiusMap inv = f.inverse();
  for (int k = 1; k <= n; ++k) {
    const cplx w = w0 + std::polar(room * uniform(rng, 0.05, 0.95), theta0 - 2.0 * kPi * (k - 1) / n);
    z.push_back(inv(w));
  }
  return check_thm7(AnalyticFunction::mobius(f), analytic::CompactSet::closed_disk(s), w0, z);
}

core::CondenserSpec disks_spec(Rng& rng, int m, double radius_bound, std::vector<double> deltas) {
  // m disjoint disks inside Disk(0, radius_bound), one point each.
  for (;;) {
    std::vector<CanonicalDomain> comps;
    std::vector<cplx> centers;
    std::vector<double> radii;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      const cplx c = std::polar(uniform(rng, 0.0, 0.8 * radius_bound), uniform(rng, 0.0, 2.0 * kPi));
      const double rad = uniform(rng, 0.05, 0.5) * radius_bound;
      ok = std::abs(c) + rad < radius_bound;
      for (std::size_t j = 0; j < centers.size() && ok; ++j) ok = std::abs(c - centers[j]) > rad + radii[j];
      centers.push_back(c);
      radii.push_back(rad);
    }
    if (!ok) continue;
    core::CondenserSpec spec;
    for (int i = 0; i < m; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      spec.components.push_back(CanonicalDomain::disk(centers[ui], radii[ui]));
      const cplx p = centers[ui] + std::polar(radii[ui] * uniform(rng, 0.0, 0.9), uniform(rng, 0.0, 2.0 * kPi));
      spec.plates.push_back({SpherePoint(p), deltas[ui], {}});
      spec.component_of.push_back(ui);
    }
    return spec;
  }
}

InequalityReport nehari_trial(Rng& rng) {
  const int m = uniform_int(rng, 1, 4);
  std::vector<double> deltas;
  for (int i = 0; i < m; ++i) {
    double d;
    do d = uniform(rng, -2.0, 2.0);
    while (std::abs(d) < 0.05);
    deltas.push_back(d);
  }
  const double big = uniform(rng, 1.0, 3.0);
  core::CondenserSpec small = disks_spec(rng, m, 1.0, deltas);
  core::CondenserSpec large = small;
  large.components = {CanonicalDomain::disk(0.0, big)};
  large.component_of.assign(static_cast<std::size_t>(m), 0);
  return check_nehari(small, &large, NehariMode::General);
}

InequalityReport goluzin_trial(Rng& rng) {
  const int m = uniform_int(rng, 2, 4);
  std::vector<double> deltas;
  double sum = 0.0;
  for (int i = 0; i + 1 < m; ++i) {
    double d;
    do d = uniform(rng, -2.0, 2.0);
    while (std::abs(d) < 0.05);
    deltas.push_back(d);
    sum += d;
  }
  if (std::abs(sum) < 0.05) sum = sum < 0 ? -0.05 : 0.05, deltas[0] += sum - std::accumulate(deltas.begin(), deltas.end(), 0.0);
  deltas.push_back(-std::accumulate(deltas.begin(), deltas.end(), 0.0));
  return check_nehari(disks_spec(rng, m, 3.0, deltas), nullptr, NehariMode::Goluzin);
}

InequalityReport thm8_trial(Rng& rng) {
  using analytic::MobiusMap;
  const int n = uniform_int(rng, 1, 3);
  std::vector<AnalyticFunction> fs;
  for (const auto& f : thm8_extremals(n)) {
    const MobiusMap g = MobiusMap::disk_automorphism(cplx(0.0, uniform(rng, -0.6, 0.6)))
                            .compose(MobiusMap::scaling(std::polar(uniform(rng, 0.3, 1.0), 0.0)));
    fs.push_back(f.precompose(g));
  }
  return check_thm8(fs, Thm8Mode::Schwarzian);
}

using Trial = std::function<InequalityReport(Rng&)>;

const std::map<std::string, Trial>& trials() {
  static const std::map<std::string, Trial> t = {
      {"eq11", [](Rng& rng) { return check_radial(RadialConfig::one_per_ray(moduli(rng, uniform_int(rng, 2, 6))), RadialMode::Eq11); }},
      {"thm3", [](Rng& rng) {
         if (uniform_int(rng, 0, 1) == 0)
           return check_radial(RadialConfig::one_per_ray(moduli(rng, uniform_int(rng, 2, 6))), RadialMode::Thm3);
         return check_radial(two_per_ray_config(rng), RadialMode::Thm3);
       }},
      {"two_per_ray", [](Rng& rng) { return check_radial(two_per_ray_config(rng), RadialMode::TwoPerRay); }},
      {"strengthened", [](Rng& rng) { return check_radial(RadialConfig::one_per_ray(moduli(rng, uniform_int(rng, 2, 6))), RadialMode::Strengthened); }},
      {"schur", [](Rng& rng) {
         std::vector<cplx> z;
         for (double t : sorted_angles(rng, uniform_int(rng, 2, 6), 1e-3)) z.push_back(std::polar(1.0, t));
         return check_circle_pair(z, 2.0, 1.0, 0.0);
       }},
      {"circle_pair", [](Rng& rng) {
         const double r = uniform(rng, 0.5, 2.0);
         std::vector<cplx> z;
         for (double t : sorted_angles(rng, uniform_int(rng, 2, 5), 1e-3)) z.push_back(std::polar(r, t));
         double ratio;
         do ratio = uniform(rng, 0.2, 5.0);
         while (std::abs(ratio - 1.0) < 0.05);
         return check_circle_pair(z, ratio, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
       }},
      {"thm4", [](Rng& rng) { return check_thm4(thm4_config(rng)); }},
      {"thm5", [](Rng& rng) { return check_thm5(thm5_config(rng)); }},
      {"thm6", [](Rng& rng) { return check_thm6(thm6_config(rng)); }},
      {"thm7", thm7_trial},
      {"nehari", nehari_trial},
      {"goluzin", goluzin_trial},
      {"thm8", thm8_trial},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& sweep_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : trials()) v.push_back(k);
    return v;
  }();
  return names;
}

SweepSummary random_sweep(const std::string& check, std::uint64_t seed, int trial_count) {
  const auto it = trials().find(check);
  require(it != trials().end(), ErrorKind::InvalidInput, "unknown sweep check: " + check);
  require(trial_count >= 1, ErrorKind::InvalidInput, "sweeps need at least one trial");
  Rng rng(seed);
  SweepSummary s;
  s.check = check;
  s.seed = seed;
  s.trials = trial_count;
  s.min_margin = std::numeric_limits<double>::infinity();
  s.min_relative_margin = s.min_margin;
  for (int i = 0; i < trial_count; ++i) {
    const InequalityReport rep = it->second(rng);
    if (rep.precondition_failed) {
      ++s.skipped;
      continue;
    }
    s.min_margin = std::min(s.min_margin, rep.margin);
    s.min_relative_margin =
        std::min(s.min_relative_margin, rep.margin / std::max({1.0, std::abs(rep.lhs), std::abs(rep.rhs)}));
    if (rep.violated()) {
      ++s.violations;
      if (s.failures.size() < 5) s.failures.push_back(rep);
    }
  }
  return s;
}

}  // namespace condenser::inequality
