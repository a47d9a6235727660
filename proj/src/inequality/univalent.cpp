#include <cmath>
#include <string>

#include "condenser/core/term_filter.hpp"
#include "condenser/inequality/checks.hpp"

namespace condenser::inequality {
namespace {

cplx first_derivative(const AnalyticFunction& f, cplx z) {
  if (const auto jet = f.exact_jet(z)) return jet->f1;
  return analytic::numeric_derivatives(f, z).f1;
}

// Neville extrapolation of values(t) to t = 0.
double extrapolate_to_zero(std::vector<double> t, std::vector<double> v) {
  const std::size_t m = t.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) {
      v[i] = (t[i - level] * v[i] - t[i] * v[i - 1]) / (t[i - level] - t[i]);
      if (i == level) break;
    }
  return v.back();
}

}  // namespace

InequalityReport check_thm7(const AnalyticFunction& f, const analytic::CompactSet& closure, cplx w0,
                            const std::vector<cplx>& z) {
  const std::size_t n = z.size();
  require(n >= 1, ErrorKind::InvalidInput, "the univalent-image check needs at least one point");
  const double tau = analytic::transfinite_diameter(closure);
  if (tau > 1.0 + 1e-12)
    return precondition_report("thm7", "transfinite diameter of the image closure is " + std::to_string(tau) + " > 1");
  std::vector<cplx> fz;
  for (std::size_t k = 0; k < n; ++k) {
    require(std::abs(z[k]) < 1.0, ErrorKind::InvalidInput, "points must lie in the unit disk");
    for (std::size_t l = 0; l < k; ++l) require(z[k] != z[l], ErrorKind::InvalidInput, "points must be distinct");
    fz.push_back(f(z[k]));
    if (fz.back() == w0) return precondition_report("thm7", "f(z_k) = w0 for k = " + std::to_string(k + 1));
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double a = std::arg((fz[0] - w0) / (fz[k] - w0));
    const double off = std::remainder(a - 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n), 2.0 * kPi);
    if (std::abs(off) > 1e-9)
      return precondition_report("thm7", "arg condition fails at k = " + std::to_string(k + 1) + " by " +
                                             std::to_string(off));
  }
  const double nn = static_cast<double>(n);
  core::FilteredProduct lhs, num, den;
  std::vector<Term> terms;
  lhs.multiply_pow(nn, nn);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = std::abs(first_derivative(f, z[k]));
    terms.push_back({"|f'(z_" + std::to_string(k + 1) + ")|", d, f.exact_jet(z[k]) ? "exact jet" : "finite differences"});
    lhs.multiply(d);
    lhs.multiply_pow(std::abs(fz[k] - w0), nn - 1.0);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      num.multiply(std::abs(z[k] - z[l]));
      den.multiply(std::abs(1.0 - z[k] * std::conj(z[l])));
    }
  auto rep = make_report("thm7", Relation::LessEqual, lhs.value(), num.value() / den.value(), 1e-9, std::move(terms));
  rep.metadata["denominator"] = "all ordered pairs including k = l";
  return rep;
}

KEstimate k_functional(const CanonicalDomain& d, cplx w, const std::vector<double>& rho) {
  require(w != cplx(0.0), ErrorKind::InvalidInput, "K needs w != 0");
  require(rho.size() >= 2, ErrorKind::InvalidInput, "K needs at least two values of rho");
  KEstimate est;
  std::vector<double> t, k;
  for (double p : rho) {
    require(p > 0.0 && p < 1.0, ErrorKind::InvalidInput, "rho must lie in (0, 1)");
    const cplx a = (1.0 - p) * w;
    const cplx b = (1.0 + p) * w;
    require(d.contains(a) && d.contains(b), ErrorKind::InvalidInput, "(1 +- rho) w must lie in the domain");
    const double bracket = std::log(analytic::inner_radius(d, a)) + std::log(analytic::inner_radius(d, b)) -
                           2.0 * analytic::green(d, a, b) - 2.0 * std::log(2.0 * p * std::abs(w));
    est.rho.push_back(p);
    est.bracket.push_back(bracket);
    t.push_back(p * p);
    k.push_back(-bracket / (4.0 * p * p));
  }
  const std::size_t m = rho.size();
  const double b1 = est.bracket[m - 2];
  const double b2 = est.bracket[m - 1];
  if (std::max(std::abs(b1), std::abs(b2)) < 1e-13) {
    est.exponent = 2.0;
  } else {
    est.exponent = std::log(std::abs(b1 / b2)) / std::log(rho[m - 2] / rho[m - 1]);
    require(b1 * b2 > 0.0 && std::abs(est.exponent - 2.0) <= 0.1, ErrorKind::NumericFailure,
            "K bracket is not quadratic in rho: fitted exponent " + std::to_string(est.exponent));
  }
  est.value = extrapolate_to_zero(t, k);
  return est;
}

double thm8_term(const AnalyticFunction& f, DerivativeSource source) {
  analytic::Jet3 jet{};
  const auto exact = source == DerivativeSource::Numeric ? std::nullopt : f.exact_jet(0.0);
  if (exact) {
    jet = *exact;
  } else {
    require(source != DerivativeSource::Exact, ErrorKind::InvalidInput, f.name() + " has no exact jet");
    const auto d = analytic::numeric_derivatives(f, 0.0);
    jet = {f(0.0), d.f1, d.f2, d.f3};
  }
  const cplx s = analytic::schwarzian_from_jet(jet);
  return 1.0 / std::norm(jet.f1) - (jet.f * jet.f * s / (jet.f1 * jet.f1)).real() / 6.0;
}

InequalityReport check_thm8(const std::vector<AnalyticFunction>& fs, Thm8Mode mode, DerivativeSource source) {
  const std::size_t n = fs.size();
  require(n >= 1, ErrorKind::InvalidInput, "the Schwarzian check needs at least one function");
  for (const auto& f : fs)
    require(std::abs(std::abs(f(0.0)) - 1.0) <= 1e-9, ErrorKind::InvalidInput, "|f_k(0)| must equal 1");
  std::vector<std::optional<CanonicalDomain>> images;
  for (const auto& f : fs) images.push_back(f.image_of_unit_disk());
  bool checked = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      if (!images[j]) {
        checked = false;
        continue;
      }
      for (int s = 0; s < 64; ++s) {
        const cplx w = fs[k](std::polar(0.9, 2.0 * kPi * s / 64));
        require(!images[j]->contains(w), ErrorKind::InvalidInput,
                "images of f_" + std::to_string(k + 1) + " and f_" + std::to_string(j + 1) + " overlap");
      }
    }
  std::vector<Term> terms;
  double schwarz_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = thm8_term(fs[k], source);
    terms.push_back({"schwarzian term " + std::to_string(k + 1), t,
                     source != DerivativeSource::Numeric && fs[k].exact_jet(0.0) ? "exact jet" : "finite differences"});
    schwarz_sum += t;
  }
  std::optional<double> k_sum;
  bool all_images = true;
  for (const auto& im : images) all_images = all_images && im.has_value();
  if (all_images) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double kv = k_functional(*images[k], fs[k](0.0)).value;
      terms.push_back({"K(D_" + std::to_string(k + 1) + ")", kv, "bracket extrapolated in rho^2"});
      s += kv;
    }
    k_sum = s;
  }
  require(mode == Thm8Mode::Schwarzian || k_sum.has_value(), ErrorKind::UnsupportedDomain,
          "K-functional mode needs canonical images of the disk");
  const double lhs = mode == Thm8Mode::Schwarzian ? schwarz_sum : *k_sum;
  const double nn = static_cast<double>(n);
  const bool numeric = source == DerivativeSource::Numeric || mode == Thm8Mode::KFunctional;
  auto rep = make_report("thm8", Relation::GreaterEqual, lhs, nn * (nn * nn + 2.0) / 24.0, numeric ? 1e-6 : 1e-9,
                         std::move(terms));
  rep.metadata["mode"] = mode == Thm8Mode::Schwarzian ? "schwarzian" : "k_functional";
  rep.metadata["extremal-exponent"] = "2/n";
  if (!checked) rep.metadata["disjointness"] = "user-asserted";
  if (k_sum) {
    const double diff = std::abs(schwarz_sum - *k_sum);
    rep.terms.push_back({"mode difference", diff, "|schwarzian sum - K sum|"});
    if (diff > 1e-3) {
      rep.passed = false;
      rep.diagnostic = "consistency failure: schwarzian and K-functional sums differ by " + std::to_string(diff);
    }
  }
  return rep;
}

std::vector<AnalyticFunction> thm8_extremals(int n) {
  require(n >= 1, ErrorKind::InvalidInput, "n must be >= 1");
  const analytic::MobiusMap cayley(1.0, 1.0, -1.0, 1.0);
  std::vector<AnalyticFunction> out;
  for (int k = 1; k <= n; ++k)
    out.push_back(AnalyticFunction::power_of_mobius(cayley, 2.0 / n, std::polar(1.0, 2.0 * kPi * (k - 1) / n)));
  return out;
}

}  // namespace condenser::inequality
