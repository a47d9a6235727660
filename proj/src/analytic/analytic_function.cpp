#include "condenser/analytic/analytic_function.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace condenser::analytic {
namespace {

// Weights w_j, j = -m..m, with sum_j w_j j^i = k! [i == k] for i = 0..2m.
std::vector<long double> central_weights(int k, int m) {
  const int n = 2 * m + 1;
  std::vector<long double> a(static_cast<size_t>(n * (n + 1)));
  auto at = [&](int r, int c) -> long double& { return a[static_cast<size_t>(r * (n + 1) + c)]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = std::pow(static_cast<long double>(j - m), i);
    long double fact = 1;
    for (int q = 2; q <= k; ++q) fact *= q;
    at(i, n) = i == k ? fact : 0;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(at(r, c)) > std::fabs(at(piv, c))) piv = r;
    for (int q = 0; q <= n; ++q) std::swap(at(c, q), at(piv, q));
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = at(r, c) / at(c, c);
      for (int q = c; q <= n; ++q) at(r, q) -= f * at(c, q);
    }
  }
  std::vector<long double> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = at(i, n) / at(i, i);
  return w;
}

struct Stencil {
  int k, m, order;
  std::vector<long double> w;
};

const std::array<Stencil, 6>& stencils() {
  static const std::array<Stencil, 6> s = {
      Stencil{1, 2, 4, central_weights(1, 2)}, Stencil{1, 3, 6, central_weights(1, 3)},
      Stencil{2, 2, 4, central_weights(2, 2)}, Stencil{2, 3, 6, central_weights(2, 3)},
      Stencil{3, 3, 4, central_weights(3, 3)}, Stencil{3, 4, 6, central_weights(3, 4)},
  };
  return s;
}

cplx apply(const Stencil& s, const AnalyticFunction& f, cplx z0, double h) {
  std::complex<long double> acc = 0;
  for (int j = -s.m; j <= s.m; ++j) {
    if (s.w[static_cast<size_t>(j + s.m)] == 0) continue;
    const cplx v = f(z0 + static_cast<double>(j) * h);
    acc += s.w[static_cast<size_t>(j + s.m)] * std::complex<long double>(v.real(), v.imag());
  }
  const cplx out(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  return out / std::pow(h, s.k);
}

// Removes the h^p and h^(p+2) error terms from D(h), D(h/2), D(h/4).
cplx richardson(const Stencil& s, const AnalyticFunction& f, cplx z0, double h) {
  const cplx d0 = apply(s, f, z0, h);
  const cplx d1 = apply(s, f, z0, h / 2);
  const cplx d2 = apply(s, f, z0, h / 4);
  const double a = std::ldexp(1.0, s.order);
  const cplx e0 = (a * d1 - d0) / (a - 1.0);
  const cplx e1 = (a * d2 - d1) / (a - 1.0);
  const double b = std::ldexp(1.0, s.order + 2);
  return (b * e1 - e0) / (b - 1.0);
}

std::string fmt(cplx z) { return SpherePoint(z).to_string(); }

}  // namespace

AnalyticFunction::AnalyticFunction(Kind kind, MobiusMap map, double exponent, cplx coefficient, Callable f,
                                   std::string name)
    : kind_(kind), map_(map), exponent_(exponent), coefficient_(coefficient), f_(std::move(f)), name_(std::move(name)) {}

AnalyticFunction AnalyticFunction::identity() {
  return {Kind::Mobius, MobiusMap::identity(), 1.0, 1.0, nullptr, "identity"};
}

AnalyticFunction AnalyticFunction::mobius(const MobiusMap& map) {
  return {Kind::Mobius, map, 1.0, 1.0, nullptr, "mobius"};
}

AnalyticFunction AnalyticFunction::power_of_mobius(const MobiusMap& map, double exponent, cplx coefficient) {
  require(std::isfinite(exponent) && exponent != 0.0, ErrorKind::InvalidInput, "exponent must be finite and nonzero");
  require(coefficient != cplx(0.0), ErrorKind::InvalidInput, "coefficient must be nonzero");
  return {Kind::PowerOfMobius, map, exponent, coefficient, nullptr, "power-of-mobius"};
}

AnalyticFunction AnalyticFunction::black_box(Callable f, std::string name) {
  require(static_cast<bool>(f), ErrorKind::InvalidInput, "black-box function is empty");
  return {Kind::BlackBox, MobiusMap::identity(), 1.0, 1.0, std::move(f), std::move(name)};
}

cplx AnalyticFunction::operator()(cplx z) const {
  switch (kind_) {
    case Kind::Mobius: return map_(z);
    case Kind::PowerOfMobius: return coefficient_ * std::pow(map_(z), exponent_);
    case Kind::BlackBox: return f_(z);
  }
  return {};
}

std::optional<Jet3> AnalyticFunction::exact_jet(cplx z) const {
  if (kind_ == Kind::BlackBox) return std::nullopt;
  const cplx t0 = map_(z);
  const cplx t1 = map_.derivative(z);
  const cplx t2 = map_.second_derivative(z);
  const cplx t3 = map_.third_derivative(z);
  if (kind_ == Kind::Mobius) return Jet3{t0, t1, t2, t3};
  require(t0 != cplx(0.0), ErrorKind::InvalidInput, "power branch point at the evaluation point");
  const double a = exponent_;
  const cplx p0 = std::pow(t0, a);
  const cplx p1 = a * p0 / t0;
  const cplx p2 = a * (a - 1.0) * p0 / (t0 * t0);
  const cplx p3 = a * (a - 1.0) * (a - 2.0) * p0 / (t0 * t0 * t0);
  const cplx c = coefficient_;
  return Jet3{c * p0, c * p1 * t1, c * (p2 * t1 * t1 + p1 * t2), c * (p3 * t1 * t1 * t1 + 3.0 * p2 * t1 * t2 + p1 * t3)};
}

std::optional<CanonicalDomain> AnalyticFunction::image_of_unit_disk() const {
  switch (kind_) {
    case Kind::Mobius: return unit_disk_image(map_);
    case Kind::PowerOfMobius: {
      const double mag = std::abs(coefficient_);
      const MobiusMap scaled = MobiusMap::scaling(std::pow(mag, 1.0 / exponent_)).compose(map_);
      if (exponent_ <= 0.0) return std::nullopt;
      return CanonicalDomain::power_image(unit_disk_image(scaled), exponent_, coefficient_ / mag);
    }
    case Kind::BlackBox: return std::nullopt;
  }
  return std::nullopt;
}

AnalyticFunction AnalyticFunction::precompose(const MobiusMap& g) const {
  if (kind_ == Kind::BlackBox) {
    Callable inner = f_;
    return black_box([inner, g](cplx z) { return inner(g(z)); }, name_ + " o mobius");
  }
  AnalyticFunction out = *this;
  out.map_ = map_.compose(g);
  return out;
}

CanonicalDomain unit_disk_image(const MobiusMap& map) {
  const SpherePoint c0 = map(SpherePoint(0.0));
  if (map.has_finite_pole() && std::abs(std::abs(map.pole()) - 1.0) < 1e-12) {
    // Unit circle goes to a line; pick two boundary images away from the pole.
    const cplx p = map.pole();
    const cplx u = map(p * std::polar(1.0, 2.0 * kPi / 3.0));
    const cplx v = map(p * std::polar(1.0, -2.0 * kPi / 3.0));
    cplx normal = (v - u) * cplx(0.0, 1.0);
    normal /= std::abs(normal);
    if (((c0.value() - u) * std::conj(normal)).real() < 0.0) normal = -normal;
    return CanonicalDomain::half_plane(u, normal);
  }
  const cplx a = map(cplx(1.0));
  const cplx b = map(cplx(0.0, 1.0));
  const cplx c = map(cplx(-1.0));
  // Circumcenter of a, b, c.
  const cplx ba = b - a;
  const cplx ca = c - a;
  const double den = 2.0 * (ba.real() * ca.imag() - ba.imag() * ca.real());
  require(den != 0.0, ErrorKind::NumericFailure, "degenerate circle image");
  const double bn = std::norm(ba);
  const double cn = std::norm(ca);
  const cplx center = a + cplx((ca.imag() * bn - ba.imag() * cn) / den, (ba.real() * cn - ca.real() * bn) / den);
  const double radius = std::abs(a - center);
  if (c0.is_infinite() || (map.has_finite_pole() && std::abs(map.pole()) < 1.0)) {
    return CanonicalDomain::exterior_disk(center, radius);
  }
  return CanonicalDomain::disk(center, radius);
}

Derivatives numeric_derivatives(const AnalyticFunction& f, cplx z0, double h) {
  require(h > 0.0 && std::isfinite(h), ErrorKind::InvalidInput, "finite-difference step must be positive");
  const auto& s = stencils();
  std::array<cplx, 3> out{};
  for (int k = 0; k < 3; ++k) {
    const cplx lo = richardson(s[static_cast<size_t>(2 * k)], f, z0, h);
    const cplx hi = richardson(s[static_cast<size_t>(2 * k + 1)], f, z0, h);
    if (!std::isfinite(std::abs(lo)) || !std::isfinite(std::abs(hi)) ||
        std::abs(hi - lo) > 1e-6 * std::max(1.0, std::abs(hi))) {
      std::ostringstream os;
      os << "unstable derivative of order " << k + 1 << " at " << fmt(z0) << ": order-4 " << fmt(lo) << " vs order-6 "
         << fmt(hi) << " (h = " << h << ")";
      fail(ErrorKind::NumericFailure, os.str());
    }
    out[static_cast<size_t>(k)] = hi;
  }
  return {out[0], out[1], out[2], h};
}

cplx schwarzian_from_jet(const Jet3& jet) {
  require(jet.f1 != cplx(0.0), ErrorKind::InvalidInput, "Schwarzian needs f'(z0) != 0");
  const cplx r = jet.f2 / jet.f1;
  return jet.f3 / jet.f1 - 1.5 * r * r;
}

cplx schwarzian(const AnalyticFunction& f, cplx z0, double h) {
  const Derivatives d = numeric_derivatives(f, z0, h);
  return schwarzian_from_jet({f(z0), d.f1, d.f2, d.f3});
}

}  // namespace condenser::analytic
