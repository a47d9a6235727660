#include "condenser/analytic/mobius.hpp"

#include <cmath>
#include <sstream>

namespace condenser::analytic {

std::string SpherePoint::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << '(' << z_.real() << ',' << z_.imag() << ')';
  return os.str();
}

MobiusMap::MobiusMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {
  const double scale = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
  require(scale > 0.0 && std::abs(determinant()) > 1e-14 * scale, ErrorKind::InvalidInput,
          "degenerate Mobius map: ad - bc = 0");
}

MobiusMap MobiusMap::disk_automorphism(cplx a) {
  require(std::abs(a) < 1.0, ErrorKind::InvalidInput, "disk automorphism needs |a| < 1");
  return {1.0, -a, -std::conj(a), 1.0};
}

SpherePoint MobiusMap::operator()(const SpherePoint& z) const {
  if (z.is_infinite()) {
    if (is_affine()) return SpherePoint::infinity();
    return SpherePoint(a_ / c_);
  }
  const cplx w = z.value();
  const cplx den = c_ * w + d_;
  if (den == cplx(0.0)) return SpherePoint::infinity();
  return SpherePoint((a_ * w + b_) / den);
}

cplx MobiusMap::operator()(cplx z) const {
  const cplx den = c_ * z + d_;
  require(den != cplx(0.0), ErrorKind::InvalidInput, "Mobius map evaluated at its pole");
  return (a_ * z + b_) / den;
}

cplx MobiusMap::pole() const {
  require(!is_affine(), ErrorKind::InvalidInput, "affine map has no finite pole");
  return -d_ / c_;
}

cplx MobiusMap::derivative(cplx z) const {
  const cplx den = c_ * z + d_;
  require(den != cplx(0.0), ErrorKind::InvalidInput, "derivative requested at the pole of a Mobius map");
  return determinant() / (den * den);
}

cplx MobiusMap::second_derivative(cplx z) const {
  const cplx den = c_ * z + d_;
  require(den != cplx(0.0), ErrorKind::InvalidInput, "derivative requested at the pole of a Mobius map");
  return -2.0 * c_ * determinant() / (den * den * den);
}

cplx MobiusMap::third_derivative(cplx z) const {
  const cplx den = c_ * z + d_;
  require(den != cplx(0.0), ErrorKind::InvalidInput, "derivative requested at the pole of a Mobius map");
  const cplx den2 = den * den;
  return 6.0 * c_ * c_ * determinant() / (den2 * den2);
}

MobiusMap MobiusMap::inverse() const { return {d_, -b_, -c_, a_}; }

MobiusMap MobiusMap::compose(const MobiusMap& g) const {
  return {a_ * g.a_ + b_ * g.c_, a_ * g.b_ + b_ * g.d_, c_ * g.a_ + d_ * g.c_, c_ * g.b_ + d_ * g.d_};
}

}  // namespace condenser::analytic
