#pragma once

#include "condenser/analytic/sphere_point.hpp"

namespace condenser::analytic {

// z -> (a z + b) / (c z + d), ad - bc != 0.
class MobiusMap {
 public:
  MobiusMap(cplx a, cplx b, cplx c, cplx d);

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MobiusMap scaling(cplx k) { return {k, 0.0, 0.0, 1.0}; }
  static MobiusMap translation(cplx t) { return {1.0, t, 0.0, 1.0}; }
  // Disk automorphism z -> (z - a) / (1 - conj(a) z), |a| < 1.
  static MobiusMap disk_automorphism(cplx a);

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  cplx c() const noexcept { return c_; }
  cplx d() const noexcept { return d_; }
  cplx determinant() const noexcept { return a_ * d_ - b_ * c_; }
  bool is_affine() const noexcept { return c_ == cplx(0.0); }

  SpherePoint operator()(const SpherePoint& z) const;
  cplx operator()(cplx z) const;  // throws at the pole

  // Finite point mapped to infinity, if any.
  bool has_finite_pole() const noexcept { return !is_affine(); }
  cplx pole() const;

  // f'(z) for finite non-pole z.
  cplx derivative(cplx z) const;
  cplx second_derivative(cplx z) const;
  cplx third_derivative(cplx z) const;

  MobiusMap inverse() const;
  // (*this) o g
  MobiusMap compose(const MobiusMap& g) const;

 private:
  cplx a_, b_, c_, d_;
};

}  // namespace condenser::analytic
