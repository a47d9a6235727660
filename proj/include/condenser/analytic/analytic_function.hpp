#pragma once

#include <functional>
#include <optional>
#include <string>

#include "condenser/analytic/domain.hpp"

namespace condenser::analytic {

struct Jet3 {
  cplx f, f1, f2, f3;
};

// A holomorphic function of one complex variable. Structured kinds carry an
// exact 3-jet and a description of the image of the unit disk; black boxes
// only support evaluation.
class AnalyticFunction {
 public:
  using Callable = std::function<cplx(cplx)>;

  static AnalyticFunction identity();
  static AnalyticFunction mobius(const MobiusMap& map);
  // coefficient * T(z)^exponent, principal branch of the power.
  static AnalyticFunction power_of_mobius(const MobiusMap& map, double exponent, cplx coefficient = 1.0);
  static AnalyticFunction black_box(Callable f, std::string name);

  cplx operator()(cplx z) const;
  std::optional<Jet3> exact_jet(cplx z) const;
  // f({|z| < 1}) as a canonical domain, when f is structured and univalent there.
  std::optional<CanonicalDomain> image_of_unit_disk() const;
  // f(s z) for 0 < s; f o g for a Mobius map g.
  AnalyticFunction precompose(const MobiusMap& g) const;

  const std::string& name() const noexcept { return name_; }

 private:
  enum class Kind { Mobius, PowerOfMobius, BlackBox };

  AnalyticFunction(Kind kind, MobiusMap map, double exponent, cplx coefficient, Callable f, std::string name);

  Kind kind_;
  MobiusMap map_;
  double exponent_ = 1.0;
  cplx coefficient_ = 1.0;
  Callable f_;
  std::string name_;
};

// Image of the unit disk under a Mobius map: a Disk, ExteriorDisk or HalfPlane.
CanonicalDomain unit_disk_image(const MobiusMap& map);

struct Derivatives {
  cplx f1, f2, f3;
  double step;
};

// f', f'', f''' at z0 by central differences of orders 4 and 6 along the real
// direction, Richardson-extrapolated over h, h/2, h/4. Throws NumericFailure
// when the two orders disagree beyond 1e-6 relative.
Derivatives numeric_derivatives(const AnalyticFunction& f, cplx z0, double h = 0.05);

cplx schwarzian(const AnalyticFunction& f, cplx z0, double h = 0.05);
cplx schwarzian_from_jet(const Jet3& jet);

}  // namespace condenser::analytic
