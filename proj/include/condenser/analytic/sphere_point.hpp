#pragma once

#include <complex>
#include <numbers>
#include <string>

#include "condenser/error.hpp"

namespace condenser {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

}  // namespace condenser

namespace condenser::analytic {

// A point of the extended complex plane: a finite value or infinity.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  SpherePoint(double x) : z_(x, 0.0) {}  // NOLINT(google-explicit-constructor)

  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  cplx value() const {
    require(!infinite_, ErrorKind::InvalidInput, "finite value requested for the point at infinity");
    return z_;
  }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

  std::string to_string() const;

 private:
  cplx z_{0.0, 0.0};
  bool infinite_ = false;
};

}  // namespace condenser::analytic
