#pragma once

#include <optional>
#include <vector>

#include "condenser/analytic/analytic_function.hpp"
#include "condenser/core/condenser.hpp"
#include "condenser/fem/geometry.hpp"
#include "condenser/inequality/report.hpp"

namespace condenser::inequality {

using analytic::AnalyticFunction;
using analytic::CanonicalDomain;
using analytic::SpherePoint;

inline constexpr double kAnalyticTolerance = 1e-10;

// --- Nehari / Goluzin -------------------------------------------------------

enum class NehariMode { General, Goluzin };

// General: sum delta_l delta_j h(z_l, z_j) over B <= the same over B', with h the
// regular part in the component of z_l (log r on the diagonal). Both specs must
// share points and potentials; each component of B lies in a component of B'.
// Goluzin: prod r(B_l, z_l)^{delta_l^2} <= prod_{k<l} |z_k - z_l|^{-2 delta_k delta_l}
// for sum delta = 0; `larger` is ignored.
InequalityReport check_nehari(const core::CondenserSpec& smaller, const core::CondenserSpec* larger, NehariMode mode);

// --- points on radial rays --------------------------------------------------

// points[k-1] holds the points on the ray arg z = 2 pi k / n, k = 1..n.
struct RadialConfig {
  int n = 0;
  std::vector<std::vector<cplx>> points;
  std::vector<std::vector<double>> deltas;

  // z_k = moduli[k-1] e^{2 pi i k / n}, delta = 1.
  static RadialConfig one_per_ray(const std::vector<double>& moduli);
  // Two points per ray, delta_{k1} = 1 (inner list), delta_{k2} = -1 (outer list).
  static RadialConfig two_per_ray(const std::vector<double>& first, const std::vector<double>& second);

  double nu() const;
  std::vector<double> nu_k() const;
  // Throws InvalidInput for zero, coincident or misplaced points.
  void validate() const;
};

enum class RadialMode { Thm3, Eq11, TwoPerRay, Strengthened };

InequalityReport check_radial(const RadialConfig& cfg, RadialMode mode);

// --- two concentric circles -------------------------------------------------

// z_k on |z| = r, zeta_k = z_k R / r. Compares the symmetric configuration (lhs)
// with the given one (rhs). alpha = 1, beta = 0 is reported in Schur's form
// prod |z_k - z_l| <= prod |z*_k - z*_l|.
InequalityReport check_circle_pair(const std::vector<cplx>& z, double ratio, double alpha, double beta);

// --- extremal decomposition -------------------------------------------------

struct Thm4Config {
  int n = 0;
  CanonicalDomain d0;                  // contains 0
  std::vector<CanonicalDomain> domains;  // D_1..D_n
  std::vector<cplx> points;             // z_1..z_n, arg z_k = 2 pi k / n

  // The equality configuration {Re z^n < R^n / 2} and its petals.
  static Thm4Config extremal(int n, double radius);
};

// Pairs (z_k, zeta_k) in nonoverlapping domains D_k.
struct PairConfig {
  std::vector<CanonicalDomain> domains;
  std::vector<cplx> z;
  std::vector<cplx> zeta;

  static PairConfig thm5_extremal(int n, double r, double big_r);
  static PairConfig thm6_extremal(int n, double r);
};

InequalityReport check_thm4(const Thm4Config& cfg);
InequalityReport check_thm5(const PairConfig& cfg);
InequalityReport check_thm6(const PairConfig& cfg);

double thm5_bound(int n, double r, double big_r);
double thm6_bound(int n, double r);

struct Lemma2Result {
  double log_product = 0.0;  // log r(D_1, z1) + log r(D_2, z2)
  double product = 0.0;
  // Present when D is a disk: inner radii of {u > 0} and {u < 0} from the solver.
  std::optional<double> numeric_r1, numeric_r2, numeric_error;
};

Lemma2Result lemma2_decompose(const CanonicalDomain& d, cplx z1, cplx z2, const fem::SolveOptions* numeric = nullptr);

// --- univalent functions ----------------------------------------------------

// n^n prod |f'(z_k)| |f(z_k) - w0|^{n-1} <= prod |z_k - z_l| / prod |1 - z_k conj(z_l)|.
InequalityReport check_thm7(const AnalyticFunction& f, const analytic::CompactSet& closure, cplx w0,
                            const std::vector<cplx>& z);

struct KEstimate {
  double value = 0.0;
  double exponent = 0.0;  // fitted power of the bracket in rho
  std::vector<double> rho;
  std::vector<double> bracket;
};

// K(D, w) from the bracket at each rho, extrapolated in rho^2.
KEstimate k_functional(const CanonicalDomain& d, cplx w, const std::vector<double>& rho = {0.04, 0.02, 0.01});

enum class Thm8Mode { Schwarzian, KFunctional };
enum class DerivativeSource { Auto, Exact, Numeric };

// Per-function term |f'(0)|^{-2} - Re(f(0)^2 S_f(0) / f'(0)^2) / 6.
double thm8_term(const AnalyticFunction& f, DerivativeSource source = DerivativeSource::Auto);

// Sum of the terms (or of K(D_k, f_k(0))) against n (n^2 + 2) / 24. When both
// modes can be evaluated the other one is recorded, and a disagreement above
// 1e-3 marks the report as a consistency failure.
InequalityReport check_thm8(const std::vector<AnalyticFunction>& fs, Thm8Mode mode,
                            DerivativeSource source = DerivativeSource::Auto);

// f*_k(z) = e^{2 pi i (k-1)/n} ((1+z)/(1-z))^{2/n}
std::vector<AnalyticFunction> thm8_extremals(int n);

}  // namespace condenser::inequality
