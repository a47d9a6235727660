#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condenser/analytic/domain.hpp"
#include "condenser/fem/geometry.hpp"

namespace condenser::core {

using analytic::CanonicalDomain;
using analytic::SpherePoint;

// psi(r) = mu r^exponent
struct PlateLaw {
  double mu = 1.0;
  double exponent = 1.0;

  double operator()(double r) const;
  void validate() const;
};

struct PlateSpec {
  SpherePoint center;
  double delta = 1.0;
  PlateLaw law;
};

// Field set B (canonical components or one numeric domain), plates, and the
// component index of each plate.
struct CondenserSpec {
  std::vector<CanonicalDomain> components;
  std::optional<fem::NumericDomain> numeric_field;
  std::vector<PlateSpec> plates;
  std::vector<std::size_t> component_of;

  // Every plate in component 0.
  static CondenserSpec single(const CanonicalDomain& field, std::vector<PlateSpec> plates);
  static CondenserSpec numeric(const fem::NumericDomain& field, std::vector<PlateSpec> plates);

  std::vector<double> deltas() const;
  std::vector<PlateLaw> laws() const;
  CondenserSpec scaled_potentials(double c) const;

  // Throws InvalidInput on a malformed spec.
  void validate() const;
};

// True when the complement of the domain contains a disk.
bool complement_has_interior(const CanonicalDomain& domain);

double nu_total(std::span<const double> deltas, std::span<const PlateLaw> laws);

struct CrossTerm {
  std::size_t l, j;
  double value;  // delta_l delta_j / (nu_l nu_j) g_{B_l}(z_j, z_l)
};

struct ReducedModuleResult {
  double nu = 0.0;
  double value = 0.0;
  std::vector<double> diagonal_terms;  // delta_l^2 / nu_l^2 log(r(B_l, z_l) / mu_l)
  std::vector<CrossTerm> cross_terms;  // ordered pairs l != j

  double term_sum() const;
};

ReducedModuleResult reduced_module(const CondenserSpec& spec);

// Closed form for Disk(0, rho), Z = {0, z_1..z_n}, Delta = {-n, 1..1}.
double reduced_module_disk_closed_form(double rho, std::span<const cplx> points);

double conformal_shift(double m_in, std::span<const double> deltas, std::span<const PlateLaw> laws,
                       std::span<const double> derivative_moduli);

struct MonotonicityReport {
  double small_value = 0.0;
  double large_value = 0.0;
  double margin = 0.0;  // large - small
  bool holds = false;
};

MonotonicityReport monotonicity_assert(const CondenserSpec& small, const CondenserSpec& large);

}  // namespace condenser::core
