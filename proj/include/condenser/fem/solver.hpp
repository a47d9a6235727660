#pragma once

#include <memory>
#include <vector>

#include "condenser/core/condenser.hpp"
#include "condenser/fem/cg.hpp"
#include "condenser/fem/field.hpp"
#include "condenser/fem/geometry.hpp"
#include "condenser/fem/mesh.hpp"

namespace condenser::fem {

struct HarmonicSolution {
  std::vector<double> values;
  CgResult cg;
  double energy = 0.0;  // integral of |grad u|^2
};

// P1 solve of Laplace's equation with u fixed to `data` at Dirichlet nodes.
HarmonicSolution solve_harmonic(const Mesh& mesh, const std::vector<double>& data, double tolerance, int max_iterations);

double dirichlet_energy(const Mesh& mesh, const std::vector<double>& values);

// Fitted-order Richardson extrapolation over the three finest entries.
struct LevelFit {
  double finest = 0.0;
  double extrapolated = 0.0;
  double error = 0.0;
  double order = 0.0;  // 0 when the sequence is not monotonically converging
};
LevelFit fit_levels(const std::vector<double>& values);

// Module of the condenser with plates E(z_l, psi_l(r)) (or the given shapes).
ModuleEstimate condenser_module_numeric(const core::CondenserSpec& spec, double r, const SolveOptions& opts,
                                        const std::vector<PlateShape>& shapes = {});

// Green function with pole zeta on the finest level, g = -log|z - zeta| + H.
class GreenField {
 public:
  GreenField(std::shared_ptr<const P1Field> harmonic, cplx center, double scale, cplx pole_normalized,
             double error_estimate, const NumericDomain& domain);

  double operator()(cplx z) const;
  // H at the pole, in original coordinates: log of the inner radius.
  double log_inner_radius() const;
  double error_estimate() const noexcept { return error_; }
  const P1Field& harmonic_part() const noexcept { return *h_; }

 private:
  cplx to_unit(cplx z) const { return (z - center_) / scale_; }

  std::shared_ptr<const P1Field> h_;
  cplx center_;
  double scale_;
  cplx pole_;
  double error_;
  NumericDomain domain_;
};

GreenField numeric_green(const NumericDomain& domain, cplx zeta, const SolveOptions& opts);

struct InnerRadiusEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  std::vector<double> history;  // per level
};

InnerRadiusEstimate numeric_inner_radius(const NumericDomain& domain, cplx z0, const SolveOptions& opts);

struct CircleIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
  double cross_check = 0.0;  // single integral recovered from the double-integral solve
  std::vector<double> history;
  bool low_accuracy = false;
};

// int_0^{2 pi} g(z0, z0 + r e^{i t}) dt
CircleIntegral circle_green_integral(const NumericDomain& domain, double r, const SolveOptions& opts, cplx z0 = 0.0);
// int int g(r e^{i s}, r e^{i t}) ds dt
CircleIntegral double_circle_green_integral(const NumericDomain& domain, double r, const SolveOptions& opts);

// Mesh used on a given level, for inspection and export.
Mesh condenser_mesh(const core::CondenserSpec& spec, double r, const SolveOptions& opts, int level,
                    const std::vector<PlateShape>& shapes = {});

}  // namespace condenser::fem
