#pragma once

#include <span>

#include "condenser/fem/sparse.hpp"

namespace condenser::fem {

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Jacobi-preconditioned conjugate gradients for SPD A, started from x = 0.
// Stops when ||b - A x|| <= tol ||b||.
CgResult pcg(const CsrMatrix& a, std::span<const double> b, std::span<double> x, double tol, int max_iterations);

}  // namespace condenser::fem
