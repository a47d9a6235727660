#include "condenser/fem/cg.hpp"

#include <cmath>
#include <vector>

#include "condenser/error.hpp"

namespace condenser::fem {

CgResult pcg(const CsrMatrix& a, std::span<const double> b, std::span<double> x, double tol, int max_iterations) {
  const std::size_t n = static_cast<std::size_t>(a.rows);
  require(b.size() == n && x.size() == n, ErrorKind::InvalidInput, "pcg: size mismatch");
  std::fill(x.begin(), x.end(), 0.0);
  CgResult res;
  const double bnorm = std::sqrt(simd::dot(b, b));
  if (n == 0 || bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) {
    require(d > 0.0, ErrorKind::NumericFailure, "pcg: nonpositive diagonal entry");
    d = 1.0 / d;
  }
  std::vector<double> r(b.begin(), b.end()), z(n), p(n), q(n);
  simd::hadamard(inv_diag, r, z);
  p = z;
  double rz = simd::dot(r, z);
  const auto view = a.view();
  for (int it = 1; it <= max_iterations; ++it) {
    simd::spmv(view, p, q);
    const double pq = simd::dot(p, q);
    require(pq > 0.0, ErrorKind::NumericFailure, "pcg: matrix is not positive definite");
    const double alpha = rz / pq;
    simd::axpy(alpha, p, x);
    simd::axpy(-alpha, q, r);
    const double rnorm = std::sqrt(simd::dot(r, r));
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (res.relative_residual <= tol) {
      res.converged = true;
      return res;
    }
    simd::hadamard(inv_diag, r, z);
    const double rz_new = simd::dot(r, z);
    simd::xpay(z, rz_new / rz, p);
    rz = rz_new;
  }
  return res;
}

}  // namespace condenser::fem
