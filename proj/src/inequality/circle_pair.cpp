#include <cmath>

#include "condenser/core/term_filter.hpp"
#include "condenser/inequality/checks.hpp"

namespace condenser::inequality {
namespace {

// prod |z_k - zeta_l|^{2 alpha beta} / (prod |z_k - z_l|^{alpha^2} |zeta_k - zeta_l|^{beta^2})
double pair_quotient(const std::vector<cplx>& z, double ratio, double alpha, double beta) {
  core::FilteredProduct p;
  for (cplx a : z)
    for (cplx b : z) {
      p.multiply_pow(std::abs(a - ratio * b), 2.0 * alpha * beta);
      p.multiply_pow(std::abs(a - b), -alpha * alpha);
      p.multiply_pow(ratio * std::abs(a - b), -beta * beta);
    }
  return p.value();
}

double vandermonde(const std::vector<cplx>& z) {
  core::FilteredProduct p;
  for (cplx a : z)
    for (cplx b : z) p.multiply(std::abs(a - b));
  return p.value();
}

}  // namespace

InequalityReport check_circle_pair(const std::vector<cplx>& z, double ratio, double alpha, double beta) {
  require(!z.empty(), ErrorKind::InvalidInput, "circle pair check needs points");
  require(ratio > 0.0 && std::isfinite(ratio), ErrorKind::InvalidInput, "R / r must be positive");
  require(std::isfinite(alpha) && std::isfinite(beta), ErrorKind::InvalidInput, "alpha and beta must be finite");
  const double r = std::abs(z[0]);
  require(r > 0.0, ErrorKind::InvalidInput, "points must lie on a circle of positive radius");
  for (std::size_t k = 0; k < z.size(); ++k) {
    require(std::abs(std::abs(z[k]) - r) <= 1e-12 * r, ErrorKind::InvalidInput, "points must lie on one circle |z| = r");
    for (std::size_t l = 0; l < k; ++l) require(z[k] != z[l], ErrorKind::InvalidInput, "coincident points");
  }
  const int n = static_cast<int>(z.size());
  std::vector<cplx> sym;
  for (int k = 0; k < n; ++k) sym.push_back(std::polar(r, 2.0 * kPi * k / n));
  if (alpha == 1.0 && beta == 0.0) {
    auto rep = make_report("schur", Relation::LessEqual, vandermonde(z), vandermonde(sym), kAnalyticTolerance);
    rep.metadata["form"] = "prod |z_k - z_l| <= prod |z*_k - z*_l|";
    return rep;
  }
  return make_report("circle_pair", Relation::LessEqual, pair_quotient(sym, ratio, alpha, beta),
                     pair_quotient(z, ratio, alpha, beta), kAnalyticTolerance,
                     {{"alpha", alpha, "input"}, {"beta", beta, "input"}, {"ratio", ratio, "input"}});
}

}  // namespace condenser::inequality
