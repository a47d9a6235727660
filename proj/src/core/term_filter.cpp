#include "condenser/core/term_filter.hpp"

#include <cmath>

namespace condenser::core {

bool kept_summand(double v) noexcept { return std::isfinite(v); }

bool kept_factor(double v) noexcept { return std::isfinite(v) && v != 0.0; }

double filtered_sum(std::span<const double> terms) noexcept {
  double s = 0.0;
  for (double t : terms)
    if (kept_summand(t)) s += t;
  return s;
}

void FilteredProduct::multiply(double factor) noexcept {
  if (!kept_factor(factor)) {
    ++dropped_;
    return;
  }
  ++kept_;
  if (factor < 0.0) sign_ = -sign_;
  log_abs_ += std::log(std::fabs(factor));
}

void FilteredProduct::multiply_pow(double base, double exponent) noexcept {
  if (!kept_factor(base) || !std::isfinite(exponent)) {
    ++dropped_;
    return;
  }
  const double term = exponent * std::log(std::fabs(base));
  if (!std::isfinite(term)) {
    ++dropped_;
    return;
  }
  ++kept_;
  if (base < 0.0 && std::fmod(std::fabs(exponent), 2.0) == 1.0) sign_ = -sign_;
  log_abs_ += term;
}

double FilteredProduct::value() const noexcept { return sign_ * std::exp(log_abs_); }

double filtered_product(std::span<const double> factors) noexcept {
  FilteredProduct p;
  for (double f : factors) p.multiply(f);
  return p.value();
}

}  // namespace condenser::core
