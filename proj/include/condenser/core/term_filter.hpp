#pragma once

#include <cstddef>
#include <span>

namespace condenser::core {

// Sums and products "over all indices, except those where the summand is
// infinite or undefined / the factor is zero or infinite".

bool kept_summand(double v) noexcept;
bool kept_factor(double v) noexcept;

double filtered_sum(std::span<const double> terms) noexcept;

// Running product kept in the log domain so long products of small or large
// factors do not under/overflow.
class FilteredProduct {
 public:
  void multiply(double factor) noexcept;
  // |base|^exponent with the sign of base carried when exponent is an integer.
  void multiply_pow(double base, double exponent) noexcept;

  double value() const noexcept;
  double log_abs() const noexcept { return log_abs_; }
  int sign() const noexcept { return sign_; }
  std::size_t kept() const noexcept { return kept_; }
  std::size_t dropped() const noexcept { return dropped_; }

 private:
  double log_abs_ = 0.0;
  int sign_ = 1;
  std::size_t kept_ = 0;
  std::size_t dropped_ = 0;
};

double filtered_product(std::span<const double> factors) noexcept;

}  // namespace condenser::core
