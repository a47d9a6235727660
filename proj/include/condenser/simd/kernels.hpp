#pragma once

// Dense/sparse vector kernels used by the iterative solvers.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds
// with compiler support, an AVX2+FMA variant. The active backend is chosen
// once at startup from CPUID and can be overridden with the environment
// variable CONDENSER_SIMD=scalar|avx2 or with set_backend().

#include <cstdint>
#include <span>
#include <string_view>

namespace condenser::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend) noexcept;

bool backend_available(Backend backend) noexcept;
Backend active_backend() noexcept;
// Throws condenser::Error(InvalidInput) if the backend is unavailable.
void set_backend(Backend backend);

struct CsrView {
  std::span<const std::int32_t> row_ptr;  // size rows + 1
  std::span<const std::int32_t> col;
  std::span<const double> val;
  std::size_t rows() const noexcept { return row_ptr.empty() ? 0 : row_ptr.size() - 1; }
};

double dot(std::span<const double> x, std::span<const double> y);
// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
// y = x + a * y
void xpay(std::span<const double> x, double a, std::span<double> y);
// y = d .* x
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y);
// y = A x
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double a, std::span<double> y);
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y);
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(CONDENSER_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double a, std::span<double> y);
void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y);
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace condenser::simd
