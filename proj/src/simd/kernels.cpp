#include "condenser/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "condenser/error.hpp"

namespace condenser::simd {
namespace {

Backend detect() noexcept {
  Backend best = Backend::Scalar;
  if (backend_available(Backend::Avx2)) best = Backend::Avx2;
  if (const char* env = std::getenv("CONDENSER_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
  }
  return best;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect()};
  return slot;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(CONDENSER_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  require(backend_available(backend), ErrorKind::InvalidInput,
          "SIMD backend not available on this CPU/build: " + std::string(to_string(backend)));
  backend_slot().store(backend, std::memory_order_relaxed);
}

#if defined(CONDENSER_HAVE_AVX2)
#define CONDENSER_DISPATCH(call)                                   \
  do {                                                             \
    if (active_backend() == Backend::Avx2) return avx2::call;      \
    return scalar::call;                                           \
  } while (0)
#else
#define CONDENSER_DISPATCH(call) return scalar::call
#endif

double dot(std::span<const double> x, std::span<const double> y) { CONDENSER_DISPATCH(dot(x, y)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  CONDENSER_DISPATCH(axpy(a, x, y));
}

void xpay(std::span<const double> x, double a, std::span<double> y) {
  CONDENSER_DISPATCH(xpay(x, a, y));
}

void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y) {
  CONDENSER_DISPATCH(hadamard(d, x, y));
}

void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  CONDENSER_DISPATCH(spmv(a, x, y));
}

#undef CONDENSER_DISPATCH

}  // namespace condenser::simd
