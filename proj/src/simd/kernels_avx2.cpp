// Compiled with -mavx2 -mfma; only reached when CPUID reports both.
#include "condenser/simd/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace condenser::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  const double* py = y.data();
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  __m256d s3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i + 4), _mm256_loadu_pd(py + i + 4), s1);
    s2 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i + 8), _mm256_loadu_pd(py + i + 8), s2);
    s3 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i + 12), _mm256_loadu_pd(py + i + 12), s3);
  }
  for (; i + 4 <= n; i += 4) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), s0);
  }
  double s = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
  for (; i < n; ++i) s += px[i] * py[i];
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y.data() + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x.data() + i), vy);
    _mm256_storeu_pd(y.data() + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay(std::span<const double> x, double a, std::span<double> y) {
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y.data() + i);
    vy = _mm256_fmadd_pd(va, vy, _mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(y.data() + i, vy);
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void hadamard(std::span<const double> d, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y.data() + i,
                     _mm256_mul_pd(_mm256_loadu_pd(d.data() + i), _mm256_loadu_pd(x.data() + i)));
  }
  for (; i < n; ++i) y[i] = d[i] * x[i];
}

void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  const std::size_t rows = a.rows();
  const double* xv = x.data();
  for (std::size_t r = 0; r < rows; ++r) {
    std::int32_t k = a.row_ptr[r];
    const std::int32_t end = a.row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a.col.data() + k));
      const __m256d xs = _mm256_i32gather_pd(xv, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.val.data() + k), xs, acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += a.val[k] * xv[a.col[k]];
    y[r] = s;
  }
}

}  // namespace condenser::simd::avx2
