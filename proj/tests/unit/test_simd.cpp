#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "condenser/fem/cg.hpp"
#include "condenser/fem/sparse.hpp"
#include "condenser/simd/kernels.hpp"

using namespace condenser;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Random sparse matrix with a few entries per row, some rows empty.
fem::CsrMatrix random_csr(std::int32_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 9);
  std::uniform_int_distribution<std::int32_t> col(0, n - 1);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::vector<fem::Triplet> t;
  for (std::int32_t i = 0; i < n; ++i) {
    const int k = (i % 7 == 3) ? 0 : len(rng);
    for (int j = 0; j < k; ++j) t.push_back({i, col(rng), val(rng)});
  }
  return fem::CsrMatrix::from_triplets(n, std::move(t));
}

// 1D Dirichlet Laplacian plus a small shift.
fem::CsrMatrix laplacian_1d(std::int32_t n) {
  std::vector<fem::Triplet> t;
  for (std::int32_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.01});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return fem::CsrMatrix::from_triplets(n, std::move(t));
}

const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 17, 31, 1000, 4099};

struct BackendGuard {
  simd::Backend saved = simd::active_backend();
  ~BackendGuard() { simd::set_backend(saved); }
};

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar backend is always available and selectable") {
  BackendGuard guard;
  CHECK(simd::backend_available(simd::Backend::Scalar));
  simd::set_backend(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  CHECK(simd::to_string(simd::Backend::Scalar) == "scalar");
}

TEST_CASE("dispatch with the scalar backend matches the scalar kernels bit for bit") {
  BackendGuard guard;
  simd::set_backend(simd::Backend::Scalar);
  std::mt19937_64 rng(11);
  const auto x = random_vector(1001, rng);
  const auto y = random_vector(1001, rng);
  CHECK(simd::dot(x, y) == simd::scalar::dot(x, y));
  auto a = y, b = y;
  simd::axpy(0.3, x, a);
  simd::scalar::axpy(0.3, x, b);
  CHECK(a == b);
}

#if defined(CONDENSER_HAVE_AVX2)

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!simd::backend_available(simd::Backend::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; skipped");
    return;
  }
  std::mt19937_64 rng(20240101);
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto x = random_vector(n, rng);
    const auto y = random_vector(n, rng);
    const auto d = random_vector(n, rng);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
    CHECK(std::abs(simd::avx2::dot(x, y) - simd::scalar::dot(x, y)) <= 1e-14 * (scale + 1.0));

    auto ya = y, ys = y;
    simd::avx2::axpy(-0.7, x, ya);
    simd::scalar::axpy(-0.7, x, ys);
    for (std::size_t i = 0; i < n; ++i) CHECK(ya[i] == doctest::Approx(ys[i]).epsilon(1e-15));

    ya = y, ys = y;
    simd::avx2::xpay(x, 1.3, ya);
    simd::scalar::xpay(x, 1.3, ys);
    for (std::size_t i = 0; i < n; ++i) CHECK(ya[i] == doctest::Approx(ys[i]).epsilon(1e-15));

    std::vector<double> ha(n), hs(n);
    simd::avx2::hadamard(d, x, ha);
    simd::scalar::hadamard(d, x, hs);
    CHECK(ha == hs);
  }
}

TEST_CASE("avx2 spmv agrees with the scalar reference") {
  if (!simd::backend_available(simd::Backend::Avx2)) return;
  std::mt19937_64 rng(7);
  for (std::int32_t n : {1, 5, 64, 777}) {
    CAPTURE(n);
    const auto a = random_csr(n, rng);
    const auto x = random_vector(static_cast<std::size_t>(n), rng);
    std::vector<double> ya(n), ys(n);
    simd::avx2::spmv(a.view(), x, ya);
    simd::scalar::spmv(a.view(), x, ys);
    for (std::int32_t i = 0; i < n; ++i) CHECK(ya[i] == doctest::Approx(ys[i]).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("pcg gives the same solution under both backends") {
  if (!simd::backend_available(simd::Backend::Avx2)) return;
  BackendGuard guard;
  const auto a = laplacian_1d(500);
  std::mt19937_64 rng(3);
  const auto b = random_vector(500, rng);
  std::vector<double> xs(500), xa(500);
  simd::set_backend(simd::Backend::Scalar);
  const auto rs = fem::pcg(a, b, xs, 1e-12, 10000);
  simd::set_backend(simd::Backend::Avx2);
  const auto ra = fem::pcg(a, b, xa, 1e-12, 10000);
  REQUIRE(rs.converged);
  REQUIRE(ra.converged);
  for (int i = 0; i < 500; ++i) CHECK(xa[i] == doctest::Approx(xs[i]).epsilon(1e-9).scale(1.0));
}

#endif

TEST_CASE("csr assembly sums duplicates and pcg solves an SPD system") {
  auto a = fem::CsrMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 0, 1.0}, {1, 1, 3.0}, {0, 1, 1.0}, {1, 0, 1.0}});
  CHECK(a.nonzeros() == 4);
  CHECK(a.diagonal() == std::vector<double>{2.0, 3.0});

  const auto l = laplacian_1d(200);
  std::vector<double> truth(200);
  for (int i = 0; i < 200; ++i) truth[i] = std::sin(0.05 * i);
  std::vector<double> b(200);
  simd::scalar::spmv(l.view(), truth, b);
  std::vector<double> x(200);
  const auto r = fem::pcg(l, b, x, 1e-12, 5000);
  CHECK(r.converged);
  CHECK(r.relative_residual <= 1e-12);
  for (int i = 0; i < 200; ++i) CHECK(x[i] == doctest::Approx(truth[i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("pcg reports non-convergence when the iteration cap is hit") {
  const auto l = laplacian_1d(300);
  std::vector<double> b(300, 1.0), x(300);
  const auto r = fem::pcg(l, b, x, 1e-12, 1);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
}

}  // TEST_SUITE
