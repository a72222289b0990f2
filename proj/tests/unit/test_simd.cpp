#include <doctest.h>

#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "actionwave/bessel.hpp"
#include "actionwave/simd.hpp"

using namespace actionwave;

namespace {

std::vector<double> run_kernel(simd::Kernel kernel,
                               const std::vector<double>& ws, int n_max) {
  std::vector<double> out(ws.size() * (static_cast<std::size_t>(n_max) + 1));
  simd::miller_rows(kernel, ws, n_max, out);
  return out;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernel is always available") {
  const auto kernels = simd::available_kernels();
  REQUIRE(!kernels.empty());
  CHECK(kernels.front() == simd::Kernel::kScalar);
  CHECK(kernels.back() == simd::best_kernel());
  MESSAGE("best kernel: " << simd::name(simd::best_kernel()));
}

TEST_CASE("vector kernels are bitwise identical to the scalar reference") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> small(0.5, 5.0);
  std::uniform_real_distribution<double> large(0.5, 1.0e4);
  for (simd::Kernel kernel : simd::available_kernels()) {
    CAPTURE(simd::name(kernel));
    for (int n_max : {0, 1, 7, 50, 300, 1000}) {
      for (std::size_t count : {1u, 2u, 3u, 4u, 5u, 13u}) {
        std::vector<double> ws;
        for (std::size_t i = 0; i < count; ++i) {
          ws.push_back((i % 2) ? large(rng) : small(rng));
        }
        CAPTURE(n_max);
        CAPTURE(count);
        CHECK(bitwise_equal(run_kernel(kernel, ws, n_max),
                            run_kernel(simd::Kernel::kScalar, ws, n_max)));
      }
    }
  }
}

TEST_CASE("lanes with very different start orders stay independent") {
  // One lane needs ~15000 steps and several rescales, the others a few dozen.
  const std::vector<double> ws = {0.5, 1.0e4, 2.0, 0.75, 9999.5};
  for (simd::Kernel kernel : simd::available_kernels()) {
    CAPTURE(simd::name(kernel));
    CHECK(bitwise_equal(run_kernel(kernel, ws, 1000),
                        run_kernel(simd::Kernel::kScalar, ws, 1000)));
  }
}

TEST_CASE("batched rows equal single rows") {
  const std::vector<double> ws = {0.0, 0.1, 0.49, 0.5, 3.0, 17.5, 0.0, 260.0};
  const auto rows = bessel_rows(40, ws);
  REQUIRE(rows.size() == ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    CAPTURE(ws[i]);
    CHECK(rows[i].full() == bessel_row(40, ws[i]).full());
  }
}

TEST_CASE("empty batch") {
  CHECK(bessel_rows(10, std::vector<double>{}).empty());
}

TEST_CASE("unavailable kernel is rejected") {
  const auto kernels = simd::available_kernels();
  for (simd::Kernel k :
       {simd::Kernel::kScalar, simd::Kernel::kAvx2, simd::Kernel::kNeon}) {
    if (std::find(kernels.begin(), kernels.end(), k) != kernels.end()) continue;
    std::vector<double> out(11);
    CHECK_THROWS_AS(simd::miller_rows(k, std::vector<double>{1.0}, 10, out),
                    std::invalid_argument);
  }
}
