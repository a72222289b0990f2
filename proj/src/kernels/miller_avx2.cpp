// Built with -mavx2 (and without -mfma); only reached after a runtime CPU
// check.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "actionwave/bessel.hpp"
#include "actionwave/detail/miller_kernel.hpp"

namespace actionwave::detail {

namespace {

constexpr std::size_t kLanes = 4;

// Four arguments in lockstep. Lanes whose start order lies below the current
// order hold exact zeros, which the recurrence keeps at zero until the lane
// is seeded.
void miller_block(const std::array<double, kLanes>& w_in, int n_max,
                  std::array<double*, kLanes> out) {
  std::array<double, kLanes> starts{};
  int top = 0;
  for (std::size_t l = 0; l < kLanes; ++l) {
    const int s = miller_start(n_max, w_in[l]);
    starts[l] = static_cast<double>(s);
    top = std::max(top, s);
  }

  const auto stride = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> buf(stride * kLanes);

  const __m256d w = _mm256_loadu_pd(w_in.data());
  const __m256d start = _mm256_loadu_pd(starts.data());
  const __m256d seed = _mm256_set1_pd(kMillerSeed);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d big = _mm256_set1_pd(kMillerOverflow);
  const __m256d small = _mm256_set1_pd(kMillerRescale);
  const __m256d abs_mask = _mm256_castsi256_pd(
      _mm256_set1_epi64x(0x7fffffffffffffffLL));

  __m256d cur = zero;
  __m256d next = zero;
  __m256d norm = zero;
  for (int k = top; k >= 0; --k) {
    const __m256d ratio =
        _mm256_div_pd(_mm256_set1_pd(2.0 * (k + 1)), w);
    const __m256d prev = _mm256_sub_pd(_mm256_mul_pd(ratio, cur), next);
    next = cur;
    cur = prev;

    const __m256d seeded =
        _mm256_cmp_pd(_mm256_set1_pd(static_cast<double>(k)), start,
                      _CMP_EQ_OQ);
    cur = _mm256_blendv_pd(cur, seed, seeded);
    next = _mm256_blendv_pd(next, zero, seeded);

    if (k <= n_max) {
      _mm256_storeu_pd(buf.data() + static_cast<std::size_t>(k) * kLanes,
                       cur);
    }
    if ((k & 1) == 0) {
      norm = _mm256_add_pd(norm, k == 0 ? cur : _mm256_mul_pd(two, cur));
    }

    const __m256d over =
        _mm256_cmp_pd(_mm256_and_pd(cur, abs_mask), big, _CMP_GT_OQ);
    if (_mm256_movemask_pd(over) != 0) {
      const __m256d factor = _mm256_blendv_pd(one, small, over);
      cur = _mm256_mul_pd(cur, factor);
      next = _mm256_mul_pd(next, factor);
      norm = _mm256_mul_pd(norm, factor);
      for (int j = std::max(k, 0); j <= n_max; ++j) {
        double* p = buf.data() + static_cast<std::size_t>(j) * kLanes;
        _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), factor));
      }
    }
  }

  alignas(32) std::array<double, kLanes> norms{};
  _mm256_store_pd(norms.data(), norm);
  for (std::size_t l = 0; l < kLanes; ++l) {
    if (out[l] == nullptr) continue;
    for (std::size_t k = 0; k < stride; ++k) {
      out[l][k] = buf[k * kLanes + l] / norms[l];
    }
  }
}

}  // namespace

void miller_rows_avx2(std::span<const double> ws, int n_max,
                      std::span<double> out) {
  const auto stride = static_cast<std::size_t>(n_max) + 1;
  for (std::size_t i = 0; i < ws.size(); i += kLanes) {
    std::array<double, kLanes> w{};
    std::array<double*, kLanes> dst{};
    for (std::size_t l = 0; l < kLanes; ++l) {
      if (i + l < ws.size()) {
        w[l] = ws[i + l];
        dst[l] = out.data() + (i + l) * stride;
      } else {
        w[l] = ws[i];  // padding lane, result discarded
        dst[l] = nullptr;
      }
    }
    miller_block(w, n_max, dst);
  }
}

}  // namespace actionwave::detail
