// AArch64 variant; Advanced SIMD is part of the base ISA there.

#include <arm_neon.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "actionwave/bessel.hpp"
#include "actionwave/detail/miller_kernel.hpp"

namespace actionwave::detail {

namespace {

constexpr std::size_t kLanes = 2;

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

  const float64x2_t w = vld1q_f64(w_in.data());
  const float64x2_t start = vld1q_f64(starts.data());
  const float64x2_t seed = vdupq_n_f64(kMillerSeed);
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t big = vdupq_n_f64(kMillerOverflow);
  const float64x2_t small = vdupq_n_f64(kMillerRescale);

  float64x2_t cur = zero;
  float64x2_t next = zero;
  float64x2_t norm = zero;
  for (int k = top; k >= 0; --k) {
    const float64x2_t ratio = vdivq_f64(vdupq_n_f64(2.0 * (k + 1)), w);
    // vmulq + vsubq, not vfmsq: the scalar reference does not fuse.
    const float64x2_t prev = vsubq_f64(vmulq_f64(ratio, cur), next);
    next = cur;
    cur = prev;

    const uint64x2_t seeded =
        vceqq_f64(vdupq_n_f64(static_cast<double>(k)), start);
    cur = vbslq_f64(seeded, seed, cur);
    next = vbslq_f64(seeded, zero, next);

    if (k <= n_max) {
      vst1q_f64(buf.data() + static_cast<std::size_t>(k) * kLanes, cur);
    }
    if ((k & 1) == 0) {
      norm = vaddq_f64(norm, k == 0 ? cur : vmulq_f64(two, cur));
    }

    const uint64x2_t over = vcgtq_f64(vabsq_f64(cur), big);
    if (vmaxvq_u32(vreinterpretq_u32_u64(over)) != 0) {
      const float64x2_t factor = vbslq_f64(over, small, one);
      cur = vmulq_f64(cur, factor);
      next = vmulq_f64(next, factor);
      norm = vmulq_f64(norm, factor);
      for (int j = std::max(k, 0); j <= n_max; ++j) {
        double* p = buf.data() + static_cast<std::size_t>(j) * kLanes;
        vst1q_f64(p, vmulq_f64(vld1q_f64(p), factor));
      }
    }
  }

  std::array<double, kLanes> norms{};
  vst1q_f64(norms.data(), norm);
  for (std::size_t l = 0; l < kLanes; ++l) {
    if (out[l] == nullptr) continue;
    for (std::size_t k = 0; k < stride; ++k) {
      out[l][k] = buf[k * kLanes + l] / norms[l];
    }
  }
}

}  // namespace

void miller_rows_neon(std::span<const double> ws, int n_max,
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
        w[l] = ws[i];
        dst[l] = nullptr;
      }
    }
    miller_block(w, n_max, dst);
  }
}

}  // namespace actionwave::detail
