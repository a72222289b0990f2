#include <cmath>
#include <cstddef>

#include "actionwave/bessel.hpp"
#include "actionwave/detail/miller_kernel.hpp"

namespace actionwave::detail {

namespace {

void miller_row(double w, int n_max, double* out) {
  const int start = miller_start(n_max, w);
  double cur = 0.0;   // J_k, unnormalized
  double next = 0.0;  // J_{k+1}
  double norm = 0.0;  // J_0 + 2 sum J_2k over the orders visited so far
  for (int k = start; k >= 0; --k) {
    if (k == start) {
      cur = kMillerSeed;
      next = 0.0;
    } else {
      const double prev = (2.0 * (k + 1)) / w * cur - next;
      next = cur;
      cur = prev;
    }
    if (k <= n_max) out[k] = cur;
    if ((k & 1) == 0) norm += (k == 0) ? cur : 2.0 * cur;
    if (std::fabs(cur) > kMillerOverflow) {
      cur *= kMillerRescale;
      next *= kMillerRescale;
      norm *= kMillerRescale;
      for (int j = k; j <= n_max; ++j) {
        if (j >= 0) out[j] *= kMillerRescale;
      }
    }
  }
  for (int k = 0; k <= n_max; ++k) out[k] = out[k] / norm;
}

}  // namespace

void miller_rows_scalar(std::span<const double> ws, int n_max,
                        std::span<double> out) {
  const auto stride = static_cast<std::size_t>(n_max) + 1;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    miller_row(ws[i], n_max, out.data() + i * stride);
  }
}

}  // namespace actionwave::detail
