#include "actionwave/simd.hpp"

#include <stdexcept>
#include <string>

#include "actionwave/detail/miller_kernel.hpp"

namespace actionwave::simd {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && \
    (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

std::string_view name(Kernel kernel) {
  switch (kernel) {
    case Kernel::kScalar:
      return "scalar";
    case Kernel::kAvx2:
      return "avx2";
    case Kernel::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Kernel> available_kernels() {
  std::vector<Kernel> kernels{Kernel::kScalar};
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) kernels.push_back(Kernel::kAvx2);
#endif
#if defined(__aarch64__)
  kernels.push_back(Kernel::kNeon);
#endif
  return kernels;
}

Kernel best_kernel() {
  static const Kernel best = available_kernels().back();
  return best;
}

void miller_rows(Kernel kernel, std::span<const double> ws, int n_max,
                 std::span<double> out) {
  switch (kernel) {
    case Kernel::kScalar:
      detail::miller_rows_scalar(ws, n_max, out);
      return;
    case Kernel::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (cpu_has_avx2()) {
        detail::miller_rows_avx2(ws, n_max, out);
        return;
      }
#endif
      break;
    case Kernel::kNeon:
#if defined(__aarch64__)
      detail::miller_rows_neon(ws, n_max, out);
      return;
#endif
      break;
  }
  throw std::invalid_argument("kernel not available on this CPU: " +
                              std::string(name(kernel)));
}

}  // namespace actionwave::simd
