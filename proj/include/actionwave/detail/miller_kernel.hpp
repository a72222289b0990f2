#pragma once

// Downward-recurrence kernels. Every kernel takes arguments w >= 0.5 and
// writes J_0..J_{n_max} for argument i at out[i * (n_max + 1) + k].
//
// The kernels perform the same IEEE operations in the same order per lane,
// so the vector variants are bitwise identical to the scalar reference. This
// relies on the translation units being built without FMA contraction.

#include <cstddef>
#include <span>

namespace actionwave::detail {

// The recurrence is seeded with this value at the start order and rescaled by
// kMillerRescale whenever a magnitude exceeds kMillerOverflow.
inline constexpr double kMillerSeed = 1.0;
inline constexpr double kMillerOverflow = 1.0e200;
inline constexpr double kMillerRescale = 1.0e-200;

void miller_rows_scalar(std::span<const double> ws, int n_max,
                        std::span<double> out);

#if defined(__x86_64__) || defined(_M_X64)
void miller_rows_avx2(std::span<const double> ws, int n_max,
                      std::span<double> out);
#endif

#if defined(__aarch64__)
void miller_rows_neon(std::span<const double> ws, int n_max,
                      std::span<double> out);
#endif

}  // namespace actionwave::detail
