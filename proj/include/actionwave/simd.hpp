#pragma once

// Runtime selection of the recurrence kernel used by bessel_rows.

#include <span>
#include <string_view>
#include <vector>

namespace actionwave::simd {

enum class Kernel { kScalar, kAvx2, kNeon };

std::string_view name(Kernel kernel);

/// Kernels compiled in and supported by the running CPU, scalar first.
std::vector<Kernel> available_kernels();

/// Widest available kernel.
Kernel best_kernel();

/// Runs the selected recurrence kernel. See detail/miller_kernel.hpp for the
/// layout of `out`. Throws std::invalid_argument for an unavailable kernel.
void miller_rows(Kernel kernel, std::span<const double> ws, int n_max,
                 std::span<double> out);

}  // namespace actionwave::simd
