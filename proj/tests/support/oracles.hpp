#pragma once

// Test-only reference values for J_n(w), computed without the recurrence.

#include <cmath>
#include <complex>
#include <numbers>

namespace actionwave::testing {

/// J_n(w) = (1/2pi) int_0^{2pi} cos(n t - w sin t) dt by the trapezoid rule.
/// The integrand is periodic and entire, so the rule converges geometrically
/// once the point count clears n + w.
inline double trapezoid_bessel(int n, double w) {
  const int points = 2 * (std::abs(n) + static_cast<int>(std::ceil(w))) + 64;
  const double step = 2.0 * std::numbers::pi / points;
  double sum = 0.0;
  for (int k = 0; k < points; ++k) {
    const double t = k * step;
    sum += std::cos(n * t - w * std::sin(t));
  }
  return sum / points;
}

/// exp(i w cos(phi)) for complex phi = a - ib, written out with real
/// functions: cos(a - ib) = cos a cosh b + i sin a sinh b.
inline std::complex<double> exp_i_w_cos(double w, double a, double b) {
  const double re = std::cos(a) * std::cosh(b);
  const double im = std::sin(a) * std::sinh(b);
  // exp(i w (re + i im)) = exp(-w im) (cos(w re) + i sin(w re))
  const double scale = std::exp(-w * im);
  return {scale * std::cos(w * re), scale * std::sin(w * re)};
}

struct ReferenceValue {
  int n;
  double w;
  double value;
};

// mpmath.besselj at 40 significant digits, rounded to 22.
inline constexpr ReferenceValue kReferenceValues[] = {
    {0, 0.25, 0.9844359292958527049237},
    {3, 0.3, 0.0005593430477488460586679},
    {0, 0.75, 0.8642422751666486235557},
    {1, 2.0, 0.5767248077568733872024},
    {7, 3.5, 0.00674300031563839859338},
    {0, 20.0, 0.1670246643405831547273},
    {1, 20.0, 0.06683312417585004557899},
    {13, 17.25, 0.08600649598861331088375},
    {0, 50.0, 0.05581232766925181500475},
    {25, 50.0, -0.09842675129983582766211},
    {50, 50.0, 0.1214090218976150638201},
    {0, 100.0, 0.01998585030422312242423},
    {1, 99.5, -0.07766319824307693543979},
    {10, 100.0, -0.05473217693547201474192},
    {37, 73.0, 0.01254455946569882460944},
    {50, 100.0, -0.03869833972852538346653},
    {49, 42.0, 0.005363716349195701130023},
    {120, 100.0, 0.00001147622179566493605074},
    {0, 1000.0, 0.02478668615242017456133},
    {300, 1000.0, 0.0004678280387912479006053},
    {999, 1000.0, 0.04883022877022178131882},
    {0, 10000.0, -0.007096160353388801477265},
    {7, 10000.0, -0.003630409479651399091489},
    {1000, 10000.0, -0.006125542627867077704988},
    // 9.06e-1047 and 2.16e-3170: below the binary64 range.
    {500, 3.0, 0.0},
    {1000, 0.5, 0.0},
};

}  // namespace actionwave::testing
