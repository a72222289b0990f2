#pragma once

// Integer-order Bessel functions of the first kind on nonnegative real
// arguments.
//
// J_n(w) is the minimal solution of the three-term recurrence, so rows are
// produced by Miller's algorithm: run the recurrence downward from an order
// well above n_max and w, then normalize with J_0 + 2 sum_k J_2k = 1.
// Arguments below 0.5 use the ascending power series directly.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "actionwave/errors.hpp"

namespace actionwave {

inline constexpr double kMaxArgument = 1.0e4;  // W_MAX
inline constexpr int kMaxOrder = 1000;         // N_MAX

/// Validated Bessel argument: finite, 0 <= w <= kMaxArgument.
class BesselArgument {
 public:
  explicit BesselArgument(double w, const char* parameter = "w");

  double value() const noexcept { return w_; }
  operator double() const noexcept { return w_; }

 private:
  double w_;
};

/// J_n(w) for n = -n_max..n_max at one argument. Only the nonnegative half is
/// stored; negative orders are produced by reflection.
class BesselRow {
 public:
  BesselRow(BesselArgument w, std::vector<double> nonnegative);

  BesselArgument argument() const noexcept { return w_; }
  int n_max() const noexcept { return static_cast<int>(values_.size()) - 1; }

  /// J_n(w) for -n_max <= n <= n_max. J_{-n} = (-1)^n J_n.
  double operator[](int n) const noexcept {
    if (n >= 0) return values_[static_cast<std::size_t>(n)];
    const double v = values_[static_cast<std::size_t>(-n)];
    return (n & 1) ? -v : v;
  }

  /// J_0..J_{n_max}.
  std::span<const double> nonnegative() const noexcept { return values_; }

  /// The full row ordered n = -n_max..n_max.
  std::vector<double> full() const;

 private:
  BesselArgument w_;
  std::vector<double> values_;
};

/// J_n(w). Domain: |n| <= kMaxOrder, w a valid BesselArgument.
double bessel_j(int n, double w);

/// Row of J_n(w), n = -n_max..n_max.
BesselRow bessel_row(int n_max, double w);

/// Rows for many arguments at once. The downward recurrence runs on the
/// widest SIMD kernel the CPU supports; results are bitwise identical to the
/// scalar kernel.
std::vector<BesselRow> bessel_rows(int n_max, std::span<const double> ws);

/// Truncated ascending series sum_{k<terms} (-1)^k (w/2)^{n+2k} / (k!(n+k)!).
/// Domain: 0 <= n <= 60, 0 <= w <= 30, terms >= 1.
double bessel_series_oracle(int n, double w, int terms);

/// Bessel-equation residual J'' + J'/w + (1 - n^2/w^2) J with central
/// differences of step h applied to `f`. Requires w - 2h > 0, 0 < h <= 0.1.
double ode_residual(const std::function<double(double)>& f, int n, double w,
                    double h);

/// ode_residual applied to bessel_j(n, .).
double ode_residual(int n, double w, double h);

/// Quadratic Casimir l(l + N - 1) of so(N+1). N = 1 gives l^2, the
/// centrifugal coefficient of the planar radial equation.
long long casimir(int space_dim_minus_one, long long l);

namespace detail {

/// Start order for the downward recurrence: past both n_max and w by a
/// margin that covers the Airy transition region of width ~w^{1/3}.
inline int miller_start(int n_max, double w) {
  const int edge = static_cast<int>(std::ceil(w));
  const int margin = 30 + static_cast<int>(std::ceil(10.0 * std::cbrt(w)));
  return (n_max > edge ? n_max : edge) + margin;
}

}  // namespace detail

}  // namespace actionwave
