#pragma once

// Partial-wave decomposition of the phase e^{iw}:
//
//   e^{iw} = sum_n i^n J_n(w),
//
// which is the Bessel generating function exp(w/2 (v - 1/v)) at the double
// root v = i of v - 1/v = 2i. With the angular factor
// exp(i C n e^{-iEt/hbar}) attached to each order the same sum becomes the
// time-dependent wave; its generating-function closed form is
// exp(i w cos(C e^{-iEt/hbar})).

#include <complex>
#include <numbers>
#include <optional>

#include "actionwave/bessel.hpp"

namespace actionwave {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// |exponent| above which exp() leaves the binary64 range.
inline constexpr double kMaxExponent = 700.0;

/// Physical inputs. S and hbar must be positive; E and t only enter the
/// time-dependent factor, m only the radial coordinate.
struct ActionState {
  double S = 1.0;
  double hbar = 1.0;
  double E = 0.0;
  double t = 0.0;
  std::optional<double> m;

  /// Throws DomainError naming the first offending field.
  void validate() const;

  /// S/hbar as a Bessel argument (throws if above kMaxArgument).
  BesselArgument classical_ratio() const;
  /// hbar/S as a Bessel argument.
  BesselArgument quantum_ratio() const;
  /// E t / hbar.
  double phase_angle() const { return E * t / hbar; }
};

/// One partial wave i^n J_n(w) times its angular factor.
struct WaveTerm {
  int n = 0;
  double radial = 0.0;            // J_n(w)
  Complex coefficient{0.0, 0.0};  // i^n J_n(w)
  Complex angular{1.0, 0.0};      // exp(i C n e^{-iEt/hbar})

  Complex value() const { return coefficient * angular; }
};

struct ExpansionReport {
  BesselArgument w{0.0};
  int n_max = 0;
  Complex partial_sum{0.0, 0.0};
  Complex target{1.0, 0.0};  // e^{iw}
  double abs_error = 0.0;
  double bound = 0.0;  // tail_bound(w, n_max); may be +inf

  /// n_max >= ceil(w): the region where abs_error <= bound is guaranteed.
  bool in_bound_regime() const;
};

/// i^n as an exact complex unit.
Complex i_pow(int n);

/// Folded partial sum J_0 + 2 sum_{n=1}^{n_max} i^n J_n(w) compared with
/// e^{iw}.
ExpansionReport reconstruct(double w, int n_max);

/// 2 (w/2)^{n+1} / (n+1)! / (1 - w/(2n+4)), a bound on sum_{|k|>n} |J_k(w)|.
/// Returns +inf when n_max < ceil(w/2).
double tail_bound(double w, int n_max);

/// Smallest n_max with tail_bound(w, n_max) <= tol. Requires tol >= 1e-15.
int required_order(double w, double tol);

/// Largest |n| for which the angular factor stays within kMaxExponent.
int overflow_safe_order(const ActionState& state, double C = kTwoPi);

/// Order at which the time-dependent tail, dominated by
/// (w e^{C |sin(Et/hbar)|} / 2)^n / n!, falls below tol. May exceed
/// overflow_safe_order when the series converges too slowly.
int time_required_order(const ActionState& state, double tol,
                        double C = kTwoPi);

/// Angular factor exp(i C n e^{-iEt/hbar}). Exactly 1 when t = 0 and C is an
/// integer multiple of 2 pi. Throws OverflowError past overflow_safe_order.
Complex angular_factor(int n, const ActionState& state, double C = kTwoPi);

WaveTerm time_term(int n, const ActionState& state, double C = kTwoPi);

/// sum_{n=-n_max}^{n_max} time_term(n).value(), folded in +/-n pairs. At
/// t = 0 this runs the exact arithmetic of reconstruct(S/hbar, n_max).
Complex time_sum(const ActionState& state, int n_max, double C = kTwoPi);

/// Closed form exp(i w cos(C e^{-iEt/hbar})) of the infinite time sum.
Complex time_closed_form(const ActionState& state, double C = kTwoPi);

/// e^{i(S - Et)/hbar}, the phase the time sum is meant to represent. Only
/// reported alongside, since it does not equal the closed form for t != 0.
Complex time_phase(const ActionState& state);

/// rho = alpha r with alpha = sqrt(2 m E) / hbar.
double radial_coordinate(double r, const ActionState& state);

/// Y_l(phi) = e^{i l phi}.
Complex angular_eigenfunction(int l, double phi);

namespace detail {

/// c_0 A_0 + sum_{n=1}^{N} c_n A_n with c_n = i^n J_n and A_n the sum of the
/// angular factors of +n and -n. Shared by the static and time-dependent
/// sums. `on_step(n, partial)` sees every running partial sum.
template <typename PairFactor, typename OnStep>
Complex fold_partial_waves(const BesselRow& row, PairFactor&& pair_factor,
                           OnStep&& on_step) {
  double re = 0.0;
  double im = 0.0;
  for (int n = 0; n <= row.n_max(); ++n) {
    const Complex c = i_pow(n) * row[n];
    const Complex a = pair_factor(n);
    re += c.real() * a.real() - c.imag() * a.imag();
    im += c.real() * a.imag() + c.imag() * a.real();
    on_step(n, Complex(re, im));
  }
  return {re, im};
}

template <typename PairFactor>
Complex fold_partial_waves(const BesselRow& row, PairFactor&& pair_factor) {
  return fold_partial_waves(row, pair_factor, [](int, const Complex&) {});
}

/// Pair factor of the static sum: 1 for n = 0, 2 otherwise.
inline Complex static_pair_factor(int n) {
  return {n == 0 ? 1.0 : 2.0, 0.0};
}

/// tail_bound without argument validation; w may exceed kMaxArgument.
double tail_bound_unchecked(double w, int n_max);

}  // namespace detail

}  // namespace actionwave
