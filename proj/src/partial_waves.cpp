#include "actionwave/partial_waves.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace actionwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(name, std::string(name) +
                                " must be finite and positive, got " +
                                format_value(v));
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(name, std::string(name) + " must be finite, got " +
                                format_value(v));
  }
}

void require_angular_scale(double C) {
  if (!std::isfinite(C)) {
    throw DomainError("C", "angular scale C must be finite, got " +
                               format_value(C));
  }
}

// Per-order exponent growth C |sin(Et/hbar)| of the angular factor.
double angular_growth(const ActionState& state, double C) {
  return std::fabs(C * std::sin(state.phase_angle()));
}

}  // namespace

void ActionState::validate() const {
  require_positive(S, "S");
  require_positive(hbar, "hbar");
  require_finite(E, "E");
  require_finite(t, "t");
  if (m) require_positive(*m, "m");
}

BesselArgument ActionState::classical_ratio() const {
  validate();
  return BesselArgument(S / hbar, "S/hbar");
}

BesselArgument ActionState::quantum_ratio() const {
  validate();
  return BesselArgument(hbar / S, "hbar/S");
}

bool ExpansionReport::in_bound_regime() const {
  return n_max >= static_cast<int>(std::ceil(w.value()));
}

Complex i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

ExpansionReport reconstruct(double w, int n_max) {
  const BesselRow row = bessel_row(n_max, w);
  ExpansionReport report;
  report.w = row.argument();
  report.n_max = n_max;
  report.partial_sum =
      detail::fold_partial_waves(row, detail::static_pair_factor);
  report.target = Complex(std::cos(w), std::sin(w));
  report.abs_error = std::abs(report.partial_sum - report.target);
  report.bound = tail_bound(w, n_max);
  return report;
}

namespace detail {

double tail_bound_unchecked(double w, int n_max) {
  if (n_max < static_cast<int>(std::ceil(0.5 * w))) return kInf;
  if (w == 0.0) return 0.0;
  const double half = 0.5 * w;
  const double geometric = 1.0 / (1.0 - w / (2.0 * n_max + 4.0));
  // The running product peaks near e^{w/2}; past w = 1000 go through logs.
  if (w <= 1000.0) {
    double p = 1.0;
    for (int j = 1; j <= n_max + 1; ++j) p *= half / j;
    return 2.0 * p * geometric;
  }
  const double log_p =
      (n_max + 1.0) * std::log(half) - std::lgamma(n_max + 2.0);
  return 2.0 * std::exp(log_p) * geometric;
}

}  // namespace detail

double tail_bound(double w, int n_max) {
  const BesselArgument arg(w);
  if (n_max < 0) {
    throw DomainError("n_max", "n_max must be nonnegative, got " +
                                   std::to_string(n_max));
  }
  return detail::tail_bound_unchecked(arg, n_max);
}

int required_order(double w, double tol) {
  const BesselArgument arg(w);
  if (!(tol >= 1.0e-15) || !std::isfinite(tol)) {
    throw DomainError("tol", "tol must be finite and >= 1e-15, got " +
                                 format_value(tol));
  }
  int n = 0;
  while (detail::tail_bound_unchecked(arg, n) > tol) ++n;
  return n;
}

int overflow_safe_order(const ActionState& state, double C) {
  state.validate();
  require_angular_scale(C);
  const double growth = angular_growth(state, C);
  if (growth == 0.0) return kMaxOrder;
  const double limit = std::floor(kMaxExponent / growth);
  return limit >= kMaxOrder ? kMaxOrder : static_cast<int>(limit);
}

int time_required_order(const ActionState& state, double tol, double C) {
  state.validate();
  require_angular_scale(C);
  if (!(tol >= 1.0e-15) || !std::isfinite(tol)) {
    throw DomainError("tol", "tol must be finite and >= 1e-15, got " +
                                 format_value(tol));
  }
  const double effective =
      state.classical_ratio() * std::exp(angular_growth(state, C));
  int n = 0;
  while (detail::tail_bound_unchecked(effective, n) > tol) ++n;
  return n;
}

Complex angular_factor(int n, const ActionState& state, double C) {
  state.validate();
  require_angular_scale(C);
  const double theta = state.phase_angle();
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double growth = std::fabs(C * s);
  if (std::fabs(static_cast<double>(n)) * growth > kMaxExponent) {
    const int limit = overflow_safe_order(state, C);
    throw OverflowError(n, limit,
                        "angular factor overflows at order " +
                            std::to_string(n) + "; largest safe order is " +
                            std::to_string(limit));
  }
  // t = 0 with C a multiple of 2 pi: every factor is exactly one.
  const double turns = C * c / kTwoPi;
  if (s == 0.0 && turns == std::floor(turns)) return {1.0, 0.0};
  // exp(i C n (cos - i sin)) = exp(C n sin) * exp(i C n cos)
  const double x = C * n;
  return std::exp(x * s) * Complex(std::cos(x * c), std::sin(x * c));
}

WaveTerm time_term(int n, const ActionState& state, double C) {
  const BesselArgument w = state.classical_ratio();
  WaveTerm term;
  term.n = n;
  term.angular = angular_factor(n, state, C);
  term.radial = bessel_j(n, w);
  term.coefficient = i_pow(n) * term.radial;
  return term;
}

Complex time_sum(const ActionState& state, int n_max, double C) {
  const BesselArgument w = state.classical_ratio();
  require_angular_scale(C);
  if (n_max < 0 || n_max > kMaxOrder) {
    throw DomainError("n_max", "n_max must be in [0, " +
                                   std::to_string(kMaxOrder) + "], got " +
                                   std::to_string(n_max));
  }
  angular_factor(n_max, state, C);  // overflow check at the widest order
  const BesselRow row = bessel_row(n_max, w);
  return detail::fold_partial_waves(row, [&](int n) {
    if (n == 0) return angular_factor(0, state, C);
    return angular_factor(n, state, C) + angular_factor(-n, state, C);
  });
}

Complex time_closed_form(const ActionState& state, double C) {
  const double w = state.classical_ratio();
  require_angular_scale(C);
  const double theta = state.phase_angle();
  const Complex phi = C * Complex(std::cos(theta), -std::sin(theta));
  return std::exp(Complex(0.0, w) * std::cos(phi));
}

Complex time_phase(const ActionState& state) {
  state.validate();
  const double x = (state.S - state.E * state.t) / state.hbar;
  return {std::cos(x), std::sin(x)};
}

double radial_coordinate(double r, const ActionState& state) {
  state.validate();
  if (!std::isfinite(r) || r < 0.0) {
    throw DomainError("r", "r must be finite and nonnegative, got " +
                               format_value(r));
  }
  if (!state.m) throw DomainError("m", "radial coordinate needs a mass m");
  require_positive(*state.m, "m");
  require_positive(state.E, "E");
  const double alpha = std::sqrt(2.0 * *state.m * state.E) / state.hbar;
  return alpha * r;
}

Complex angular_eigenfunction(int l, double phi) {
  const double x = static_cast<double>(l) * phi;
  return {std::cos(x), std::sin(x)};
}

}  // namespace actionwave
