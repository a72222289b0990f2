#include "actionwave/duality.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace actionwave {

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Knuth's branch-free two-sum: a + b == hi + lo exactly. The result does not
// depend on the order of the operands.
void two_sum(double a, double b, double& hi, double& lo) {
  hi = a + b;
  const double bb = hi - a;
  lo = (a - (hi - bb)) + (b - bb);
}

}  // namespace

const char* to_string(Chart chart) {
  return chart == Chart::kZ ? "Z" : "ZTILDE";
}

const char* to_string(Regime regime) {
  return regime == Regime::kSemiclassical ? "SEMICLASSICAL" : "STRONG_QUANTUM";
}

Chart other(Chart chart) {
  return chart == Chart::kZ ? Chart::kZTilde : Chart::kZ;
}

Chart chart_of(Regime regime) {
  return regime == Regime::kSemiclassical ? Chart::kZ : Chart::kZTilde;
}

Regime regime_of(Chart chart) {
  return chart == Chart::kZ ? Regime::kSemiclassical : Regime::kStrongQuantum;
}

double normalize_angle(double phi) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(phi, 2.0 * pi);  // [-pi, pi]
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

SpherePoint SpherePoint::from_polar(Chart chart, double rho, double phi) {
  if (!std::isfinite(rho) || rho < 0.0) {
    throw DomainError("rho", "rho must be finite and nonnegative, got " +
                                 format_value(rho));
  }
  if (!std::isfinite(phi)) {
    throw DomainError("phi", "phi must be finite, got " + format_value(phi));
  }
  const double a = normalize_angle(phi);
  return {chart, std::polar(rho, a), rho, a};
}

SpherePoint SpherePoint::from_coord(Chart chart, Complex coord) {
  if (!std::isfinite(coord.real()) || !std::isfinite(coord.imag())) {
    throw DomainError("coord", "coordinate must be finite");
  }
  const double rho = std::abs(coord);
  const double phi = rho == 0.0 ? 0.0 : normalize_angle(std::arg(coord));
  return {chart, coord, rho, phi};
}

SpherePoint chart_invert(const SpherePoint& p) {
  const double phi = normalize_angle(-(p.phi_ + std::numbers::pi));
  if (p.is_origin()) return {other(p.chart_), Complex(0.0, 0.0), 0.0, phi};
  return {other(p.chart_), -1.0 / p.coord_, 1.0 / p.rho_, phi};
}

SpherePoint chart_point(const ActionState& state, Regime regime, double phi) {
  return SpherePoint::from_polar(chart_of(regime),
                                 quantum_ratio(state, regime), phi);
}

BesselArgument quantum_ratio(const ActionState& state, Regime regime) {
  return regime == Regime::kSemiclassical ? state.classical_ratio()
                                          : state.quantum_ratio();
}

ExpansionReport dual_reconstruct(const ActionState& state, int n_max) {
  return reconstruct(quantum_ratio(state, Regime::kStrongQuantum), n_max);
}

Complex selfdual_phase(const ActionState& state) {
  state.validate();
  const double a = state.S / state.hbar;
  const double b = state.hbar / state.S;
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("S/hbar", "S/hbar and hbar/S must both be finite");
  }
  double hi = 0.0;
  double lo = 0.0;
  two_sum(a, b, hi, lo);
  const double ch = std::cos(hi);
  const double sh = std::sin(hi);
  const double cl = std::cos(lo);
  const double sl = std::sin(lo);
  return {ch * cl - sh * sl, sh * cl + ch * sl};
}

Regime classify_regime(const ActionState& state, double threshold) {
  state.validate();
  if (!std::isfinite(threshold) || !(threshold > 0.0)) {
    throw DomainError("threshold", "threshold must be finite and positive, got " +
                                       format_value(threshold));
  }
  return state.S / state.hbar >= threshold ? Regime::kSemiclassical
                                           : Regime::kStrongQuantum;
}

}  // namespace actionwave
