#include "actionwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "actionwave/bessel.hpp"
#include "actionwave/duality.hpp"
#include "actionwave/partial_waves.hpp"

namespace actionwave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this level a reconstruction error is binary64 noise: the partial sums
// of an O(1) phase cannot be resolved more finely.
double roundoff_floor(double w) { return 16.0 * kEps * std::max(1.0, w); }

PropertyResult at_most(std::string name, double worst, double limit) {
  return {std::move(name), worst, limit, worst <= limit, false};
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

 private:
  std::mt19937_64 rng_;
};

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double factorial_bound(int n, double w) {
  double b = 1.0;
  for (int j = 1; j <= n; ++j) b *= 0.5 * w / j;
  return b;
}

void bessel_properties(const VerifyOptions& opt, Sampler& rng,
                       std::vector<PropertyResult>& out) {
  double reflection = 0.0;
  double recurrence = 0.0;
  double normalization = 0.0;
  double bounded = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const double w = rng.uniform(0.0, 50.0);
    const int n = rng.integer(1, 40);
    const double jn = bessel_j(n, w);
    const double jm = bessel_j(-n, w);
    reflection = std::max(reflection, std::fabs(jm - ((n & 1) ? -jn : jn)));

    const double wr = rng.uniform(0.5, 50.0);
    const BesselRow row = bessel_row(41, wr);
    const double lhs = row[n - 1] + row[n + 1] - (2.0 * n / wr) * row[n];
    recurrence = std::max(recurrence,
                          std::fabs(lhs) / std::max(1.0, std::fabs(row[n])));

    const int K = static_cast<int>(std::ceil(w)) + 20;
    const BesselRow even = bessel_row(2 * K, w);
    double sum = even[0];
    for (int k = 1; k <= K; ++k) sum += 2.0 * even[2 * k];
    normalization = std::max(normalization, std::fabs(sum - 1.0));

    const int m = rng.integer(0, 40);
    const double jmv = std::fabs(bessel_j(m, w));
    bounded = std::max({bounded, jmv, jmv / factorial_bound(m, w)});
  }
  out.push_back(at_most("bessel.reflection", reflection, 0.0));
  out.push_back(at_most("bessel.three_term_recurrence", recurrence, 1e-10));
  out.push_back(at_most("bessel.normalization", normalization, opt.tol));

  double oracle = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (double w : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
      oracle = std::max(oracle, std::fabs(bessel_j(n, w) -
                                          bessel_series_oracle(n, w, 60)));
    }
  }
  out.push_back(at_most("bessel.series_oracle", oracle, opt.tol));
  // The factorial bound itself is rounded; allow it 4 ulps.
  out.push_back(at_most("bessel.boundedness", bounded, 1.0 + 4.0 * kEps));

  double slope_dev = 0.0;
  for (const auto& [n, w] : {std::pair{0, 5.0}, {2, 10.0}, {5, 8.0}}) {
    std::vector<double> lx, ly;
    for (double h : {1e-1, 1e-2, 1e-3}) {
      lx.push_back(std::log10(h));
      ly.push_back(std::log10(std::fabs(ode_residual(n, w, h))));
    }
    slope_dev = std::max(slope_dev, std::fabs(ls_slope(lx, ly) - 2.0));
  }
  out.push_back(at_most("bessel.ode_residual_order", slope_dev, 0.2));
}

void partial_wave_properties(const VerifyOptions& opt, Sampler& rng,
                             std::vector<PropertyResult>& out) {
  double folding = 0.0;
  for (int s = 0; s < opt.samples / 10; ++s) {
    const double w = rng.uniform(0.0, 50.0);
    const int N = rng.integer(0, 60);
    const BesselRow row = bessel_row(N, w);
    Complex sym = i_pow(0) * row[0];
    for (int n = 1; n <= N; ++n) {
      sym += i_pow(n) * row[n] + i_pow(-n) * row[-n];
    }
    folding = std::max(folding, std::abs(sym - reconstruct(w, N).partial_sum));
  }
  out.push_back(at_most("partial_waves.folding_identity", folding, 0.0));

  double rise = 0.0;
  double converged = 0.0;
  double bound_excess = 0.0;
  double modulus = 0.0;
  for (double w : {0.1, 1.0, 2.0, 5.0, 10.0}) {
    const int start = static_cast<int>(std::ceil(w));
    const int n_star = required_order(w, 1e-13);
    const double floor = roundoff_floor(w);
    double previous = std::numeric_limits<double>::infinity();
    for (int n = start; n <= n_star + 10; ++n) {
      const ExpansionReport r = reconstruct(w, n);
      rise = std::max(rise, r.abs_error - std::max(previous, floor));
      previous = r.abs_error;
      bound_excess =
          std::max(bound_excess, r.abs_error - std::max(r.bound, floor));
    }
    const ExpansionReport r = reconstruct(w, n_star);
    converged = std::max(converged, r.abs_error);
    modulus = std::max(modulus, std::fabs(std::abs(r.partial_sum) - 1.0));
  }
  for (int s = 0; s < opt.samples / 10; ++s) {
    const double w = rng.uniform(0.0, 100.0);
    const ExpansionReport r = reconstruct(w, required_order(w, 1e-13));
    converged = std::max(converged, r.abs_error);
    modulus = std::max(modulus, std::fabs(std::abs(r.partial_sum) - 1.0));
  }
  out.push_back(at_most("partial_waves.convergence_monotone", rise, 0.0));
  out.push_back(at_most("partial_waves.converged_error", converged, opt.tol));
  out.push_back(at_most("partial_waves.bound_validity", bound_excess, 0.0));
  out.push_back(at_most("partial_waves.target_modulus", modulus, opt.tol));

  double reduction = 0.0;
  for (int s = 0; s < opt.samples / 10; ++s) {
    ActionState state;
    state.S = rng.log_uniform(0.1, 50.0);
    state.hbar = 1.0;
    state.E = rng.uniform(-5.0, 5.0);
    state.t = 0.0;
    const int N = rng.integer(0, 60);
    const Complex a = time_sum(state, N);
    const Complex b = reconstruct(state.S / state.hbar, N).partial_sum;
    reduction = std::max(reduction, a == b ? 0.0 : std::abs(a - b) + 1e-300);
  }
  out.push_back(at_most("partial_waves.time_reduction", reduction, 0.0));

  double oracle = 0.0;
  double discrepancy = 0.0;
  for (double theta : {0.0, 0.1, 0.5, 1.0}) {
    const ActionState state{1.0, 1.0, 1.0, theta, {}};
    const int N = std::min(overflow_safe_order(state),
                           time_required_order(state, 1e-13));
    const Complex sum = time_sum(state, N);
    oracle = std::max(oracle, std::abs(sum - time_closed_form(state)));
    discrepancy = std::max(discrepancy, std::abs(sum - time_phase(state)));
  }
  out.push_back(at_most("partial_waves.time_oracle", oracle, 1e-10));
  PropertyResult info{"partial_waves.time_vs_phase_discrepancy", discrepancy,
                      0.0, true, true};
  out.push_back(info);
}

void duality_properties(const VerifyOptions& opt, Sampler& rng,
                        std::vector<PropertyResult>& out) {
  constexpr double pi = std::numbers::pi;
  double involution = 0.0;
  double modulus = 0.0;
  double angle = 0.0;
  double polar = 0.0;
  bool labels = true;
  for (int s = 0; s < opt.samples; ++s) {
    const double rho = rng.log_uniform(1e-3, 1e3);
    const double phi = rng.uniform(-pi, pi);
    const Chart chart = (s & 1) ? Chart::kZTilde : Chart::kZ;
    const SpherePoint p = SpherePoint::from_polar(chart, rho, phi);
    const SpherePoint q = chart_invert(p);
    const SpherePoint back = chart_invert(q);
    labels = labels && q.chart() == other(chart) && back.chart() == chart;
    involution = std::max(involution, std::abs(back.coord() - p.coord()) /
                                          std::max(1.0, std::abs(p.coord())));
    modulus = std::max(modulus, std::fabs(q.rho() * p.rho() - 1.0));
    angle = std::max(angle,
                     std::fabs(normalize_angle(q.phi() + (p.phi() + pi))));
    polar = std::max(polar, std::abs(q.coord() - std::polar(q.rho(), q.phi())) /
                                std::max(1.0, q.rho()));
  }
  out.push_back(at_most("duality.involution", labels ? involution : 1.0, 1e-14));
  out.push_back(at_most("duality.modulus_inversion", modulus, 1e-14));
  out.push_back(at_most("duality.angle_law", angle, 1e-14));
  out.push_back(at_most("duality.polar_consistency", polar, 1e-14));

  double fixed = 0.0;
  for (double sign : {1.0, -1.0}) {
    const SpherePoint p = SpherePoint::from_coord(Chart::kZ, {0.0, sign});
    fixed = std::max(fixed, std::abs(chart_invert(p).coord() - p.coord()));
  }
  out.push_back(at_most("duality.fixed_points", fixed, 1e-15));

  double dual = 0.0;
  double swap = 0.0;
  double product = 0.0;
  for (int s = 0; s < opt.samples / 10; ++s) {
    ActionState state;
    state.S = rng.log_uniform(1e-2, 1e2);
    state.hbar = rng.log_uniform(1e-2, 1e2);
    const ActionState swapped{state.hbar, state.S, 0.0, 0.0, {}};
    const int N = rng.integer(0, 60);
    const ExpansionReport a = dual_reconstruct(state, N);
    const ExpansionReport b = reconstruct(swapped.S / swapped.hbar, N);
    if (!(a.partial_sum == b.partial_sum && a.abs_error == b.abs_error)) {
      dual = std::max(dual, std::abs(a.partial_sum - b.partial_sum) + 1e-300);
    }
    const Complex p = selfdual_phase(state);
    const Complex q = selfdual_phase(swapped);
    if (!(p == q)) swap = std::max(swap, std::abs(p - q) + 1e-300);
    product = std::max(
        product, std::fabs(quantum_ratio(state, Regime::kSemiclassical) *
                               quantum_ratio(state, Regime::kStrongQuantum) -
                           1.0));
  }
  out.push_back(at_most("duality.dual_reconstruct_consistency", dual, 0.0));
  out.push_back(at_most("duality.selfdual_swap", swap, 0.0));
  out.push_back(at_most("duality.product_law", product, 1e-15));

  // |selfdual - e^{iS/hbar}| <= hbar/S, reported as the excess over hbar/S.
  double excess = -std::numeric_limits<double>::infinity();
  auto check = [&](double ratio) {
    const ActionState state{ratio, 1.0, 0.0, 0.0, {}};
    const double delta =
        std::abs(selfdual_phase(state) - std::polar(1.0, state.S / state.hbar));
    excess = std::max(excess, delta - state.hbar / state.S);
  };
  for (double ratio : {10.0, 1e2, 1e4, 1e6}) check(ratio);
  for (int s = 0; s < opt.samples / 10; ++s) check(rng.log_uniform(10.0, 1e6));
  out.push_back(at_most("duality.semiclassical_limit", excess, 0.0));
}

}  // namespace

std::vector<PropertyResult> run_properties(const VerifyOptions& options) {
  Sampler rng(options.seed);
  std::vector<PropertyResult> results;
  bessel_properties(options, rng, results);
  partial_wave_properties(options, rng, results);
  duality_properties(options, rng, results);
  return results;
}

std::string format_result(const PropertyResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %s worst=%.6e limit=%.6e",
                r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL"),
                r.name.c_str(), r.worst, r.limit);
  return buf;
}

}  // namespace actionwave
