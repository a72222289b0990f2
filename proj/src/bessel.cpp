#include "actionwave/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "actionwave/detail/miller_kernel.hpp"
#include "actionwave/simd.hpp"

namespace actionwave {

namespace {

// Below this argument the ascending series converges in a handful of terms
// and the recurrence normalization gains nothing.
constexpr double kSeriesCutoff = 0.5;

#if defined(__SIZEOF_FLOAT128__) && !defined(__clang__)
using WideFloat = __float128;
#else
using WideFloat = long double;
#endif

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_order(int n_max, const char* parameter) {
  if (n_max < 0 || n_max > kMaxOrder) {
    throw DomainError(parameter, std::string(parameter) + " must be in [0, " +
                                     std::to_string(kMaxOrder) + "], got " +
                                     std::to_string(n_max));
  }
}

double ascending_series(int n, double w) {
  const double half = 0.5 * w;
  double term = 1.0;
  for (int j = 1; j <= n; ++j) term *= half / j;
  if (term == 0.0) return 0.0;
  const double q = half * half;
  double sum = term;
  for (int k = 1; k < 64; ++k) {
    term *= -q / (k * static_cast<double>(n + k));
    sum += term;
    if (std::fabs(term) <= 1.0e-17 * std::fabs(sum)) break;
  }
  return sum;
}

void fill_row(double w, int n_max, std::span<double> out) {
  if (w == 0.0) {
    for (auto& v : out) v = 0.0;
    out[0] = 1.0;
  } else {
    for (int n = 0; n <= n_max; ++n) out[n] = ascending_series(n, w);
  }
}

}  // namespace

BesselArgument::BesselArgument(double w, const char* parameter) : w_(w) {
  if (!std::isfinite(w) || w < 0.0 || w > kMaxArgument) {
    throw DomainError(parameter, std::string(parameter) +
                                     " must be finite and in [0, 1e4], got " +
                                     format_value(w));
  }
}

BesselRow::BesselRow(BesselArgument w, std::vector<double> nonnegative)
    : w_(w), values_(std::move(nonnegative)) {
  if (values_.empty()) {
    throw std::invalid_argument("BesselRow needs at least J_0");
  }
}

std::vector<double> BesselRow::full() const {
  const int n = n_max();
  std::vector<double> row;
  row.reserve(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k) row.push_back((*this)[k]);
  return row;
}

BesselRow bessel_row(int n_max, double w) {
  const double ws[] = {w};
  return std::move(bessel_rows(n_max, ws).front());
}

std::vector<BesselRow> bessel_rows(int n_max, std::span<const double> ws) {
  check_order(n_max, "n_max");
  std::vector<BesselArgument> args;
  args.reserve(ws.size());
  for (double w : ws) args.emplace_back(w);

  const auto stride = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> values(stride * ws.size());

  std::vector<double> recurrence_w;
  std::vector<std::size_t> recurrence_idx;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (ws[i] < kSeriesCutoff) {
      fill_row(ws[i], n_max,
               std::span<double>(values).subspan(i * stride, stride));
    } else {
      recurrence_w.push_back(ws[i]);
      recurrence_idx.push_back(i);
    }
  }
  if (!recurrence_w.empty()) {
    std::vector<double> tmp(stride * recurrence_w.size());
    simd::miller_rows(simd::best_kernel(), recurrence_w, n_max, tmp);
    for (std::size_t j = 0; j < recurrence_idx.size(); ++j) {
      std::copy_n(tmp.begin() + static_cast<std::ptrdiff_t>(j * stride),
                  stride,
                  values.begin() +
                      static_cast<std::ptrdiff_t>(recurrence_idx[j] * stride));
    }
  }

  std::vector<BesselRow> rows;
  rows.reserve(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(i * stride);
    rows.emplace_back(args[i], std::vector<double>(
                                   first, first + static_cast<std::ptrdiff_t>(
                                                      stride)));
  }
  return rows;
}

double bessel_j(int n, double w) {
  if (n < -kMaxOrder || n > kMaxOrder) {
    throw DomainError("n", "order n must satisfy |n| <= " +
                               std::to_string(kMaxOrder) + ", got " +
                               std::to_string(n));
  }
  const int m = std::abs(n);
  const BesselRow row = bessel_row(m, w);
  return row[n];
}

double bessel_series_oracle(int n, double w, int terms) {
  if (n < 0 || n > 60) {
    throw DomainError("n", "series oracle needs 0 <= n <= 60, got " +
                               std::to_string(n));
  }
  if (!std::isfinite(w) || w < 0.0 || w > 30.0) {
    throw DomainError("w", "series oracle needs 0 <= w <= 30, got " +
                               format_value(w));
  }
  if (terms < 1) {
    throw DomainError("terms", "series oracle needs terms >= 1, got " +
                                   std::to_string(terms));
  }
  // Each term is built from scratch in extended precision: the alternating
  // terms reach ~1e7 at w = 20 and binary64 accumulation would lose 9 digits.
  const WideFloat half = static_cast<WideFloat>(w) / 2;
  WideFloat sum = 0;
  for (int k = 0; k < terms; ++k) {
    WideFloat num = 1;
    for (int j = 0; j < n + 2 * k; ++j) num *= half;
    WideFloat den = 1;
    for (int j = 2; j <= k; ++j) den *= j;
    for (int j = 2; j <= n + k; ++j) den *= j;
    const WideFloat term = num / den;
    sum += (k & 1) ? -term : term;
  }
  return static_cast<double>(sum);
}

double ode_residual(const std::function<double(double)>& f, int n, double w,
                    double h) {
  if (!(h > 0.0) || h > 0.1) {
    throw DomainError("h", "step h must satisfy 0 < h <= 0.1, got " +
                               format_value(h));
  }
  if (!std::isfinite(w) || !(w - 2.0 * h > 0.0)) {
    throw DomainError("w", "stencil leaves the domain: need w - 2h > 0, got w = " +
                               format_value(w));
  }
  const double fm = f(w - h);
  const double f0 = f(w);
  const double fp = f(w + h);
  const double d1 = (fp - fm) / (2.0 * h);
  const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
  const double nn = static_cast<double>(n) * n;
  return d2 + d1 / w + (1.0 - nn / (w * w)) * f0;
}

double ode_residual(int n, double w, double h) {
  return ode_residual([n](double x) { return bessel_j(n, x); }, n, w, h);
}

long long casimir(int space_dim_minus_one, long long l) {
  if (space_dim_minus_one < 1) {
    throw DomainError("N", "Casimir needs N >= 1, got " +
                               std::to_string(space_dim_minus_one));
  }
  return l * (l + space_dim_minus_one - 1);
}

}  // namespace actionwave
