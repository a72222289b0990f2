#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <random>

#include "actionwave/partial_waves.hpp"
#include "support/oracles.hpp"

using namespace actionwave;
using actionwave::testing::exp_i_w_cos;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

ActionState unit_state(double t) {
  ActionState s;
  s.S = 1.0;
  s.hbar = 1.0;
  s.E = 1.0;
  s.t = t;
  return s;
}

bool same_bits(const Complex& a, const Complex& b) {
  return std::memcmp(&a, &b, sizeof(Complex)) == 0;
}

// Independent of the library fold: the unfolded sum over -N..N in real
// arithmetic.
Complex unfolded_sum(double w, int n_max) {
  Complex sum(0.0, 0.0);
  for (int n = -n_max; n <= n_max; ++n) sum += i_pow(n) * bessel_j(n, w);
  return sum;
}

}  // namespace

TEST_CASE("i_pow cycles through the units") {
  CHECK(i_pow(0) == Complex(1.0, 0.0));
  CHECK(i_pow(1) == Complex(0.0, 1.0));
  CHECK(i_pow(2) == Complex(-1.0, 0.0));
  CHECK(i_pow(3) == Complex(0.0, -1.0));
  CHECK(i_pow(-1) == Complex(0.0, -1.0));
  CHECK(i_pow(-6) == Complex(-1.0, 0.0));
}

TEST_CASE("reconstruct of the empty phase") {
  const ExpansionReport r = reconstruct(0.0, 0);
  CHECK(r.partial_sum == Complex(1.0, 0.0));
  CHECK(r.abs_error == 0.0);
  CHECK(r.bound == 0.0);
}

TEST_CASE("required_order at w = 1 is frozen") {
  CHECK(required_order(1.0, 1e-13) == 12);
  CHECK(required_order(0.0, 1e-3) == 0);
  CHECK(required_order(0.0, 1e-15) == 0);
  CHECK(required_order(1.0, 1e-13) == required_order(1.0, 1e-13));
}

TEST_CASE("reconstruct converges to e^{iw}") {
  for (double w : {0.1, 1.0, 2.0, 5.0, 10.0}) {
    const int n = required_order(w, 1e-13);
    const ExpansionReport r = reconstruct(w, n);
    CAPTURE(w);
    CHECK(r.abs_error <= 1e-12);
    CHECK(std::fabs(std::abs(r.partial_sum) - 1.0) <= 1e-12);
    CHECK(std::abs(r.partial_sum - std::exp(Complex(0.0, w))) <= 1e-12);
    CHECK(r.in_bound_regime());
  }
}

TEST_CASE("reconstruct outside the bound regime is still well formed") {
  const ExpansionReport r = reconstruct(5.0, 3);
  CHECK(!r.in_bound_regime());
  CHECK(r.n_max == 3);
  CHECK(std::isfinite(r.abs_error));
  CHECK(r.target == Complex(std::cos(5.0), std::sin(5.0)));
  // 3 >= ceil(5/2): the bound is finite here but carries no guarantee.
  CHECK(std::isfinite(r.bound));
  CHECK(reconstruct(5.0, 2).bound == kInf);
}

TEST_CASE("tail_bound examples") {
  CHECK(tail_bound(0.0, 0) == 0.0);
  CHECK(tail_bound(0.0, 17) == 0.0);
  CHECK(tail_bound(10.0, 2) == kInf);

  // 2 (1/2)^6 / 6! / (1 - 1/14)
  const double expected = 2.0 * std::pow(0.5, 6) / 720.0 / (1.0 - 1.0 / 14.0);
  CHECK(tail_bound(1.0, 5) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(tail_bound(1.0, 5) >= reconstruct(1.0, 5).abs_error);

  CHECK_THROWS_AS(tail_bound(1.0, -1), DomainError);
  CHECK_THROWS_AS(tail_bound(-1.0, 3), DomainError);
  CHECK_THROWS_AS(required_order(1.0, 1e-16), DomainError);
  CHECK_THROWS_AS(required_order(1.0, std::nan("")), DomainError);
}

TEST_CASE("tail_bound is continuous across the log switch") {
  const double a = detail::tail_bound_unchecked(1000.0, 1400);
  const double b = detail::tail_bound_unchecked(std::nextafter(1000.0, 2000.0),
                                                1400);
  CHECK(b == doctest::Approx(a).epsilon(1e-10));
}

TEST_CASE("folding identity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> arg(0.0, 30.0);
  for (int s = 0; s < 200; ++s) {
    const double w = arg(rng);
    const int n = static_cast<int>(std::ceil(w)) + 20;
    const Complex folded = reconstruct(w, n).partial_sum;
    CHECK(std::abs(folded - unfolded_sum(w, n)) <= 1e-13);
  }
}

TEST_CASE("bound validity and monotone convergence above the roundoff floor") {
  const double eps = std::numeric_limits<double>::epsilon();
  for (double w : {0.1, 1.0, 2.0, 5.0, 10.0}) {
    const double floor = 16.0 * eps * std::max(1.0, w);
    const int start = static_cast<int>(std::ceil(w));
    double previous = kInf;
    for (int n = start; n <= start + 40; ++n) {
      const ExpansionReport r = reconstruct(w, n);
      CAPTURE(w);
      CAPTURE(n);
      CHECK(r.abs_error <= std::max(r.bound, floor));
      CHECK(r.abs_error <= std::max(previous, floor));
      previous = r.abs_error;
    }
  }
}

TEST_CASE("time_term examples") {
  ActionState s;
  s.S = 2.5;
  s.hbar = 0.5;
  s.E = 3.0;
  s.t = 0.7;
  const WaveTerm zero = time_term(0, s);
  CHECK(zero.angular == Complex(1.0, 0.0));
  CHECK(zero.value() == Complex(bessel_j(0, 5.0), 0.0));

  s.t = 0.0;
  for (int n = -6; n <= 6; ++n) {
    const WaveTerm term = time_term(n, s);
    CHECK(term.angular == Complex(1.0, 0.0));
    CHECK(term.value() == i_pow(n) * bessel_j(n, 5.0));
  }
}

TEST_CASE("time_sum at t = 0 is the static reconstruction bit for bit") {
  for (double S : {0.3, 1.0, 4.0, 12.5}) {
    ActionState s;
    s.S = S;
    s.hbar = 1.0;
    s.E = 2.0;
    s.t = 0.0;
    const int n = required_order(S, 1e-13);
    CHECK(same_bits(time_sum(s, n), reconstruct(S, n).partial_sum));
  }
}

TEST_CASE("time_sum modulus at t = 0 tends to one") {
  const ActionState s = unit_state(0.0);
  double previous = kInf;
  for (int n : {2, 4, 8, 16}) {
    const double gap = std::fabs(std::abs(time_sum(s, n)) - 1.0);
    CHECK(gap <= std::max(previous, 1e-15));
    previous = gap;
  }
  CHECK(previous <= 1e-14);
}

TEST_CASE("time_sum matches the generating-function closed form") {
  for (double t : {0.1, 0.3, 0.5}) {
    const ActionState s = unit_state(t);
    const int n = std::min(overflow_safe_order(s),
                           time_required_order(s, 1e-13));
    const Complex sum = time_sum(s, n);
    // phi = 2 pi e^{-it} = a - ib
    const Complex oracle =
        exp_i_w_cos(1.0, kTwoPi * std::cos(t), kTwoPi * std::sin(t));
    CAPTURE(t);
    CAPTURE(n);
    CHECK(std::abs(sum - oracle) <= 1e-10);
    CHECK(std::abs(time_closed_form(s) - oracle) <=
          1e-13 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("time closed form agrees with a general generating function") {
  // exp(w/2 (v - 1/v)) = sum v^n J_n(w) at v = i e^{i phi}, with complex phi
  // kept small enough that the truncated sum converges quickly.
  const double w = 2.0;
  const Complex phi(0.4, -0.2);
  const Complex v = Complex(0.0, 1.0) * std::exp(Complex(0.0, 1.0) * phi);
  Complex sum(0.0, 0.0);
  for (int n = -60; n <= 60; ++n) sum += std::pow(v, n) * bessel_j(n, w);
  const Complex lhs = std::exp(0.5 * w * (v - 1.0 / v));
  CHECK(std::abs(sum - lhs) <= 1e-12);
  CHECK(std::abs(lhs - exp_i_w_cos(w, phi.real(), -phi.imag())) <= 1e-13);
}

TEST_CASE("time_phase is a different object away from t = 0") {
  const ActionState s0 = unit_state(0.0);
  CHECK(std::abs(time_phase(s0) - time_closed_form(s0)) <= 1e-15);
  const ActionState s1 = unit_state(0.3);
  CHECK(std::abs(time_phase(s1) - time_closed_form(s1)) > 1e-3);
}

TEST_CASE("angular factor overflow contract") {
  const ActionState s = unit_state(1.0);
  const int safe = overflow_safe_order(s);
  CHECK(safe == static_cast<int>(std::floor(700.0 / (kTwoPi * std::sin(1.0)))));
  CHECK_NOTHROW(angular_factor(safe, s));
  CHECK_NOTHROW(angular_factor(-safe, s));
  CHECK_THROWS_AS(angular_factor(safe + 1, s), OverflowError);
  CHECK_THROWS_AS(time_sum(s, safe + 1), OverflowError);
  try {
    time_sum(s, safe + 5);
    FAIL("expected OverflowError");
  } catch (const OverflowError& e) {
    CHECK(e.order() == safe + 5);
    CHECK(e.limit() == safe);
  }
  CHECK(overflow_safe_order(unit_state(0.0)) == kMaxOrder);
}

TEST_CASE("angular factor is exactly one at t = 0 only for multiples of 2 pi") {
  const ActionState s = unit_state(0.0);
  CHECK(angular_factor(7, s, kTwoPi) == Complex(1.0, 0.0));
  CHECK(angular_factor(7, s, 2.0 * kTwoPi) == Complex(1.0, 0.0));
  const Complex f = angular_factor(1, s, 1.0);
  CHECK(f.real() == doctest::Approx(std::cos(1.0)));
  CHECK(f.imag() == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("time_required_order may exceed the safe order") {
  const ActionState s = unit_state(1.0);
  CHECK(time_required_order(s, 1e-13) > overflow_safe_order(s));
  CHECK(time_required_order(unit_state(0.0), 1e-13) == required_order(1.0, 1e-13));
}

TEST_CASE("ActionState validation") {
  ActionState s;
  s.S = 0.0;
  CHECK_THROWS_AS(s.classical_ratio(), DomainError);
  s.S = 1.0;
  s.hbar = -1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.hbar = 1.0;
  s.E = std::nan("");
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.E = 1.0;
  s.t = kInf;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.t = 0.0;
  s.m = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.m.reset();
  s.S = 2.0e4;
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS_AS(s.classical_ratio(), DomainError);
  try {
    s.classical_ratio();
  } catch (const DomainError& e) {
    CHECK(e.parameter() == "S/hbar");
  }
}

TEST_CASE("radial coordinate") {
  ActionState s;
  s.hbar = 1.0;
  s.E = 1.0;
  s.m = 0.5;
  CHECK(radial_coordinate(0.0, s) == 0.0);
  CHECK(radial_coordinate(1.0, s) == doctest::Approx(1.0).epsilon(1e-15));
  s.m = 2.0;
  CHECK(radial_coordinate(2.0, s) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(radial_coordinate(-1.0, s), DomainError);
  s.E = -1.0;
  CHECK_THROWS_AS(radial_coordinate(1.0, s), DomainError);
  s.E = 1.0;
  s.m.reset();
  CHECK_THROWS_AS(radial_coordinate(1.0, s), DomainError);
}

TEST_CASE("angular eigenfunction") {
  CHECK(angular_eigenfunction(0, 1.234) == Complex(1.0, 0.0));
  const Complex y = angular_eigenfunction(1, kPi);
  CHECK(std::abs(y - Complex(-1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(angular_eigenfunction(1, 0.3 + kTwoPi) -
                 angular_eigenfunction(1, 0.3)) <= 1e-15);
  for (int l = -4; l <= 4; ++l) {
    for (double phi : {-2.0, 0.3, 1.7}) {
      // The shifted angle carries one rounding of phi + 2 pi, scaled by l.
      CHECK(std::abs(angular_eigenfunction(l, phi + kTwoPi) -
                     angular_eigenfunction(l, phi)) <= 1e-14);
      CHECK(std::abs(angular_eigenfunction(l, phi)) ==
            doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}
