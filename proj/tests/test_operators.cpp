#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dharm/errors.hpp"
#include "dharm/operators.hpp"
#include "dharm/spectral.hpp"

using namespace dharm;

namespace {

constexpr double kPi = std::numbers::pi;

RealSequence sample() { return RealSequence(-1, (Eigen::VectorXd(5) << -2.0, 0.0, 0.0, 0.0, 1.0).finished()); }

RealSequence random17(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(17);
  for (auto& x : v) x = u(rng);
  return RealSequence(-8, v);
}

template <typename S>
double diff_to_oracle(const Sequence<S>& physical, const ComplexSequence& oracle, const Window& w) {
  double d = 0.0;
  for (long n = w.lo; n <= w.hi; ++n) d = std::max(d, std::abs(Complex(physical(n)) - oracle(n)));
  return d;
}

}  // namespace

TEST(Differences, Stencils) {
  const auto d0 = RealSequence::delta(0);
  const auto lap = discrete_laplacian(d0);
  EXPECT_EQ(lap(-1), 1.0);
  EXPECT_EQ(lap(0), -2.0);
  EXPECT_EQ(lap(1), 1.0);
  const auto fd = forward_difference(d0);
  EXPECT_EQ(fd(-1), 1.0);
  EXPECT_EQ(fd(0), -1.0);
  const auto bd = backward_difference(d0);
  EXPECT_EQ(bd(0), 1.0);
  EXPECT_EQ(bd(1), -1.0);
}

TEST(Heat, IdentityAtZeroAndSemigroup) {
  const auto f = random17(1);
  EXPECT_EQ(max_abs_diff(heat_apply(f, 0.0, f.window()), f, f.window()), 0.0);
  const Window w = Window::centered(30);
  const auto a = heat_apply(heat_apply(f, 0.4, default_heat_window(f.window(), 0.4)), 0.9, w);
  EXPECT_LE(max_abs_diff(a, heat_apply(f, 1.3, w), w), 1e-12);
}

TEST(Heat, DefaultWindowHoldsMass) {
  for (double t : {0.0, 0.5, 20.0}) {
    const auto h = heat_apply(RealSequence::delta(0), t, default_heat_window({0, 0}, t));
    EXPECT_NEAR(h.values().sum(), 1.0, 1e-12);
  }
}

TEST(Poisson, TimeDerivativeAndErrors) {
  const auto d0 = RealSequence::delta(0);
  const Window w = Window::centered(6);
  const double h = 1e-4;
  const auto p = poisson_apply_many(d0, {0.8 - h, 0.8 + h}, w);
  const auto dp = poisson_time_derivative(d0, 0.8, w);
  for (long n = w.lo; n <= w.hi; ++n) EXPECT_NEAR(dp(n), (p[1](n) - p[0](n)) / (2 * h), 1e-7);
  EXPECT_THROW(poisson_time_derivative(d0, 0.0, w), DomainError);
  EXPECT_THROW(poisson_apply(d0, -1.0, w), DomainError);
  EXPECT_THROW(poisson_apply(d0, 1.0, Window{}), DomainError);
}

TEST(Poisson, ManyMatchesSingle) {
  const auto f = sample();
  const Window w = Window::centered(8);
  const auto many = poisson_apply_many(f, {0.0, 0.5, 3.0}, w);
  EXPECT_EQ(max_abs_diff(many[0], f, w), 0.0);
  EXPECT_LE(max_abs_diff(many[1], poisson_apply(f, 0.5, w), w), 1e-12);
  EXPECT_LE(max_abs_diff(many[2], poisson_apply(f, 3.0, w), w), 1e-12);
}

TEST(RouteAgreement, AllFamiliesAgainstOracle) {
  const Window w = Window::centered(32);
  for (const auto& f : {RealSequence::delta(0), sample(), random17(42)}) {
    EXPECT_LE(diff_to_oracle(heat_apply(f, 1.5, w), oracle_apply(OperatorSpec::heat(1.5), f, w), w), 1e-10);
    EXPECT_LE(diff_to_oracle(poisson_apply(f, 1.5, w), oracle_apply(OperatorSpec::poisson(1.5), f, w), w), 1e-7);
    EXPECT_LE(diff_to_oracle(riesz_apply(f, Parity::plus, w), oracle_apply({OperatorKind::riesz, 0.0}, f, w), w),
              1e-10);
    EXPECT_LE(
        diff_to_oracle(riesz_apply(f, Parity::tilde, w), oracle_apply({OperatorKind::riesz_tilde, 0.0}, f, w), w),
        1e-10);
    EXPECT_LE(diff_to_oracle(fractional_laplacian_apply(f, 0.35, w),
                             oracle_apply(OperatorSpec::frac_laplacian(0.35), f, w), w),
              1e-7);
    EXPECT_LE(diff_to_oracle(fractional_integral_apply(f, 0.3, w),
                             oracle_apply(OperatorSpec::frac_integral(0.3), f, w), w),
              1e-7);
    EXPECT_LE(diff_to_oracle(conjugate_poisson_apply(f, 0.6, Parity::plus, w),
                             oracle_apply(OperatorSpec::conj_poisson(0.6), f, w), w),
              1e-7);
    EXPECT_LE(diff_to_oracle(conjugate_poisson_apply(f, 0.6, Parity::tilde, w),
                             oracle_apply(OperatorSpec::conj_poisson_tilde(0.6), f, w), w),
              1e-7);
  }
}

TEST(Fractional, DeltaValuesAndRoutes) {
  const auto d0 = RealSequence::delta(0);
  const auto half = fractional_laplacian_apply(d0, 0.5, Window::centered(2));
  EXPECT_NEAR(half(0), 4.0 / kPi, 1e-10);
  EXPECT_NEAR(half(1), -4.0 / (3.0 * kPi), 1e-10);
  EXPECT_NEAR(half(2), -4.0 / (15.0 * kPi), 1e-10);
  const auto f = random17(9);
  const Window w = Window::centered(20);
  EXPECT_LE(max_abs_diff(fractional_laplacian_apply(f, 0.6, w),
                         fractional_laplacian_apply(f, 0.6, w, QuadratureSpec::fractional_default(),
                                                    FractionalRoute::kernel_sum),
                         w),
            1e-9);
}

TEST(Fractional, MaximumPrinciple) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double sigma : {0.1, 0.5, 0.9}) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd v(9);
      for (auto& x : v) x = u(rng);
      v[4] = 0.0;
      EXPECT_LE(maximum_principle_check(RealSequence(-4, v), sigma, 0), -1e-12);
    }
  }
  EXPECT_THROW(maximum_principle_check(RealSequence::delta(0), 0.5, 0), ContractError);
  EXPECT_THROW(maximum_principle_check(RealSequence::delta(1, -1.0), 0.5, 0), ContractError);
}

TEST(Fractional, Errors) {
  EXPECT_THROW(fractional_laplacian_apply(RealSequence::delta(0), 0.0, {0, 0}), DomainError);
  EXPECT_THROW(fractional_integral_apply(RealSequence::delta(0), 0.5, {0, 0}), DomainError);
}

TEST(Conjugate, RoutesAndLimit) {
  const auto d0 = RealSequence::delta(0);
  const Window w = Window::centered(10);
  const auto a = conjugate_poisson_apply(d0, 1.0, Parity::plus, w);
  const auto b = conjugate_poisson_apply(d0, 1.0, Parity::plus, w, QuadratureSpec::subordination_default(),
                                         ConjugateRoute::integral_of_DP);
  EXPECT_LE(max_abs_diff(a, b, w), 1e-9);
  const auto r = riesz_apply(d0, Parity::plus, w);
  double prev = INFINITY;
  for (double t : {1e-1, 1e-2, 1e-3}) {
    const double gap = max_abs_diff(conjugate_poisson_apply(d0, t, Parity::plus, w), r, w);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LE(prev, 1e-2);
  EXPECT_LE(max_abs_diff(conjugate_poisson_apply(d0, 0.0, Parity::plus, w), r, w), 1e-15);
}

TEST(Conjugate, ManyAndTimeDerivative) {
  const auto f = sample();
  const Window w = Window::centered(8);
  const auto many = conjugate_poisson_apply_many(f, {0.5, 2.0}, Parity::tilde, w);
  EXPECT_LE(max_abs_diff(many[1], conjugate_poisson_apply(f, 2.0, Parity::tilde, w), w), 1e-12);
  const double h = 1e-4;
  const auto pm = conjugate_poisson_apply_many(f, {1.0 - h, 1.0 + h}, Parity::plus, w);
  const auto dq = conjugate_poisson_time_derivative(f, 1.0, Parity::plus, w);
  for (long n = w.lo; n <= w.hi; ++n) EXPECT_NEAR(dq(n), (pm[1](n) - pm[0](n)) / (2 * h), 1e-7);
}

TEST(CauchyRiemann, ResidualsAndHarmonicity) {
  const auto f = random17(5);
  const auto r = cauchy_riemann_residual(f, 1.0, Window::centered(10));
  EXPECT_LE(r.max(), 1e-6);
  EXPECT_LE(harmonicity_residual(f, 1.0, 1e-3, false, Window::centered(10)), 1e-5);
  EXPECT_LE(harmonicity_residual(f, 1.0, 1e-3, true, Window::centered(10)), 1e-5);
  EXPECT_THROW(cauchy_riemann_residual(f, 0.0, Window::centered(1)), DomainError);
}

TEST(Heat, EquationResidual) {
  const auto f = random17(3);
  for (double t : {0.2, 3.0}) EXPECT_LE(heat_equation_residual(f, t, 2), 1e-12);
}

TEST(SquareFunction, DeltaNormWithTail) {
  // n^2 g(delta_0)(n)^2 -> 1/(8 pi); add that tail beyond the window.
  const long N = 50;
  const auto g = square_function(RealSequence::delta(0), Window::centered(N));
  const double tail = 2.0 / (8.0 * kPi) * (1.0 / N - 1.0 / (2.0 * N * N) + 1.0 / (6.0 * N * N * N));
  EXPECT_NEAR(std::sqrt(g.values().squaredNorm() + tail), 0.5, 1e-4);
  EXPECT_NEAR(g.values().squaredNorm(), 0.2484245172, 1e-8);
}

TEST(Maximal, HeatDeltaMonotone) {
  const auto w = maximal_apply(RealSequence::delta(0), MaximalKind::heat, TimeGrid::log_spaced(1e-6, 1e6, 16),
                               Window::centered(100));
  EXPECT_EQ(w(0), 1.0);
  for (long n = 1; n < 100; ++n) {
    EXPECT_GE(w(n), w(n + 1));
    EXPECT_EQ(w(n), w(-n));
  }
}

TEST(Maximal, DominatesEveryGridTime) {
  const auto f = sample();
  const Window w = Window::centered(12);
  const TimeGrid grid{{0.0, 0.5, 2.0, 9.0}};
  const auto m = maximal_apply(f, MaximalKind::poisson, grid, w);
  for (double t : grid.points) {
    const auto p = poisson_apply(f, t, w);
    for (long n = w.lo; n <= w.hi; ++n) EXPECT_GE(m(n), std::abs(p(n)) - 1e-15);
  }
  const auto q = maximal_apply(f, MaximalKind::conj_plus, grid, w);
  const auto r = riesz_apply(f, Parity::plus, w);
  for (long n = w.lo; n <= w.hi; ++n) EXPECT_GE(q(n), std::abs(r(n)));
  EXPECT_THROW((TimeGrid{{1.0, 1.0}}.validate()), DomainError);
}

TEST(ComplexScalar, MatchesRealParts) {
  const auto f = random17(8);
  const ComplexSequence z(f.lo(), f.values().cast<Complex>() * Complex(0.0, 1.0));
  const Window w = Window::centered(10);
  const auto pr = poisson_apply(f, 1.0, w);
  const auto pz = poisson_apply(z, 1.0, w);
  for (long n = w.lo; n <= w.hi; ++n) EXPECT_NEAR(std::abs(pz(n) - Complex(0.0, pr(n))), 0.0, 1e-14);
}
