#include "dharm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "dharm/bessel.hpp"
#include "dharm/errors.hpp"
#include "dharm/kernels.hpp"
#include "dharm/operators.hpp"
#include "dharm/spectral.hpp"
#include "dharm/weights.hpp"

namespace dharm::verify {

namespace {

constexpr double kPi = std::numbers::pi;

struct Context {
  std::string suite;
  QuadratureSpec sub;
  QuadratureSpec frac;
  std::vector<Check>* out;

  void add(std::string name, double observed, double tolerance) const {
    out->push_back({suite, std::move(name), observed, tolerance});
  }
};

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

RealSequence random_sequence(std::mt19937_64& rng, long lo, long size, double a, double b) {
  std::uniform_real_distribution<double> dist(a, b);
  Eigen::VectorXd v(size);
  for (long i = 0; i < size; ++i) v[i] = dist(rng);
  return RealSequence(lo, v);
}

double max_diff(const RealSequence& a, const RealSequence& b, const Window& w) { return max_abs_diff(a, b, w); }

double max_diff(const ComplexSequence& a, const RealSequence& b, const Window& w) {
  double d = 0.0;
  for (long n = w.lo; n <= w.hi; ++n) d = std::max(d, std::abs(a(n) - b(n)));
  return d;
}

void bessel_suite(const Context& c) {
  using namespace bessel;
  double sym = 0.0;
  double neg = 0.0;
  for (double t : {0.0, 1e-5, 0.3, 2.0, 40.0, 700.0, 5000.0}) {
    const auto row = scaled_bessel_row(t, 60);
    for (long k = 0; k <= 60; ++k) {
      sym = std::max(sym, std::abs(scaled_bessel(k, t) - scaled_bessel(-k, t)));
      neg = std::max(neg, -row(k));
    }
  }
  c.add("symmetry", sym, 0.0);
  c.add("nonnegativity", neg, 0.0);

  for (double t : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const auto row = scaled_bessel_row(t, heat_radius(t));
    c.add("normalization_t=" + label(t), std::abs(1.0 - row.sum()), 1e-12);
  }

  double series = 0.0;
  double schlafli = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    const auto row = scaled_bessel_row(t, 20);
    for (long k = 0; k <= 20; ++k) {
      const double s = scaled_bessel_series_oracle(k, 2.0 * t);
      series = std::max(series, std::abs(row(k) - s) / s);
      const double q = schlafli_oracle(static_cast<double>(k), 2.0 * t) * std::exp(-2.0 * t);
      schlafli = std::max(schlafli, std::abs(row(k) - q) / q);
    }
  }
  c.add("series_oracle_agreement", series, 1e-10);
  c.add("schlafli_oracle_agreement", schlafli, 1e-10);

  double diffs = 0.0;
  for (double nu : {-0.25, 0.5, 1.0, 2.5}) {
    for (double z : {0.5, 2.0, 8.0}) {
      double iv[4];
      for (int d = 0; d < 4; ++d) iv[d] = schlafli_oracle(nu + d, z);
      const double telescoped[3] = {iv[1] - iv[0], iv[2] - 2 * iv[1] + iv[0], iv[3] - 3 * iv[2] + 3 * iv[1] - iv[0]};
      for (int order = 1; order <= 3; ++order) {
        const double direct = schlafli_difference_oracle(nu, z, order);
        diffs = std::max(diffs, std::abs(direct - telescoped[order - 1]) / iv[0]);
      }
    }
  }
  c.add("schlafli_differences", diffs, 1e-10);

  // Centered differences in t: error ratio over one decade of h gives the order.
  double worst_slope = 10.0;
  for (long k : {0L, 1L, 4L}) {
    const double t = 1.3;
    const double exact = heat_time_derivative(k, t);
    std::vector<double> err;
    for (double h : {1e-2, 1e-3}) {
      err.push_back(std::abs((scaled_bessel(k, t + h) - scaled_bessel(k, t - h)) / (2 * h) - exact));
    }
    worst_slope = std::min(worst_slope, std::log10(err[0] / err[1]));
  }
  c.add("derivative_order_deficit", 1.9 - worst_slope, 0.0);

  double small = 0.0;
  for (double t : {1e-3, 1e-4}) {
    for (long k : {1L, 2L, 3L}) {
      const double ik = scaled_bessel(k, t) * std::exp(2.0 * t);
      small = std::max(small, std::abs(ik / std::pow(t, k) * std::tgamma(k + 1.0) - 1.0));
    }
  }
  c.add("small_t_ratio", small, 0.01);

  double asym = 0.0;
  for (auto [k, t] : {std::pair{0L, 1e4}, {1L, 1e4}, {0L, 1e6}, {3L, 2e4}}) asym = std::max(asym, asymptotic_check(k, t) * t);
  c.add("asymptotic_scaled_by_t", asym, 10.0);
}

void semigroup_suite(const Context& c) {
  using bessel::scaled_bessel;
  double neumann = 0.0;
  for (long r : {0L, 1L, -1L, 5L, -5L}) {
    for (double t1 : {0.3, 2.0}) {
      for (double t2 : {0.3, 2.0}) {
        const long k_max = heat_radius(std::max(t1, t2)) + std::abs(r);
        const auto a = bessel::scaled_bessel_row(t1, k_max);
        const auto b = bessel::scaled_bessel_row(t2, 2 * k_max);
        double sum = 0.0;
        for (long k = -k_max; k <= k_max; ++k) sum += a(k) * b(r - k);
        neumann = std::max(neumann, std::abs(sum - scaled_bessel(r, t1 + t2)));
      }
    }
  }
  c.add("neumann_identity", neumann, 1e-11);

  const auto d0 = RealSequence::delta(0);
  const Window w30 = Window::centered(30);
  const auto half = heat_apply(d0, 0.5, default_heat_window({0, 0}, 0.5));
  c.add("heat_semigroup", max_diff(heat_apply(half, 0.5, w30), heat_apply(d0, 1.0, w30), w30), 1e-11);

  double mass = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    const long k = heat_radius(t);
    const RealSequence ones(-k, Eigen::VectorXd::Ones(2 * k + 1));
    mass = std::max(mass, std::abs(heat_apply(ones, t, {0, 0})(0) - 1.0));
  }
  c.add("heat_preserves_constants", mass, 1e-10);

  std::mt19937_64 rng(7);
  const auto f = random_sequence(rng, -8, 17, -1.0, 1.0);
  double residual = 0.0;
  for (auto [t, n] : {std::pair{1.0, 0L}, {0.1, 5L}, {2.0, 3L}}) residual = std::max(residual, heat_equation_residual(f, t, n));
  c.add("heat_equation", residual, 1e-11);

  double contraction = 0.0;
  double negative = 0.0;
  const auto fpos = random_sequence(rng, -8, 17, 0.0, 1.0);
  for (double t : {0.5, 5.0}) {
    const auto wf = heat_apply(f, t, default_heat_window(f.window(), t));
    for (double p : {1.0, 2.0, double(INFINITY)}) {
      contraction = std::max(contraction, (lp_norm(wf, p) - lp_norm(f, p)) / lp_norm(f, p));
    }
    const auto wp = heat_apply(fpos, t, default_heat_window(fpos.window(), t));
    negative = std::max(negative, -wp.values().minCoeff());
  }
  c.add("heat_contraction", contraction, 1e-10);
  c.add("heat_positivity", negative, 0.0);

  // Poisson: multiplier e^{-2 t sin(theta/2)} is multiplicative in t.
  const Window w10 = Window::centered(10);
  const auto p_sum = poisson_apply(d0, 1.5, w10, c.sub);
  Multiplier product = [](double, double s) { return Complex(std::exp(-2.0 * 0.5 * s) * std::exp(-2.0 * 1.0 * s)); };
  c.add("poisson_semigroup_spectral", max_diff(oracle_apply(product, false, d0, w10), p_sum, w10), 1e-8);

  const double torus = oracle_apply(OperatorSpec::poisson(1.0), d0, {0, 0})(0).real();
  c.add("poisson_kernel_torus", std::abs(poisson_kernel(0, 1.0, c.sub) - torus), 1e-9);
  c.add("poisson_laplace_equation", harmonicity_residual(d0, 1.0, 1e-3, false, w10, c.sub), 1e-6);
}

void fractional_suite(const Context& c) {
  const auto d0 = RealSequence::delta(0);
  const auto half = fractional_laplacian_apply(d0, 0.5, Window::centered(1), c.frac);
  c.add("delta_value_n0", std::abs(half(0) - 4.0 / kPi), 1e-6);
  c.add("delta_value_n1", std::abs(half(1) + 4.0 / (3.0 * kPi)), 1e-6);

  std::mt19937_64 rng(11);
  const auto f = random_sequence(rng, -8, 17, -1.0, 1.0);
  const Window w32 = Window::centered(32);
  double routes = 0.0;
  for (double sigma : {0.2, 0.7}) {
    routes = std::max(routes, max_diff(fractional_laplacian_apply(f, sigma, w32, c.frac),
                                       fractional_laplacian_apply(f, sigma, w32, c.frac, FractionalRoute::kernel_sum),
                                       w32));
  }
  c.add("route_agreement", routes, 1e-7);

  double worst = -INFINITY;
  std::uniform_int_distribution<long> pick(-6, 6);
  for (double sigma : {0.1, 0.5, 0.9}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto g = random_sequence(rng, -6, 13, 0.0, 1.0);
      const long n0 = pick(rng);
      g.ref(n0) = 0.0;
      worst = std::max(worst, maximum_principle_check(g, sigma, n0, c.frac));
    }
  }
  c.add("maximum_principle_max_value", worst, -1e-12);

  double comparison = -INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_sequence(rng, -6, 13, -1.0, 1.0);
    auto bump = random_sequence(rng, -6, 13, 0.0, 1.0);
    const long n0 = pick(rng);
    bump.ref(n0) = 0.0;
    const auto upper = g + bump;  // upper >= g, equal at n0
    const double lhs = fractional_laplacian_apply(upper, 0.5, {n0, n0}, c.frac)(n0);
    const double rhs = fractional_laplacian_apply(g, 0.5, {n0, n0}, c.frac)(n0);
    comparison = std::max(comparison, lhs - rhs);
  }
  c.add("comparison_principle_max_gap", comparison, -1e-12);

  const auto near_one = fractional_laplacian_apply(d0, 0.999, Window::centered(3), c.frac);
  const auto minus_lap = -1.0 * discrete_laplacian(d0);
  c.add("sigma_to_one", max_diff(near_one, minus_lap, Window::centered(3)), 1e-2);

  Multiplier composed = [](double, double s) {
    const double a = 4.0 * s * s;
    return Complex(a == 0.0 ? 0.0 : std::pow(a, 0.3) * std::pow(a, -0.2));
  };
  const Window w10 = Window::centered(10);
  c.add("composition_spectral",
        max_diff(oracle_apply(composed, false, d0, w10), fractional_laplacian_apply(d0, 0.1, w10, c.frac), w10), 1e-7);

  const auto lap_table = kernel_table(KernelKind::frac_laplacian, 0.4, {1, 50}, c.frac);
  const auto int_table = kernel_table(KernelKind::frac_integral, 0.3, {0, 50}, c.frac);
  c.add("frac_laplacian_kernel_max", lap_table.values.maxCoeff(), -1e-300);
  c.add("frac_integral_kernel_negated_min", -int_table.values.minCoeff(), -1e-300);

  const double alpha = 0.25;
  const auto ratios = kernel_table(KernelKind::frac_integral, alpha, {64, 512}, c.frac);
  double ratio_err = 0.0;
  for (long m : {64L, 128L, 256L}) {
    ratio_err = std::max(ratio_err, std::abs(ratios(2 * m) / ratios(m) / std::pow(2.0, 2 * alpha - 1) - 1.0));
  }
  c.add("frac_integral_decay_ratio", ratio_err, 0.05);
}

void riesz_suite(const Context& c) {
  double coeff = 0.0;
  double imag = 0.0;
  for (long n = -5; n <= 5; ++n) {
    // riesz_coefficient_check subtracts +1/(pi(n+1/2)); the library kernel
    // has the opposite sign, so compare the quadrature against it directly.
    const Complex q = riesz_coefficient_check(n) + 1.0 / (kPi * (n + 0.5));
    coeff = std::max(coeff, std::abs(q.real() - riesz_kernel(n)));
    imag = std::max(imag, std::abs(q.imag()));
  }
  c.add("multiplier_coefficients_match_kernel", coeff, 1e-10);
  c.add("coefficients_real", imag, 1e-12);

  double tilde = 0.0;
  for (long m = -50; m <= 50; ++m) tilde = std::max(tilde, std::abs(riesz_tilde_kernel(m) + riesz_kernel(-m)));
  c.add("tilde_reflection", tilde, 0.0);

  const long big = 100000;
  const auto r = riesz_apply(RealSequence::delta(0), Parity::plus, Window::centered(big));
  const double tail = (1.0 / (big + 1.0) + 1.0 / big) / (kPi * kPi);
  c.add("l2_norm_delta", std::abs(std::sqrt(r.values().squaredNorm() + tail) - 1.0), 1e-6);

  std::mt19937_64 rng(3);
  const auto f = random_sequence(rng, -8, 17, -1.0, 1.0);
  const long n_win = 10000;
  const auto rf = riesz_apply(f, Parity::plus, Window::centered(n_win));
  const double mass = f.values().sum();
  const double rf_tail = mass * mass * 2.0 / (kPi * kPi * n_win);
  c.add("l2_isometry", std::abs(rf.values().squaredNorm() + rf_tail - f.values().squaredNorm()) / f.values().squaredNorm(),
        1e-5);

  const auto q0 = kernel_table(KernelKind::conj_poisson, 0.0, Window::centered(40), c.sub);
  double at_zero = 0.0;
  for (long m = -40; m <= 40; ++m) at_zero = std::max(at_zero, std::abs(q0(m) - riesz_kernel(m)));
  c.add("conjugate_kernel_at_t0", at_zero, 1e-8);

  const auto d0 = RealSequence::delta(0);
  const Window w10 = Window::centered(10);
  const auto rd = riesz_apply(d0, Parity::plus, w10);
  std::vector<double> gaps;
  for (double t : {1e-1, 1e-2, 1e-3}) gaps.push_back(max_diff(conjugate_poisson_apply(d0, t, Parity::plus, w10, c.sub), rd, w10));
  c.add("q_to_r_at_1e-3", gaps.back(), 1e-2);
  c.add("q_to_r_increase", std::max(gaps[1] - gaps[0], gaps[2] - gaps[1]), 0.0);

  const Window w20 = Window::centered(20);
  c.add("conjugate_route_agreement",
        max_diff(conjugate_poisson_apply(d0, 1.0, Parity::plus, w20, c.sub),
                 conjugate_poisson_apply(d0, 1.0, Parity::plus, w20, c.sub, ConjugateRoute::integral_of_DP), w20),
        1e-6);
}

void cauchy_riemann_suite(const Context& c) {
  const auto d0 = RealSequence::delta(0);
  const Window w10 = Window::centered(10);
  const auto r = cauchy_riemann_residual(d0, 1.0, w10, c.sub);
  c.add("dtQ_plus_DP", r.dq_plus_dp, 1e-6);
  c.add("DtildeQ_minus_dtP", r.dtilde_q_minus_dp, 1e-6);
  c.add("dtQtilde_plus_DtildeP", r.dq_tilde_plus_dp, 1e-6);
  c.add("DQtilde_minus_dtP", r.d_q_tilde_minus_dp, 1e-6);
  c.add("harmonic_P", harmonicity_residual(d0, 1.0, 1e-3, false, w10, c.sub), 1e-5);
  c.add("harmonic_Q", harmonicity_residual(d0, 1.0, 1e-3, true, w10, c.sub), 1e-5);
  c.add("zero_input", cauchy_riemann_residual(RealSequence(), 1.0, w10, c.sub).max(), 0.0);

  // Analytic time derivatives against centered differences.
  const double h = 1e-4;
  const auto pm = poisson_apply_many(d0, {1.0 - h, 1.0 + h}, w10, c.sub);
  const auto dp = poisson_time_derivative(d0, 1.0, w10, c.sub);
  double fd = 0.0;
  for (long n = w10.lo; n <= w10.hi; ++n) fd = std::max(fd, std::abs((pm[1](n) - pm[0](n)) / (2 * h) - dp(n)));
  c.add("dtP_finite_difference", fd, 1e-7);
}

void weights_suite(const Context& c) {
  const Window w = Window::centered(4096);
  const auto unit = power_weight(0.0, w);
  double unit_err = 0.0;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    unit_err = std::max(unit_err, std::abs(ap_constant(unit, p, dyadic_windows(12)) - 1.0));
    unit_err = std::max(unit_err, std::abs(ap_constant(unit, p, {{-3, 7}, {100, 100}, {-4000, 17}}) - 1.0));
  }
  c.add("unit_weight_exact", unit_err, 0.0);

  const auto heavy = power_weight(2.0, w);
  double prev = 0.0;
  double non_increase = 0.0;
  for (const auto& iv : dyadic_windows(12)) {
    const double a = ap_constant(heavy, 2.0, {iv});
    non_increase += a > prev ? 0.0 : 1.0;
    prev = a;
  }
  c.add("a2_power_2_increasing_violations", non_increase, 0.0);

  const auto mild = power_weight(0.5, w);
  c.add("a2_power_half", ap_constant(mild, 2.0, dyadic_windows(12)), 1.5);

  std::mt19937_64 rng(5);
  double triangle = -INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_sequence(rng, -20, 41, -1.0, 1.0);
    const auto g = random_sequence(rng, -10, 30, -1.0, 1.0);
    triangle = std::max(triangle, weighted_norm(f + g, mild, 2.0) - weighted_norm(f, mild, 2.0) - weighted_norm(g, mild, 2.0));
  }
  c.add("weighted_triangle_inequality", triangle, 1e-12);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bessel", "semigroup", "fractional", "riesz", "cauchy_riemann", "weights"};
  return names;
}

std::vector<Check> run(std::string_view suite, double quad_tol) {
  std::vector<Check> checks;
  auto one = [&](const std::string& name) {
    Context c{name, QuadratureSpec::subordination_default().with_tol(quad_tol),
              QuadratureSpec::fractional_default().with_tol(quad_tol), &checks};
    c.sub.validate();
    if (name == "bessel") bessel_suite(c);
    if (name == "semigroup") semigroup_suite(c);
    if (name == "fractional") fractional_suite(c);
    if (name == "riesz") riesz_suite(c);
    if (name == "cauchy_riemann") cauchy_riemann_suite(c);
    if (name == "weights") weights_suite(c);
  };
  if (suite == "all") {
    for (const auto& name : suite_names()) one(name);
    return checks;
  }
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw DomainError("unknown suite: " + std::string(suite));
  }
  one(std::string(suite));
  return checks;
}

std::string format(const Check& check) {
  char buf[64];
  std::string line = check.suite + " " + check.name + (check.pass() ? " PASS " : " FAIL ");
  std::snprintf(buf, sizeof(buf), "%.3e %.3e", check.observed, check.tolerance);
  return line + buf;
}

}  // namespace dharm::verify
