#include "dharm/operators.hpp"

#include <algorithm>
#include <cmath>

#include "dharm/bessel.hpp"
#include "dharm/errors.hpp"
#include "dharm/heat_moments.hpp"

namespace dharm {

namespace {

template <typename Scalar>
Sequence<Scalar> nonempty(const Sequence<Scalar>& f, const Window& out) {
  return f.empty() ? Sequence<Scalar>::zeros({out.lo, out.lo}) : f;
}

// out(n) = sum_m K(n - m) f(m) with K given on a window of separations.
template <typename Scalar, typename Kernel>
Sequence<Scalar> convolve(const Sequence<Scalar>& f, const Window& out, Kernel&& kernel) {
  Sequence<Scalar> result = Sequence<Scalar>::zeros(out);
  for (long n = out.lo; n <= out.hi; ++n) {
    Scalar acc(0);
    for (long m = f.lo(); m <= f.hi(); ++m) acc += kernel(n - m) * f(m);
    result.ref(n) = acc;
  }
  return result;
}

Window separations(const Window& out, const Window& in) { return {out.lo - in.hi, out.hi - in.lo}; }

template <typename Scalar>
Sequence<Scalar> difference(const Sequence<Scalar>& f, Parity parity) {
  return parity == Parity::plus ? forward_difference(f) : backward_difference(f);
}

template <typename Scalar>
double sup_abs(const Sequence<Scalar>& f) {
  return f.empty() ? 0.0 : f.values().cwiseAbs().maxCoeff();
}

void check_window(const Window& out) {
  if (out.empty()) throw DomainError("output window is empty");
}

}  // namespace

long heat_radius(double t) {
  check_time(t);
  return static_cast<long>(std::ceil(2.0 * t + 40.0 * std::sqrt(t + 1.0)));
}

long poisson_radius(double t) {
  check_time(t);
  return static_cast<long>(std::ceil(4.0 * std::max(t, 1.0) + 40.0));
}

Window default_heat_window(const Window& support, double t) {
  return (support.empty() ? Window{0, 0} : support).dilated(heat_radius(t));
}

Window default_poisson_window(const Window& support, double t) {
  return (support.empty() ? Window{0, 0} : support).dilated(poisson_radius(t));
}

template <typename Scalar>
Sequence<Scalar> forward_difference(const Sequence<Scalar>& f) {
  if (f.empty()) return f;
  const Window w{f.lo() - 1, f.hi()};
  Sequence<Scalar> out = Sequence<Scalar>::zeros(w);
  for (long n = w.lo; n <= w.hi; ++n) out.ref(n) = f(n + 1) - f(n);
  return out;
}

template <typename Scalar>
Sequence<Scalar> backward_difference(const Sequence<Scalar>& f) {
  if (f.empty()) return f;
  const Window w{f.lo(), f.hi() + 1};
  Sequence<Scalar> out = Sequence<Scalar>::zeros(w);
  for (long n = w.lo; n <= w.hi; ++n) out.ref(n) = f(n) - f(n - 1);
  return out;
}

template <typename Scalar>
Sequence<Scalar> discrete_laplacian(const Sequence<Scalar>& f) {
  if (f.empty()) return f;
  const Window w = f.window().dilated(1);
  Sequence<Scalar> out = Sequence<Scalar>::zeros(w);
  for (long n = w.lo; n <= w.hi; ++n) out.ref(n) = f(n + 1) - 2.0 * f(n) + f(n - 1);
  return out;
}

template <typename Scalar>
Sequence<Scalar> heat_apply(const Sequence<Scalar>& f, double t, const Window& out) {
  check_time(t);
  check_window(out);
  if (f.empty()) return Sequence<Scalar>::zeros(out);
  const auto row = bessel::scaled_bessel_row(t, max_separation(out, f.window()));
  return convolve(f, out, [&](long k) { return row(k); });
}

template <typename Scalar>
std::vector<Sequence<Scalar>> poisson_apply_many(const Sequence<Scalar>& f, const std::vector<double>& times,
                                                 const Window& out, const QuadratureSpec& quad) {
  check_window(out);
  std::vector<std::vector<MomentTerm>> batches;
  for (double t : times) {
    check_time(t);
    if (t > 0.0) batches.push_back(subordination::poisson(t));
  }
  std::vector<Vector<Scalar>> values;
  if (!batches.empty()) values = heat_moments(nonempty(f, out), out, batches, false, quad);
  std::vector<Sequence<Scalar>> result;
  std::size_t b = 0;
  for (double t : times) {
    if (t == 0.0) {
      result.push_back(f.on(out));
    } else {
      result.emplace_back(out.lo, values[b++]);
    }
  }
  return result;
}

template <typename Scalar>
Sequence<Scalar> poisson_apply(const Sequence<Scalar>& f, double t, const Window& out, const QuadratureSpec& quad) {
  return poisson_apply_many(f, {t}, out, quad)[0];
}

template <typename Scalar>
Sequence<Scalar> poisson_time_derivative(const Sequence<Scalar>& f, double t, const Window& out,
                                         const QuadratureSpec& quad) {
  check_time(t);
  check_window(out);
  if (t == 0.0) throw DomainError("poisson_time_derivative: t must be > 0");
  return Sequence<Scalar>(out.lo, heat_moments(nonempty(f, out), out, {subordination::poisson_dt(t)}, false, quad)[0]);
}

template <typename Scalar>
Sequence<Scalar> fractional_laplacian_apply(const Sequence<Scalar>& f, double sigma, const Window& out,
                                            const QuadratureSpec& quad, FractionalRoute route) {
  check_sigma(sigma);
  check_window(out);
  if (f.empty()) return Sequence<Scalar>::zeros(out);
  if (route == FractionalRoute::time_integral) {
    return Sequence<Scalar>(out.lo,
                            heat_moments(f, out, {subordination::fractional_laplacian(sigma)}, true, quad)[0]);
  }
  // Off-diagonal kernel values plus the diagonal entry of the table, which
  // kernel_table takes from the time integral on delta_0.
  const auto table = kernel_table(KernelKind::frac_laplacian, sigma, separations(out, f.window()), quad);
  return convolve(f, out, [&](long k) { return table(k); });
}

template <typename Scalar>
Sequence<Scalar> fractional_integral_apply(const Sequence<Scalar>& f, double alpha, const Window& out,
                                           const QuadratureSpec& quad) {
  check_alpha(alpha);
  check_window(out);
  if (f.empty()) return Sequence<Scalar>::zeros(out);
  return Sequence<Scalar>(out.lo, heat_moments(f, out, {subordination::fractional_integral(alpha)}, false, quad)[0]);
}

template <typename Scalar>
Sequence<Scalar> riesz_apply(const Sequence<Scalar>& f, Parity parity, const Window& out) {
  check_window(out);
  if (f.empty()) return Sequence<Scalar>::zeros(out);
  if (parity == Parity::plus) return convolve(f, out, [](long k) { return riesz_kernel(k); });
  return convolve(f, out, [](long k) { return riesz_tilde_kernel(k); });
}

template <typename Scalar>
std::vector<Sequence<Scalar>> conjugate_poisson_apply_many(const Sequence<Scalar>& f, const std::vector<double>& times,
                                                           Parity parity, const Window& out,
                                                           const QuadratureSpec& quad) {
  check_window(out);
  std::vector<std::vector<MomentTerm>> batches;
  for (double t : times) {
    check_time(t);
    batches.push_back(subordination::conjugate(t));
  }
  std::vector<Sequence<Scalar>> result;
  if (f.empty()) {
    result.assign(times.size(), Sequence<Scalar>::zeros(out));
    return result;
  }
  const auto values = heat_moments(difference(f, parity), out, batches, false, quad);
  for (const auto& v : values) result.emplace_back(out.lo, v);
  return result;
}

template <typename Scalar>
Sequence<Scalar> conjugate_poisson_apply(const Sequence<Scalar>& f, double t, Parity parity, const Window& out,
                                         const QuadratureSpec& quad, ConjugateRoute route) {
  check_time(t);
  check_window(out);
  if (f.empty()) return Sequence<Scalar>::zeros(out);
  if (route == ConjugateRoute::kernel) {
    const auto kind = parity == Parity::plus ? KernelKind::conj_poisson : KernelKind::conj_poisson_tilde;
    const auto table = kernel_table(kind, t, separations(out, f.window()), quad);
    return convolve(f, out, [&](long k) { return table(k); });
  }

  // Q_t f = R f - int_0^t D P_s f ds, Gauss-Legendre in s with panel doubling.
  const Sequence<Scalar> rf = riesz_apply(f, parity, out);
  if (t == 0.0) return rf;
  const Sequence<Scalar> g = difference(f, parity);
  auto integral = [&](int panels) {
    const auto rule = quad::composite_gauss_legendre(0.0, t, t / panels, quad.nodes);
    std::vector<std::vector<MomentTerm>> batches;
    for (double s : rule.nodes) batches.push_back(subordination::poisson(s));
    const auto values = heat_moments(g, out, batches, false, quad);
    Vector<Scalar> acc = Vector<Scalar>::Zero(out.size());
    for (std::size_t i = 0; i < values.size(); ++i) acc += rule.weights[i] * values[i];
    return acc;
  };
  int panels = std::max(1, static_cast<int>(std::ceil(t)));
  Vector<Scalar> previous = integral(panels);
  double achieved = 0.0;
  for (int level = 0; level < 4; ++level) {
    panels *= 2;
    Vector<Scalar> current = integral(panels);
    const double scale = std::max(sup_abs(rf), current.cwiseAbs().maxCoeff());
    achieved = (current - previous).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);
    if (achieved <= 10.0 * quad.rel_tol) return Sequence<Scalar>(out.lo, rf.values() - current);
    previous = std::move(current);
  }
  throw NumericError("conjugate_poisson_apply: time integral of D P_s did not converge", achieved);
}

template <typename Scalar>
Sequence<Scalar> conjugate_poisson_time_derivative(const Sequence<Scalar>& f, double t, Parity parity,
                                                   const Window& out, const QuadratureSpec& quad) {
  check_time(t);
  check_window(out);
  if (t == 0.0) throw DomainError("conjugate_poisson_time_derivative: t must be > 0");
  if (f.empty()) return Sequence<Scalar>::zeros(out);
  return Sequence<Scalar>(out.lo,
                          heat_moments(difference(f, parity), out, {subordination::conjugate_dt(t)}, false, quad)[0]);
}

template <typename Scalar>
RealSequence square_function(const Sequence<Scalar>& f, const Window& out, const QuadratureSpec& quad) {
  check_window(out);
  if (f.empty()) return RealSequence::zeros(out);
  Eigen::VectorXd g2 = heat_quadratic_moment(discrete_laplacian(f), out, quad);
  return RealSequence(out.lo, g2.cwiseMax(0.0).cwiseSqrt());
}

void TimeGrid::validate() const {
  if (points.empty()) throw DomainError("TimeGrid: empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0) || !std::isfinite(points[i])) throw DomainError("TimeGrid: points must be finite, >= 0");
    if (i > 0 && !(points[i] > points[i - 1])) throw DomainError("TimeGrid: points must increase strictly");
  }
}

TimeGrid TimeGrid::log_spaced(double lo, double hi, int per_decade, bool include_zero) {
  if (!(lo > 0.0 && hi > lo) || per_decade < 1) throw DomainError("TimeGrid::log_spaced: bad range");
  TimeGrid grid;
  if (include_zero) grid.points.push_back(0.0);
  const long count = std::lround(std::log10(hi / lo) * per_decade);
  for (long k = 0; k <= count; ++k) grid.points.push_back(lo * std::pow(10.0, static_cast<double>(k) / per_decade));
  return grid;
}

template <typename Scalar>
RealSequence maximal_apply(const Sequence<Scalar>& f, MaximalKind kind, const TimeGrid& grid, const Window& out,
                           const QuadratureSpec& quad) {
  grid.validate();
  check_window(out);
  Eigen::VectorXd sup = Eigen::VectorXd::Zero(out.size());
  auto absorb = [&](const Sequence<Scalar>& s) { sup = sup.cwiseMax(s.on(out).values().cwiseAbs()); };
  if (f.empty()) return RealSequence(out.lo, sup);

  std::vector<double> positive;
  for (double t : grid.points) {
    if (t > 0.0) positive.push_back(t);
  }
  const bool has_zero = grid.points.front() == 0.0;

  switch (kind) {
    case MaximalKind::heat:
      for (double t : grid.points) absorb(heat_apply(f, t, out));
      break;
    case MaximalKind::poisson:
      if (has_zero) absorb(f.on(out));
      if (!positive.empty()) {
        for (const auto& s : poisson_apply_many(f, positive, out, quad)) absorb(s);
      }
      break;
    case MaximalKind::conj_plus:
    case MaximalKind::conj_tilde: {
      const Parity parity = kind == MaximalKind::conj_plus ? Parity::plus : Parity::tilde;
      if (has_zero) absorb(riesz_apply(f, parity, out));
      if (!positive.empty()) {
        for (const auto& s : conjugate_poisson_apply_many(f, positive, parity, out, quad)) absorb(s);
      }
      break;
    }
  }
  return RealSequence(out.lo, sup);
}

template <typename Scalar>
double heat_equation_residual(const Sequence<Scalar>& f, double t, long n) {
  check_time(t);
  if (t == 0.0) throw DomainError("heat_equation_residual: t must be > 0");
  if (f.empty()) return 0.0;
  const Window w{n - 1, n + 1};
  const auto row = bessel::scaled_bessel_row(t, max_separation(w, f.window()) + 1);
  Scalar dt(0);
  for (long m = f.lo(); m <= f.hi(); ++m) {
    const long k = n - m;
    dt += (row(k + 1) - 2.0 * row(k) + row(k - 1)) * f(m);
  }
  const auto u = heat_apply(f, t, w);
  const Scalar lap = u(n + 1) - 2.0 * u(n) + u(n - 1);
  return std::abs(dt - lap);
}

double CauchyRiemannResidual::max() const {
  return std::max({dq_plus_dp, dtilde_q_minus_dp, dq_tilde_plus_dp, d_q_tilde_minus_dp});
}

template <typename Scalar>
CauchyRiemannResidual cauchy_riemann_residual(const Sequence<Scalar>& f, double t, const Window& window,
                                              const QuadratureSpec& quad) {
  check_time(t);
  if (t == 0.0) throw DomainError("cauchy_riemann_residual: t must be > 0");
  check_window(window);
  CauchyRiemannResidual r;
  if (f.empty()) return r;
  const Window wide = window.dilated(1);
  const auto p = poisson_apply(f, t, wide, quad);
  const auto dp = poisson_time_derivative(f, t, window, quad);
  const auto q = conjugate_poisson_apply(f, t, Parity::plus, wide, quad);
  const auto qt = conjugate_poisson_apply(f, t, Parity::tilde, wide, quad);
  const auto dq = conjugate_poisson_time_derivative(f, t, Parity::plus, window, quad);
  const auto dqt = conjugate_poisson_time_derivative(f, t, Parity::tilde, window, quad);
  for (long n = window.lo; n <= window.hi; ++n) {
    r.dq_plus_dp = std::max(r.dq_plus_dp, std::abs(dq(n) + (p(n + 1) - p(n))));
    r.dtilde_q_minus_dp = std::max(r.dtilde_q_minus_dp, std::abs((q(n) - q(n - 1)) - dp(n)));
    r.dq_tilde_plus_dp = std::max(r.dq_tilde_plus_dp, std::abs(dqt(n) + (p(n) - p(n - 1))));
    r.d_q_tilde_minus_dp = std::max(r.d_q_tilde_minus_dp, std::abs((qt(n + 1) - qt(n)) - dp(n)));
  }
  return r;
}

double harmonicity_residual(const RealSequence& f, double t, double h, bool conjugate, const Window& window,
                            const QuadratureSpec& quad) {
  if (!(t > h && h > 0.0)) throw DomainError("harmonicity_residual: need t > h > 0");
  check_window(window);
  if (f.empty()) return 0.0;
  const Window wide = window.dilated(1);
  const std::vector<double> times{t - h, t, t + h};
  const auto u = conjugate ? conjugate_poisson_apply_many(f, times, Parity::plus, wide, quad)
                           : poisson_apply_many(f, times, wide, quad);
  double worst = 0.0;
  for (long n = window.lo; n <= window.hi; ++n) {
    const double dtt = (u[2](n) - 2.0 * u[1](n) + u[0](n)) / (h * h);
    const double lap = u[1](n + 1) - 2.0 * u[1](n) + u[1](n - 1);
    worst = std::max(worst, std::abs(dtt + lap));
  }
  return worst;
}

double maximum_principle_check(const RealSequence& f, double sigma, long n0, const QuadratureSpec& quad) {
  check_sigma(sigma);
  for (long n = f.lo(); n <= f.hi(); ++n) {
    if (f(n) < 0.0) throw ContractError("maximum_principle_check: f must be nonnegative");
  }
  if (f(n0) != 0.0) throw ContractError("maximum_principle_check: f(n0) must vanish");
  const RealSequence g = f.trimmed();
  if (g.empty()) return 0.0;
  return fractional_laplacian_apply(g, sigma, {n0, n0}, quad, FractionalRoute::kernel_sum)(n0);
}

#define DHARM_INSTANTIATE(S)                                                                                     \
  template Sequence<S> forward_difference(const Sequence<S>&);                                                  \
  template Sequence<S> backward_difference(const Sequence<S>&);                                                 \
  template Sequence<S> discrete_laplacian(const Sequence<S>&);                                                  \
  template Sequence<S> heat_apply(const Sequence<S>&, double, const Window&);                                   \
  template Sequence<S> poisson_apply(const Sequence<S>&, double, const Window&, const QuadratureSpec&);         \
  template std::vector<Sequence<S>> poisson_apply_many(const Sequence<S>&, const std::vector<double>&,          \
                                                       const Window&, const QuadratureSpec&);                   \
  template Sequence<S> poisson_time_derivative(const Sequence<S>&, double, const Window&, const QuadratureSpec&); \
  template Sequence<S> fractional_laplacian_apply(const Sequence<S>&, double, const Window&,                    \
                                                  const QuadratureSpec&, FractionalRoute);                      \
  template Sequence<S> fractional_integral_apply(const Sequence<S>&, double, const Window&,                     \
                                                 const QuadratureSpec&);                                        \
  template Sequence<S> riesz_apply(const Sequence<S>&, Parity, const Window&);                                  \
  template Sequence<S> conjugate_poisson_apply(const Sequence<S>&, double, Parity, const Window&,               \
                                               const QuadratureSpec&, ConjugateRoute);                          \
  template std::vector<Sequence<S>> conjugate_poisson_apply_many(const Sequence<S>&, const std::vector<double>&, \
                                                                 Parity, const Window&, const QuadratureSpec&); \
  template Sequence<S> conjugate_poisson_time_derivative(const Sequence<S>&, double, Parity, const Window&,      \
                                                         const QuadratureSpec&);                                \
  template RealSequence square_function(const Sequence<S>&, const Window&, const QuadratureSpec&);              \
  template RealSequence maximal_apply(const Sequence<S>&, MaximalKind, const TimeGrid&, const Window&,          \
                                      const QuadratureSpec&);                                                   \
  template double heat_equation_residual(const Sequence<S>&, double, long);                                     \
  template CauchyRiemannResidual cauchy_riemann_residual(const Sequence<S>&, double, const Window&,             \
                                                         const QuadratureSpec&);

DHARM_INSTANTIATE(double)
DHARM_INSTANTIATE(Complex)

#undef DHARM_INSTANTIATE

}  // namespace dharm
