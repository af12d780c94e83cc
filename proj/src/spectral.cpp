#include "dharm/spectral.hpp"

#include <cmath>
#include <numbers>

#include "dharm/errors.hpp"
#include "dharm/kernels.hpp"
#include "dharm/quadrature.hpp"

namespace dharm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

constexpr OperatorKind kAllKinds[] = {
    OperatorKind::identity,       OperatorKind::heat,          OperatorKind::poisson,
    OperatorKind::forward_difference, OperatorKind::backward_difference, OperatorKind::laplacian,
    OperatorKind::riesz,          OperatorKind::riesz_tilde,   OperatorKind::frac_laplacian,
    OperatorKind::frac_integral,  OperatorKind::conj_poisson,  OperatorKind::conj_poisson_tilde,
};

void check_options(const OracleOptions& o) {
  const bool pow2 = o.nodes > 0 && (o.nodes & (o.nodes - 1)) == 0;
  if (!pow2 || o.nodes < 256) throw DomainError("oracle_apply: nodes must be a power of two >= 256");
  if (!(o.tol > 0.0)) throw DomainError("oracle_apply: tol must be positive");
}

// Accumulates m(theta) F f(theta) e^{-i n theta} over the window.
template <typename Scalar>
Eigen::VectorXcd inversion_integrand(const Multiplier& m, const Sequence<Scalar>& f, const Window& window,
                                     double theta, double half_sine) {
  Eigen::VectorXcd out(window.size());
  const Complex value = m(theta, half_sine) * fourier_forward(f, theta);
  for (long n = window.lo; n <= window.hi; ++n) {
    out[n - window.lo] = value * std::polar(1.0, -static_cast<double>(n) * theta);
  }
  return out;
}

}  // namespace

void OperatorSpec::validate() const {
  switch (kind) {
    case OperatorKind::heat:
    case OperatorKind::poisson:
    case OperatorKind::conj_poisson:
    case OperatorKind::conj_poisson_tilde:
      check_time(param);
      break;
    case OperatorKind::frac_laplacian:
      check_sigma(param);
      break;
    case OperatorKind::frac_integral:
      check_alpha(param);
      break;
    default:
      break;
  }
}

bool OperatorSpec::smooth() const {
  switch (kind) {
    case OperatorKind::identity:
    case OperatorKind::heat:
    case OperatorKind::forward_difference:
    case OperatorKind::backward_difference:
    case OperatorKind::laplacian:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::identity: return "identity";
    case OperatorKind::heat: return "heat";
    case OperatorKind::poisson: return "poisson";
    case OperatorKind::forward_difference: return "D";
    case OperatorKind::backward_difference: return "Dtilde";
    case OperatorKind::laplacian: return "laplacian";
    case OperatorKind::riesz: return "riesz";
    case OperatorKind::riesz_tilde: return "riesz_tilde";
    case OperatorKind::frac_laplacian: return "frac_laplacian";
    case OperatorKind::frac_integral: return "frac_integral";
    case OperatorKind::conj_poisson: return "conj_poisson";
    case OperatorKind::conj_poisson_tilde: return "conj_poisson_tilde";
  }
  return "?";
}

OperatorKind parse_operator_kind(std::string_view name) {
  for (auto k : kAllKinds) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown operator: " + std::string(name));
}

template <typename Scalar>
Complex fourier_forward(const Sequence<Scalar>& f, double theta) {
  Complex sum(0.0);
  for (long n = f.lo(); n <= f.hi(); ++n) sum += f(n) * std::polar(1.0, static_cast<double>(n) * theta);
  return sum;
}

Complex multiplier_eval(const OperatorSpec& op, double theta, double s) {
  op.validate();
  if (s < 0.0) throw DomainError("multiplier_eval: sin(theta/2) must be >= 0 on [0, 2 pi)");
  const double t = op.param;
  switch (op.kind) {
    case OperatorKind::identity: return 1.0;
    case OperatorKind::heat: return std::exp(-4.0 * t * s * s);
    case OperatorKind::poisson: return std::exp(-2.0 * t * s);
    case OperatorKind::forward_difference: return std::polar(1.0, -theta) - 1.0;
    case OperatorKind::backward_difference: return 1.0 - std::polar(1.0, theta);
    case OperatorKind::laplacian: return -4.0 * s * s;
    case OperatorKind::riesz: return -kI * std::polar(1.0, -0.5 * theta);
    case OperatorKind::riesz_tilde: return -kI * std::polar(1.0, 0.5 * theta);
    case OperatorKind::frac_laplacian: return s == 0.0 ? 0.0 : std::pow(2.0 * s, 2.0 * op.param);
    case OperatorKind::frac_integral:
      return s == 0.0 ? std::numeric_limits<double>::infinity() : std::pow(2.0 * s, -2.0 * op.param);
    case OperatorKind::conj_poisson: return -kI * std::polar(1.0, -0.5 * theta) * std::exp(-2.0 * t * s);
    case OperatorKind::conj_poisson_tilde: return -kI * std::polar(1.0, 0.5 * theta) * std::exp(-2.0 * t * s);
  }
  throw DomainError("multiplier_eval: unknown operator");
}

Complex multiplier_eval(const OperatorSpec& op, double theta) {
  if (!(theta >= 0.0 && theta < kTwoPi)) throw DomainError("multiplier_eval: theta must lie in [0, 2 pi)");
  return multiplier_eval(op, theta, std::sin(0.5 * theta));
}

template <typename Scalar>
ComplexSequence oracle_apply(const Multiplier& m, bool smooth, const Sequence<Scalar>& f, const Window& window,
                             const OracleOptions& options) {
  check_options(options);
  if (window.empty()) return ComplexSequence();
  if (!smooth) {
    auto integrand = [&](const quad::Point& p) {
      const double s = std::sin(0.5 * std::min(p.from_lo, p.from_hi));
      return inversion_integrand(m, f, window, p.x, s);
    };
    // Tanh-sinh successive levels differ by roughly the square of the error,
    // so the stopping test on the difference is conservative.
    Eigen::VectorXcd v = quad::tanh_sinh(integrand, 0.0, kTwoPi, options.tol, 12);
    return ComplexSequence(window.lo, v / kTwoPi);
  }

  // Trapezoid with doubling; the new nodes of each level are the odd ones.
  long n_nodes = options.nodes;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(window.size());
  for (long j = 0; j < n_nodes; ++j) {
    const double theta = kTwoPi * j / n_nodes;
    sum += inversion_integrand(m, f, window, theta, std::sin(0.5 * theta));
  }
  Eigen::VectorXcd estimate = sum / static_cast<double>(n_nodes);
  double achieved = 0.0;
  while (2 * n_nodes <= options.max_nodes) {
    n_nodes *= 2;
    for (long j = 1; j < n_nodes; j += 2) {
      const double theta = kTwoPi * j / n_nodes;
      sum += inversion_integrand(m, f, window, theta, std::sin(0.5 * theta));
    }
    Eigen::VectorXcd next = sum / static_cast<double>(n_nodes);
    achieved = (next - estimate).cwiseAbs().maxCoeff();
    estimate = next;
    if (achieved < options.tol) return ComplexSequence(window.lo, estimate);
  }
  throw NumericError("oracle_apply: trapezoid budget exhausted", achieved);
}

template <typename Scalar>
ComplexSequence oracle_apply(const OperatorSpec& op, const Sequence<Scalar>& f, const Window& window,
                             const OracleOptions& options) {
  op.validate();
  Multiplier m = [op](double theta, double s) { return multiplier_eval(op, theta, s); };
  return oracle_apply(m, op.smooth(), f, window, options);
}

Complex riesz_coefficient_check(long n) {
  auto integrand = [n](const quad::Point& p) {
    return -kI * std::polar(1.0, -0.5 * p.x) * std::polar(1.0, -static_cast<double>(n) * p.x);
  };
  const Complex coeff = quad::tanh_sinh(integrand, 0.0, kTwoPi, 1e-14, 12) / kTwoPi;
  return coeff - 1.0 / (std::numbers::pi * (static_cast<double>(n) + 0.5));
}

template <typename Scalar>
double g_function_spectral(const Sequence<Scalar>& f) {
  // |F f|^2 is a trigonometric polynomial of degree < size(f); the midpoint
  // rule with more nodes than that is exact, and avoids theta = 0 where the
  // time integral vanishes.
  const long n_nodes = std::max<long>(4096, 4 * f.size());
  double sum = 0.0;
  for (long j = 0; j < n_nodes; ++j) {
    const double theta = kTwoPi * (j + 0.5) / n_nodes;
    const double s = std::sin(0.5 * theta);
    const double a = 4.0 * s * s;
    // int_0^inf t a^2 e^{-2 a t} dt = a^2 / (2a)^2
    const double h = a == 0.0 ? 0.0 : (a * a) / (4.0 * a * a);
    sum += std::norm(fourier_forward(f, theta)) * h;
  }
  return sum / static_cast<double>(n_nodes);
}

template Complex fourier_forward(const Sequence<double>&, double);
template Complex fourier_forward(const Sequence<Complex>&, double);
template ComplexSequence oracle_apply(const OperatorSpec&, const Sequence<double>&, const Window&, const OracleOptions&);
template ComplexSequence oracle_apply(const OperatorSpec&, const Sequence<Complex>&, const Window&,
                                      const OracleOptions&);
template ComplexSequence oracle_apply(const Multiplier&, bool, const Sequence<double>&, const Window&,
                                      const OracleOptions&);
template ComplexSequence oracle_apply(const Multiplier&, bool, const Sequence<Complex>&, const Window&,
                                      const OracleOptions&);
template double g_function_spectral(const Sequence<double>&);
template double g_function_spectral(const Sequence<Complex>&);

}  // namespace dharm
