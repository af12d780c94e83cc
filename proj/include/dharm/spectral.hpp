#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>

#include "dharm/sequence.hpp"

/// Torus side: F f(theta) = sum_n f(n) e^{i n theta}, multipliers on the
/// fundamental domain [0, 2 pi), and inversion
/// T f(n) = (1/2 pi) int_0^{2 pi} m(theta) F f(theta) e^{-i n theta} dtheta.
namespace dharm {

enum class OperatorKind {
  identity,
  heat,
  poisson,
  forward_difference,
  backward_difference,
  laplacian,
  riesz,
  riesz_tilde,
  frac_laplacian,
  frac_integral,
  conj_poisson,
  conj_poisson_tilde,
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::identity;
  double param = 0.0;  // t, sigma or alpha

  void validate() const;
  /// True when the multiplier is a smooth periodic function (trapezoid is
  /// spectrally accurate).
  bool smooth() const;

  static OperatorSpec heat(double t) { return {OperatorKind::heat, t}; }
  static OperatorSpec poisson(double t) { return {OperatorKind::poisson, t}; }
  static OperatorSpec frac_laplacian(double sigma) { return {OperatorKind::frac_laplacian, sigma}; }
  static OperatorSpec frac_integral(double alpha) { return {OperatorKind::frac_integral, alpha}; }
  static OperatorSpec conj_poisson(double t) { return {OperatorKind::conj_poisson, t}; }
  static OperatorSpec conj_poisson_tilde(double t) { return {OperatorKind::conj_poisson_tilde, t}; }
};

std::string_view to_string(OperatorKind kind);
OperatorKind parse_operator_kind(std::string_view name);

template <typename Scalar>
Complex fourier_forward(const Sequence<Scalar>& f, double theta);

/// Multiplier at theta in [0, 2 pi).
Complex multiplier_eval(const OperatorSpec& op, double theta);

/// Same, with sin(theta/2) supplied by the caller (it is computed from the
/// distance to the nearer endpoint when theta is within rounding of 0 or 2 pi).
Complex multiplier_eval(const OperatorSpec& op, double theta, double half_sine);

struct OracleOptions {
  int nodes = 256;      // starting trapezoid count, power of two >= 256
  int max_nodes = 1 << 20;
  double tol = 1e-10;   // successive estimates differ by less than this
};

/// Multiplier as a function of (theta, sin(theta/2)).
using Multiplier = std::function<Complex(double, double)>;

/// Inversion integral on `window`. Smooth multipliers use the trapezoid rule
/// with node doubling; the others use tanh-sinh on [0, 2 pi], which handles
/// the jump and the |theta|^s behaviour at the endpoints.
template <typename Scalar>
ComplexSequence oracle_apply(const OperatorSpec& op, const Sequence<Scalar>& f, const Window& window,
                             const OracleOptions& options = {});

template <typename Scalar>
ComplexSequence oracle_apply(const Multiplier& m, bool smooth, const Sequence<Scalar>& f, const Window& window,
                             const OracleOptions& options = {});

/// Torus quadrature of (1/2 pi) int -i e^{-i theta/2} e^{-i n theta} minus
/// 1/(pi (n + 1/2)).
Complex riesz_coefficient_check(long n);

/// (1/2 pi) int |F f|^2 h(theta) dtheta, where h is the square-function time
/// integral int_0^inf (4 t sin^2(theta/2))^2 e^{-8 t sin^2(theta/2)} dt/t
/// evaluated in closed form.
template <typename Scalar>
double g_function_spectral(const Sequence<Scalar>& f);

}  // namespace dharm
