#pragma once

#include <vector>

#include "dharm/kernels.hpp"
#include "dharm/quadrature.hpp"
#include "dharm/sequence.hpp"

/// Operators on finitely supported sequences. Operators whose output has
/// infinite support are evaluated on an explicit output window.
namespace dharm {

enum class FractionalRoute { time_integral, kernel_sum };
enum class ConjugateRoute { kernel, integral_of_DP };
enum class MaximalKind { heat, poisson, conj_plus, conj_tilde };

/// Radius K(t) = ceil(2t + 40 sqrt(t + 1)) beyond which the heat kernel mass
/// is below 1e-12.
long heat_radius(double t);
/// Poisson-family padding 4 max(t, 1) + 40.
long poisson_radius(double t);
Window default_heat_window(const Window& support, double t);
Window default_poisson_window(const Window& support, double t);

template <typename Scalar>
Sequence<Scalar> forward_difference(const Sequence<Scalar>& f);
template <typename Scalar>
Sequence<Scalar> backward_difference(const Sequence<Scalar>& f);
template <typename Scalar>
Sequence<Scalar> discrete_laplacian(const Sequence<Scalar>& f);

template <typename Scalar>
Sequence<Scalar> heat_apply(const Sequence<Scalar>& f, double t, const Window& out);

template <typename Scalar>
Sequence<Scalar> poisson_apply(const Sequence<Scalar>& f, double t, const Window& out,
                               const QuadratureSpec& quad = QuadratureSpec::subordination_default());

/// P_t f for several times from one quadrature table.
template <typename Scalar>
std::vector<Sequence<Scalar>> poisson_apply_many(const Sequence<Scalar>& f, const std::vector<double>& times,
                                                 const Window& out,
                                                 const QuadratureSpec& quad = QuadratureSpec::subordination_default());

template <typename Scalar>
Sequence<Scalar> poisson_time_derivative(const Sequence<Scalar>& f, double t, const Window& out,
                                         const QuadratureSpec& quad = QuadratureSpec::subordination_default());

template <typename Scalar>
Sequence<Scalar> fractional_laplacian_apply(const Sequence<Scalar>& f, double sigma, const Window& out,
                                            const QuadratureSpec& quad = QuadratureSpec::fractional_default(),
                                            FractionalRoute route = FractionalRoute::time_integral);

template <typename Scalar>
Sequence<Scalar> fractional_integral_apply(const Sequence<Scalar>& f, double alpha, const Window& out,
                                           const QuadratureSpec& quad = QuadratureSpec::fractional_default());

template <typename Scalar>
Sequence<Scalar> riesz_apply(const Sequence<Scalar>& f, Parity parity, const Window& out);

template <typename Scalar>
Sequence<Scalar> conjugate_poisson_apply(const Sequence<Scalar>& f, double t, Parity parity, const Window& out,
                                         const QuadratureSpec& quad = QuadratureSpec::subordination_default(),
                                         ConjugateRoute route = ConjugateRoute::kernel);

/// Q_t f for several times from one quadrature table.
template <typename Scalar>
std::vector<Sequence<Scalar>> conjugate_poisson_apply_many(
    const Sequence<Scalar>& f, const std::vector<double>& times, Parity parity, const Window& out,
    const QuadratureSpec& quad = QuadratureSpec::subordination_default());

template <typename Scalar>
Sequence<Scalar> conjugate_poisson_time_derivative(const Sequence<Scalar>& f, double t, Parity parity,
                                                   const Window& out,
                                                   const QuadratureSpec& quad = QuadratureSpec::subordination_default());

/// g(f)(n) = (int_0^inf |t d/dt W_t f(n)|^2 dt/t)^{1/2}.
template <typename Scalar>
RealSequence square_function(const Sequence<Scalar>& f, const Window& out,
                             const QuadratureSpec& quad = QuadratureSpec::subordination_default());

/// Strictly increasing nonnegative times standing in for sup over t >= 0.
struct TimeGrid {
  std::vector<double> points;

  void validate() const;
  /// 0 followed by per_decade log-spaced points per decade on [lo, hi].
  static TimeGrid log_spaced(double lo = 1e-6, double hi = 1e6, int per_decade = 64, bool include_zero = true);
};

/// max over the grid of |T_t f(n)|; t = 0 contributes |f| (heat, Poisson)
/// or |R f| (conjugate kinds).
template <typename Scalar>
RealSequence maximal_apply(const Sequence<Scalar>& f, MaximalKind kind, const TimeGrid& grid, const Window& out,
                           const QuadratureSpec& quad = QuadratureSpec::subordination_default());

/// |d/dt W_t f(n) - Delta W_t f(n)| with the time derivative taken from the
/// Bessel recurrence.
template <typename Scalar>
double heat_equation_residual(const Sequence<Scalar>& f, double t, long n);

struct CauchyRiemannResidual {
  double dq_plus_dp = 0.0;        // |d_t Q f + D P f|
  double dtilde_q_minus_dp = 0.0; // |D~ Q f - d_t P f|
  double dq_tilde_plus_dp = 0.0;  // |d_t Q~ f + D~ P f|
  double d_q_tilde_minus_dp = 0.0;// |D Q~ f - d_t P f|

  double max() const;
};

template <typename Scalar>
CauchyRiemannResidual cauchy_riemann_residual(const Sequence<Scalar>& f, double t, const Window& window,
                                              const QuadratureSpec& quad = QuadratureSpec::subordination_default());

/// max over window of |d^2_tt T_t f + Delta T_t f| by a centered second
/// difference in t with step h; T is P (plus) or Q (plus parity).
double harmonicity_residual(const RealSequence& f, double t, double h, bool conjugate, const Window& window,
                            const QuadratureSpec& quad = QuadratureSpec::subordination_default());

/// (-Delta)^sigma f(n0) for f >= 0 with f(n0) = 0; the result is <= 0.
double maximum_principle_check(const RealSequence& f, double sigma, long n0,
                               const QuadratureSpec& quad = QuadratureSpec::fractional_default());

}  // namespace dharm
