#pragma once

#include <Eigen/Core>

#include <vector>

#include "dharm/quadrature.hpp"

/// Scaled modified Bessel functions G(k,t) = e^{-2t} I_k(2t) on the integer
/// lattice, and independent oracles for the identities they satisfy.
namespace dharm::bessel {

/// G(k,t) for k = -radius..radius at one time t.
struct ScaledBesselRow {
  double t = 0.0;
  long radius = 0;
  Eigen::VectorXd values;  // values[k + radius] = G(k,t)

  double operator()(long k) const { return values[k + radius]; }
  double sum() const { return values.sum(); }
};

/// Truncation control for the power series of I_k.
struct SeriesBudget {
  int max_terms = 4000;
  double rel_tol = 1e-17;

  void validate() const;
};

/// G(k,t) = e^{-2t} I_k(2t). Exactly symmetric in k.
double scaled_bessel(long k, double t);

/// All of G(-radius..radius, t) from a single recurrence pass.
ScaledBesselRow scaled_bessel_row(double t, long radius);

/// I_k(t) by direct summation of the power series (test oracle).
double bessel_series_oracle(long k, double t, const SeriesBudget& budget = {});

/// e^{-|t|} I_k(t) by the same series, summed in the log domain so that large
/// arguments do not overflow.
double scaled_bessel_series_oracle(long k, double t, const SeriesBudget& budget = {});

/// I_nu(z) from Schlafli's Poisson-type integral, nu > -1/2, z > 0.
double schlafli_oracle(double nu, double z, const QuadratureSpec& quad = QuadratureSpec::torus_default());

/// Forward difference of order 1, 2 or 3 in the order nu of I_nu(z),
/// evaluated from single-integral representations (no subtraction of
/// Bessel values).
double schlafli_difference_oracle(double nu, double z, int order,
                                  const QuadratureSpec& quad = QuadratureSpec::torus_default());

/// d/dt G(k,t) = G(k+1,t) - 2G(k,t) + G(k-1,t).
double heat_time_derivative(long k, double t);

/// |I_k(t) e^{-t} sqrt(2 pi t) - 1|; requires t >= 100 max(1, k^2).
double asymptotic_check(long k, double t);

/// Coefficients a_0..a_{count-1} of the large-argument expansion
///   e^{-x} I_k(x) ~ (2 pi x)^{-1/2} sum_j (-1)^j a_j(k) x^{-j}.
std::vector<double> hankel_coefficients(long k, int count);

/// Smallest time at which scaled_bessel_row switches to the large-argument
/// expansion for the given radius.
double hankel_threshold(long radius);

}  // namespace dharm::bessel
