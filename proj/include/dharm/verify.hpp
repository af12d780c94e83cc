#pragma once

#include <string>
#include <string_view>
#include <vector>

/// Invariant suites behind `dharm verify`.
namespace dharm::verify {

struct Check {
  std::string suite;
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;

  /// A check passes when observed <= tolerance.
  bool pass() const { return observed <= tolerance; }
};

/// bessel, semigroup, fractional, riesz, cauchy_riemann, weights
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". quad_tol is the quadrature
/// rel_tol used by the integral-defined operators.
std::vector<Check> run(std::string_view suite, double quad_tol = 1e-12);

/// "SUITE CHECK PASS|FAIL observed tolerance"
std::string format(const Check& check);

}  // namespace dharm::verify
