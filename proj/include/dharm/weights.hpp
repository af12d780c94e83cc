#pragma once

#include <Eigen/Core>

#include <vector>

#include "dharm/sequence.hpp"

/// Discrete Muckenhoupt diagnostics.
namespace dharm {

struct Weight {
  Window window;
  Eigen::VectorXd values;  // values[i] = w(window.lo + i) > 0
  double p = 2.0;

  void validate() const;
  double operator()(long n) const { return values[n - window.lo]; }
};

/// Largest A_p characteristic over the given intervals [M, N]:
///   p > 1: (sum w)(sum w^{-1/(p-1)})^{p-1} / (N - M + 1)^p
///   p = 1: (sum w) / (N - M + 1) * max w^{-1}
double ap_constant(const Weight& w, double p, const std::vector<Window>& intervals);

/// (sum |f(n)|^p w(n))^{1/p}; supp f must lie in w.window.
template <typename Scalar>
double weighted_norm(const Sequence<Scalar>& f, const Weight& w, double p);

/// w(n) = (|n| + 1)^a on `window`.
Weight power_weight(double a, const Window& window, double p = 2.0);

/// [-2^j, 2^j] for j = 0..jmax.
std::vector<Window> dyadic_windows(int jmax);

}  // namespace dharm
