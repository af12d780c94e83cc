#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dharm/errors.hpp"

namespace dharm {

enum class QuadFamily { subordination, fractional_time, torus };
enum class DomainTransform { log_map, peak_split, none };

/// Quadrature contract shared by the three integral families: subordination
/// integrals in the Poisson variable, fractional time integrals, and torus
/// inversion integrals. `nodes` is the Gauss order per panel for the time
/// families and the starting node count on the torus.
struct QuadratureSpec {
  QuadFamily family = QuadFamily::subordination;
  DomainTransform transform = DomainTransform::log_map;
  int nodes = 16;
  double rel_tol = 1e-12;

  void validate() const;

  static QuadratureSpec subordination_default() { return {}; }
  static QuadratureSpec fractional_default() {
    return {QuadFamily::fractional_time, DomainTransform::peak_split, 16, 1e-12};
  }
  static QuadratureSpec torus_default() { return {QuadFamily::torus, DomainTransform::none, 16, 1e-13}; }

  QuadratureSpec with_tol(double tol) const {
    QuadratureSpec q = *this;
    q.rel_tol = tol;
    return q;
  }
};

namespace quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
const Rule& gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with panels of width at most `panel`.
Rule composite_gauss_legendre(double a, double b, double panel, int n);

/// Tanh-sinh node on [a, b]. The distances to both endpoints are carried
/// separately because they are known to full relative precision even when
/// the node itself rounds onto an endpoint.
struct Point {
  double x;
  double weight;
  double from_lo;
  double from_hi;
};

/// Nodes of level `level` (step 2^-level). With `odd_only` only the nodes
/// not present at the previous level are produced.
std::vector<Point> tanh_sinh_nodes(double a, double b, int level, bool odd_only);

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

/// Tanh-sinh integral of f(Point) over [a, b]; levels are refined until two
/// successive estimates agree to rel_tol (in the max norm for vectors).
template <typename F>
auto tanh_sinh(F&& f, double a, double b, double rel_tol, int max_level = 10) {
  using R = std::decay_t<decltype(f(Point{}))>;
  auto accumulate = [&](int level, bool odd_only) {
    const auto pts = tanh_sinh_nodes(a, b, level, odd_only);
    R sum = f(pts.front()) * pts.front().weight;
    for (std::size_t i = 1; i < pts.size(); ++i) sum += f(pts[i]) * pts[i].weight;
    return sum;
  };
  double h = 1.0;
  R estimate = accumulate(0, false) * h;
  double achieved = 0.0;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    R next = estimate * 0.5 + accumulate(level, true) * h;
    const double scale = magnitude(next);
    achieved = magnitude(R(next - estimate)) / (scale > 0 ? scale : 1.0);
    estimate = next;
    if (level >= 3 && (achieved <= rel_tol || scale == 0.0)) return estimate;
  }
  throw NumericError("tanh-sinh quadrature did not converge", achieved);
}

}  // namespace quad
}  // namespace dharm
