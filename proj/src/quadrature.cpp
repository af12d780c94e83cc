#include "dharm/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace dharm {

void QuadratureSpec::validate() const {
  if (nodes < 8) throw DomainError("QuadratureSpec: nodes must be >= 8");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-4)) throw DomainError("QuadratureSpec: rel_tol must lie in (0, 1e-4]");
}

namespace quad {

namespace {

Rule golub_welsch(int n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = 2.0 * v0 * v0;
  }
  // Polish nodes with Newton on P_n; the eigen solver leaves ~1e-15 errors.
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    double dp = 1.0;
    for (int it = 0; it < 3; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const Rule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const Rule>(golub_welsch(n));
  return *slot;
}

Rule composite_gauss_legendre(double a, double b, double panel, int n) {
  const Rule& base = gauss_legendre(n);
  Rule out;
  if (!(b > a)) return out;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel - 1e-9)));
  const double width = (b - a) / panels;
  out.nodes.reserve(panels * n);
  out.weights.reserve(panels * n);
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (int i = 0; i < n; ++i) {
      out.nodes.push_back(mid + 0.5 * width * base.nodes[i]);
      out.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return out;
}

std::vector<Point> tanh_sinh_nodes(double a, double b, int level, bool odd_only) {
  constexpr double tau_max = 6.2;
  constexpr double half_pi = 0.5 * std::numbers::pi;
  const double h = std::ldexp(1.0, -level);
  const double half = 0.5 * (b - a);
  const long kmax = static_cast<long>(std::ceil(tau_max / h));
  std::vector<Point> pts;
  pts.reserve(2 * kmax + 1);
  for (long k = -kmax; k <= kmax; ++k) {
    if (odd_only && k % 2 == 0) continue;
    const double tau = k * h;
    const double u = half_pi * std::sinh(tau);
    const double cu = std::cosh(u);
    const double weight = half * half_pi * std::cosh(tau) / (cu * cu);
    // 1 + tanh u = 2 / (1 + e^{-2u}), 1 - tanh u = 2 / (1 + e^{2u})
    const double from_lo = half * 2.0 / (1.0 + std::exp(-2.0 * u));
    const double from_hi = half * 2.0 / (1.0 + std::exp(2.0 * u));
    if (from_lo == 0.0 || from_hi == 0.0 || weight == 0.0) continue;
    const double x = tau <= 0 ? a + from_lo : b - from_hi;
    pts.push_back({x, weight, from_lo, from_hi});
  }
  return pts;
}

}  // namespace quad
}  // namespace dharm
