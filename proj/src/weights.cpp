#include "dharm/weights.hpp"

#include <cmath>

#include "dharm/errors.hpp"

namespace dharm {

void Weight::validate() const {
  if (window.empty() || values.size() != window.size()) throw DomainError("Weight: values must cover the window");
  if (!(p >= 1.0)) throw DomainError("Weight: p must be >= 1");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw DomainError("Weight: values must be positive");
  }
}

double ap_constant(const Weight& w, double p, const std::vector<Window>& intervals) {
  w.validate();
  if (!(p >= 1.0)) throw DomainError("ap_constant: p must be >= 1");
  if (intervals.empty()) throw DomainError("ap_constant: no intervals");
  double worst = 0.0;
  for (const auto& iv : intervals) {
    if (iv.empty() || iv.lo < w.window.lo || iv.hi > w.window.hi) {
      throw DomainError("ap_constant: interval outside the weight window");
    }
    const auto seg = w.values.segment(iv.lo - w.window.lo, iv.size());
    const double len = static_cast<double>(iv.size());
    const double mass = seg.sum();
    double value;
    if (p == 1.0) {
      value = mass / len / seg.minCoeff();
    } else {
      const double dual = seg.array().pow(-1.0 / (p - 1.0)).sum();
      value = (mass / len) * std::pow(dual / len, p - 1.0);
    }
    worst = std::max(worst, value);
  }
  return worst;
}

template <typename Scalar>
double weighted_norm(const Sequence<Scalar>& f, const Weight& w, double p) {
  w.validate();
  if (!(p >= 1.0)) throw DomainError("weighted_norm: p must be >= 1");
  const Window s = f.support();
  if (s.empty()) return 0.0;
  if (s.lo < w.window.lo || s.hi > w.window.hi) throw DomainError("weighted_norm: support escapes the weight window");
  double sum = 0.0;
  for (long n = s.lo; n <= s.hi; ++n) sum += std::pow(std::abs(f(n)), p) * w(n);
  return std::pow(sum, 1.0 / p);
}

Weight power_weight(double a, const Window& window, double p) {
  Weight w{window, Eigen::VectorXd(window.size()), p};
  for (long n = window.lo; n <= window.hi; ++n) {
    w.values[n - window.lo] = std::pow(static_cast<double>(std::abs(n)) + 1.0, a);
  }
  w.validate();
  return w;
}

std::vector<Window> dyadic_windows(int jmax) {
  std::vector<Window> out;
  for (int j = 0; j <= jmax; ++j) out.push_back(Window::centered(1L << j));
  return out;
}

template double weighted_norm(const Sequence<double>&, const Weight&, double);
template double weighted_norm(const Sequence<Complex>&, const Weight&, double);

}  // namespace dharm
