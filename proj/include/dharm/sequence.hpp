#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>
#include <utility>

#include "dharm/errors.hpp"

namespace dharm {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;

/// Closed integer interval [lo, hi]; empty when hi < lo.
struct Window {
  long lo = 0;
  long hi = -1;

  constexpr long size() const { return hi >= lo ? hi - lo + 1 : 0; }
  constexpr bool empty() const { return hi < lo; }
  constexpr bool contains(long n) const { return lo <= n && n <= hi; }
  constexpr Window dilated(long r) const { return empty() ? *this : Window{lo - r, hi + r}; }
  static constexpr Window centered(long radius) { return {-radius, radius}; }

  friend constexpr bool operator==(const Window&, const Window&) = default;
};

/// Smallest window holding both arguments (empty windows are ignored).
constexpr Window hull(const Window& a, const Window& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/// Largest |n - m| for n in `a`, m in `b`.
constexpr long max_separation(const Window& a, const Window& b) {
  if (a.empty() || b.empty()) return 0;
  return std::max(std::abs(a.hi - b.lo), std::abs(a.lo - b.hi));
}

namespace detail {
template <typename Scalar>
bool is_finite(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Complex>) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  } else {
    return std::isfinite(x);
  }
}
}  // namespace detail

/// Finitely supported function on the integers: entry i of `values` holds
/// f(lo + i); f vanishes outside the stored window.
template <typename Scalar>
class Sequence {
 public:
  using scalar_type = Scalar;
  using Values = Vector<Scalar>;

  Sequence() = default;

  Sequence(long lo, Values values) : lo_(lo), values_(std::move(values)) {
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (!detail::is_finite(values_[i])) throw DomainError("Sequence: non-finite entry");
    }
  }

  static Sequence delta(long n, Scalar v = Scalar(1)) {
    Values vals(1);
    vals[0] = v;
    return Sequence(n, std::move(vals));
  }

  static Sequence zeros(const Window& w) { return Sequence(w.lo, Values::Zero(w.size())); }

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(values_.size()) - 1; }
  Window window() const { return {lo(), hi()}; }
  Eigen::Index size() const { return values_.size(); }
  bool empty() const { return values_.size() == 0; }

  const Values& values() const { return values_; }
  Values& values() { return values_; }

  /// f(n), zero outside the stored window.
  Scalar operator()(long n) const {
    if (n < lo() || n > hi()) return Scalar(0);
    return values_[n - lo_];
  }

  /// Mutable access; n must lie in the stored window.
  Scalar& ref(long n) { return values_[n - lo_]; }

  /// The same function stored on exactly `w` (zero padded, entries outside
  /// `w` dropped).
  Sequence on(const Window& w) const {
    Values out = Values::Zero(w.size());
    const Window common{std::max(w.lo, lo()), std::min(w.hi, hi())};
    if (!common.empty()) {
      out.segment(common.lo - w.lo, common.size()) = values_.segment(common.lo - lo_, common.size());
    }
    return Sequence(w.lo, std::move(out));
  }

  /// Drops leading and trailing exact zeros.
  Sequence trimmed() const {
    Eigen::Index first = 0;
    Eigen::Index last = values_.size() - 1;
    while (first <= last && values_[first] == Scalar(0)) ++first;
    while (last >= first && values_[last] == Scalar(0)) --last;
    if (first > last) return Sequence();
    return Sequence(lo_ + static_cast<long>(first), values_.segment(first, last - first + 1));
  }

  /// Window of the nonzero entries (empty for the zero sequence).
  Window support() const {
    auto t = trimmed();
    return t.empty() ? Window{} : t.window();
  }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    const Sequence ta = a.trimmed();
    const Sequence tb = b.trimmed();
    return ta.lo_ == tb.lo_ ? ta.values_ == tb.values_ : (ta.empty() && tb.empty());
  }

  friend Sequence operator+(const Sequence& a, const Sequence& b) {
    const Window w = hull(a.window(), b.window());
    Sequence out = a.on(w);
    out.values_ += b.on(w).values_;
    return out;
  }

  friend Sequence operator-(const Sequence& a, const Sequence& b) {
    const Window w = hull(a.window(), b.window());
    Sequence out = a.on(w);
    out.values_ -= b.on(w).values_;
    return out;
  }

  friend Sequence operator*(Scalar s, const Sequence& a) { return Sequence(a.lo_, s * a.values_); }

 private:
  long lo_ = 0;
  Values values_;
};

using RealSequence = Sequence<double>;
using ComplexSequence = Sequence<Complex>;

/// l^p norm over the stored window; p = infinity gives the sup norm.
template <typename Scalar>
double lp_norm(const Sequence<Scalar>& f, double p) {
  if (f.empty()) return 0.0;
  const auto mags = f.values().cwiseAbs();
  if (std::isinf(p)) return mags.maxCoeff();
  if (p == 1.0) return mags.sum();
  if (p == 2.0) return f.values().norm();
  return std::pow(mags.array().pow(p).sum(), 1.0 / p);
}

/// max |a(n) - b(n)| over the union of the stored windows.
template <typename Scalar>
double max_abs_diff(const Sequence<Scalar>& a, const Sequence<Scalar>& b) {
  const auto d = a - b;
  return d.empty() ? 0.0 : d.values().cwiseAbs().maxCoeff();
}

/// max |a(n) - b(n)| over `w` only.
template <typename Scalar>
double max_abs_diff(const Sequence<Scalar>& a, const Sequence<Scalar>& b, const Window& w) {
  if (w.empty()) return 0.0;
  return (a.on(w).values() - b.on(w).values()).cwiseAbs().maxCoeff();
}

}  // namespace dharm
