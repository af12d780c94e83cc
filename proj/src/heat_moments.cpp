#include "dharm/heat_moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dharm/bessel.hpp"
#include "dharm/errors.hpp"

namespace dharm {

namespace {

constexpr int kTaylorTerms = 40;
constexpr int kHankelTerms = 20;
constexpr int kExpTerms = 12;

double real_part(double x) { return x; }
double real_part(const Complex& x) { return x.real(); }
double conj_of(double x) { return x; }
Complex conj_of(const Complex& x) { return std::conj(x); }

// int_V^inf e^{-c/v} v^{-e-1} dv for e > 0, by expanding e^{-c/v}; c/V <= 0.01.
double tail_power(double c, double e, double big_v) {
  double sum = 0.0;
  double ci = 1.0;
  for (int i = 0; i < kExpTerms; ++i) {
    sum += ci * std::pow(big_v, -(e + i)) / (e + i);
    ci *= -c / (i + 1.0);
  }
  return sum;
}

}  // namespace

template <typename Scalar>
HeatMomentTable<Scalar>::HeatMomentTable(const Sequence<Scalar>& g, const Window& out, double c_lo, double c_hi,
                                         bool subtract_identity, double panel, int nodes)
    : out_(out), subtract_(subtract_identity), c_lo_(c_lo), c_hi_(c_hi) {
  if (out.empty()) throw DomainError("HeatMomentTable: empty output window");
  if (!(c_lo >= 0.0) || !(c_hi >= c_lo) || !std::isfinite(c_hi)) {
    throw DomainError("HeatMomentTable: need 0 <= c_lo <= c_hi < inf");
  }
  if (!(panel > 0.0)) throw DomainError("HeatMomentTable: panel width must be positive");

  const Sequence<Scalar> gs = g.empty() ? Sequence<Scalar>::zeros({out.lo, out.lo}) : g;
  const Window gw = gs.window();
  const long sep = max_separation(out, gw);
  g_out_ = gs.on(out).values();
  g_sum_ = std::abs(gs.values().sum());
  g_l1_ = gs.values().cwiseAbs().sum();

  const double k2 = static_cast<double>(sep) * static_cast<double>(sep);
  const double v_needed = std::max({1000.0, 25.0 * k2, 100.0 * c_hi});
  const double x_hi = std::ceil(std::log(v_needed) / panel) * panel;
  big_v_ = std::exp(x_hi);
  double x_lo = 0.0;
  if (c_lo > 0.0) x_lo = std::min(0.0, std::floor(std::log(c_lo / 800.0) / panel) * panel);

  const auto rule = quad::composite_gauss_legendre(x_lo, x_hi, panel, nodes);
  const auto count = static_cast<Eigen::Index>(rule.nodes.size());
  v_.resize(count);
  dv_.resize(count);
  y_.resize(out.size(), count);
  y_abs_.resize(out.size(), count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double v = std::exp(rule.nodes[i]);
    v_[i] = v;
    dv_[i] = rule.weights[i] * v;
    const auto row = bessel::scaled_bessel_row(v, sep);
    for (long n = out.lo; n <= out.hi; ++n) {
      Scalar acc(0);
      double mag = 0.0;
      for (long m = gw.lo; m <= gw.hi; ++m) {
        acc += row(n - m) * gs(m);
        mag += row(n - m) * std::abs(gs(m));
      }
      if (subtract_) {
        acc -= gs(n);
        mag += std::abs(gs(n));
      }
      y_(n - out.lo, i) = acc;
      y_abs_(n - out.lo, i) = mag;
    }
  }

  // Taylor coefficients Delta^j g(n) / j!. Delta^j g is supported in
  // supp g dilated by j, so zero padding on the big window is exact.
  const Window big = hull(out, gw).dilated(kTaylorTerms + 1);
  Values d = gs.on(big).values();
  Values next(d.size());
  double fact = 1.0;
  taylor_.reserve(kTaylorTerms + 1);
  for (int j = 0; j <= kTaylorTerms; ++j) {
    if (j > 0) fact *= j;
    taylor_.push_back(d.segment(out.lo - big.lo, out.size()) / fact);
    next.setZero();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      Scalar s = -2.0 * d[i];
      if (i > 0) s += d[i - 1];
      if (i + 1 < d.size()) s += d[i + 1];
      next[i] = s;
    }
    d.swap(next);
  }

  // Large-time expansion: W_v g(n) ~ (4 pi)^{-1/2} sum_j (-1)^j 2^{-j} B_j(n) v^{-j-1/2}.
  std::vector<std::vector<double>> a(sep + 1);
  for (long k = 0; k <= sep; ++k) a[k] = bessel::hankel_coefficients(k, kHankelTerms);
  const double pref = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  hankel_.assign(kHankelTerms, Values::Zero(out.size()));
  for (int j = 0; j < kHankelTerms; ++j) {
    const double scale = pref * (j % 2 ? -1.0 : 1.0) * std::ldexp(1.0, -j);
    for (long n = out.lo; n <= out.hi; ++n) {
      Scalar acc(0);
      for (long m = gw.lo; m <= gw.hi; ++m) acc += a[std::abs(n - m)][j] * gs(m);
      hankel_[j][n - out.lo] = scale * acc;
    }
  }
}

template <typename Scalar>
void HeatMomentTable<Scalar>::check_term(const MomentTerm& term) const {
  if (!(term.c >= 0.0) || !std::isfinite(term.coeff) || !std::isfinite(term.p)) {
    throw DomainError("MomentTerm: invalid parameters");
  }
  if (term.c > 0.0 && (term.c < c_lo_ * (1 - 1e-12) || term.c > c_hi_ * (1 + 1e-12))) {
    throw DomainError("MomentTerm: c outside the range the table was built for");
  }
}

template <typename Scalar>
typename HeatMomentTable<Scalar>::Values HeatMomentTable<Scalar>::evaluate(const std::vector<MomentTerm>& terms) const {
  Values result = Values::Zero(out_.size());
  const auto count = static_cast<Eigen::Index>(v_.size());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(count);
  const double tiny = 1e-13 * std::max(g_l1_, std::numeric_limits<double>::min());

  for (const auto& term : terms) {
    check_term(term);
    if (term.coeff == 0.0) continue;

    for (Eigen::Index i = 0; i < count; ++i) {
      const double v = v_[i];
      if (term.c == 0.0 && v < 1.0) continue;
      const double e = term.c == 0.0 ? 1.0 : std::exp(-term.c / v);
      w[i] += term.coeff * dv_[i] * e * std::pow(v, -term.p);
    }

    if (term.c == 0.0) {
      // int_0^1 v^{j - p} dv = 1 / (j + 1 - p)
      for (int j = subtract_ ? 1 : 0; j <= kTaylorTerms; ++j) {
        const double e = j + 1.0 - term.p;
        if (e <= 0.0) {
          if (taylor_[j].cwiseAbs().maxCoeff() > tiny) {
            throw DomainError("moment integral diverges at v = 0");
          }
          continue;
        }
        result += (term.coeff / e) * taylor_[j];
      }
    }

    for (int j = 0; j < kHankelTerms; ++j) {
      const double e = term.p + j - 0.5;  // v^{-p} v^{-j-1/2} = v^{-e-1}
      if (e <= 0.0) {
        if (j == 0 && g_sum_ <= tiny) continue;
        throw DomainError("moment integral diverges at v = infinity");
      }
      result += (term.coeff * tail_power(term.c, e, big_v_)) * hankel_[j];
    }
    if (subtract_) {
      const double e = term.p - 1.0;
      if (e <= 0.0) throw DomainError("moment integral with identity subtracted needs p > 1");
      result -= (term.coeff * tail_power(term.c, e, big_v_)) * g_out_;
    }
  }
  result += y_ * w;
  return result;
}

template <typename Scalar>
Eigen::VectorXd HeatMomentTable<Scalar>::rounding_floor(const std::vector<MomentTerm>& terms) const {
  const auto count = static_cast<Eigen::Index>(v_.size());
  Eigen::VectorXd w = Eigen::VectorXd::Zero(count);
  for (const auto& term : terms) {
    for (Eigen::Index i = 0; i < count; ++i) {
      const double v = v_[i];
      if (term.c == 0.0 && v < 1.0) continue;
      const double e = term.c == 0.0 ? 1.0 : std::exp(-term.c / v);
      w[i] += std::abs(term.coeff) * dv_[i] * e * std::pow(v, -term.p);
    }
  }
  return (64.0 * std::numeric_limits<double>::epsilon()) * (y_abs_ * w);
}

template <typename Scalar>
Eigen::VectorXd HeatMomentTable<Scalar>::quadratic_moment() const {
  if (subtract_ || c_hi_ > 0.0) throw DomainError("quadratic_moment: table must be built with c = 0, no subtraction");
  const Eigen::Index size = out_.size();
  Eigen::VectorXd result = Eigen::VectorXd::Zero(size);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(v_.size()); ++i) {
    if (v_[i] < 1.0) continue;
    result += (dv_[i] * v_[i]) * y_.col(i).cwiseAbs2();
  }
  const double tiny = 1e-13 * std::max(g_l1_, std::numeric_limits<double>::min());
  for (Eigen::Index n = 0; n < size; ++n) {
    double acc = 0.0;
    // int_0^1 v * v^{j+k} dv = 1 / (j + k + 2)
    for (int j = 0; j <= kTaylorTerms; ++j) {
      for (int k = 0; k <= kTaylorTerms; ++k) acc += real_part(taylor_[j][n] * conj_of(taylor_[k][n])) / (j + k + 2.0);
    }
    // int_V^inf v * v^{-j-k-1} dv = V^{1-j-k} / (j + k - 1)
    for (int j = 0; j < kHankelTerms; ++j) {
      for (int k = 0; k < kHankelTerms; ++k) {
        if (j + k < 2) {
          if (g_sum_ > tiny) throw DomainError("quadratic_moment diverges: sequence has nonzero sum");
          continue;
        }
        acc += real_part(hankel_[j][n] * conj_of(hankel_[k][n])) * std::pow(big_v_, 1.0 - j - k) / (j + k - 1.0);
      }
    }
    result[n] += acc;
  }
  return result;
}

namespace {

template <typename Vec>
double sup_norm(const Vec& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

template <typename Scalar>
std::vector<Vector<Scalar>> heat_moments(const Sequence<Scalar>& g, const Window& out,
                                         const std::vector<std::vector<MomentTerm>>& batches,
                                         bool subtract_identity, const QuadratureSpec& quad) {
  quad.validate();
  double c_lo = std::numeric_limits<double>::infinity();
  double c_hi = 0.0;
  for (const auto& batch : batches) {
    for (const auto& term : batch) {
      if (!(term.c >= 0.0)) throw DomainError("heat_moments: c must be >= 0");
      if (term.c > 0.0) c_lo = std::min(c_lo, term.c);
      c_hi = std::max(c_hi, term.c);
    }
  }
  if (!std::isfinite(c_lo)) c_lo = 0.0;

  std::vector<double> floors(batches.size(), 0.0);
  auto run = [&](double panel) {
    HeatMomentTable<Scalar> table(g, out, c_lo, c_hi, subtract_identity, panel, quad.nodes);
    std::vector<Vector<Scalar>> res;
    res.reserve(batches.size());
    for (std::size_t b = 0; b < batches.size(); ++b) {
      res.push_back(table.evaluate(batches[b]));
      floors[b] = sup_norm(table.rounding_floor(batches[b]));
    }
    return res;
  };

  double panel = 1.0;
  auto previous = run(panel);
  double achieved = 0.0;
  for (int level = 0; level < 4; ++level) {
    panel *= 0.5;
    auto current = run(panel);
    achieved = 0.0;
    bool converged = true;
    for (std::size_t b = 0; b < batches.size(); ++b) {
      const double scale = sup_norm(current[b]);
      const double diff = sup_norm(Vector<Scalar>(current[b] - previous[b]));
      achieved = std::max(achieved, scale > 0.0 ? diff / scale : diff);
      converged = converged && diff <= quad.rel_tol * scale + floors[b];
    }
    if (converged) return current;
    previous = std::move(current);
  }
  throw NumericError("heat moment quadrature did not reach rel_tol", achieved);
}

template <typename Scalar>
Eigen::VectorXd heat_quadratic_moment(const Sequence<Scalar>& g, const Window& out, const QuadratureSpec& quad) {
  quad.validate();
  double panel = 1.0;
  Eigen::VectorXd previous = HeatMomentTable<Scalar>(g, out, 0.0, 0.0, false, panel, quad.nodes).quadratic_moment();
  double achieved = 0.0;
  for (int level = 0; level < 4; ++level) {
    panel *= 0.5;
    Eigen::VectorXd current = HeatMomentTable<Scalar>(g, out, 0.0, 0.0, false, panel, quad.nodes).quadratic_moment();
    const double scale = sup_norm(current);
    const double diff = sup_norm(Eigen::VectorXd(current - previous));
    achieved = scale > 0.0 ? diff / scale : diff;
    if (achieved <= quad.rel_tol) return current;
    previous = std::move(current);
  }
  throw NumericError("quadratic moment quadrature did not reach rel_tol", achieved);
}

template class HeatMomentTable<double>;
template class HeatMomentTable<Complex>;
template std::vector<Vector<double>> heat_moments(const Sequence<double>&, const Window&,
                                                  const std::vector<std::vector<MomentTerm>>&, bool,
                                                  const QuadratureSpec&);
template std::vector<Vector<Complex>> heat_moments(const Sequence<Complex>&, const Window&,
                                                   const std::vector<std::vector<MomentTerm>>&, bool,
                                                   const QuadratureSpec&);
template Eigen::VectorXd heat_quadratic_moment(const Sequence<double>&, const Window&, const QuadratureSpec&);
template Eigen::VectorXd heat_quadratic_moment(const Sequence<Complex>&, const Window&, const QuadratureSpec&);

}  // namespace dharm
