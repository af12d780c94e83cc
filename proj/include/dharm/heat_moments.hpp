#pragma once

#include <Eigen/Core>

#include <vector>

#include "dharm/quadrature.hpp"
#include "dharm/sequence.hpp"

/// Time integrals of the heat semigroup,
///
///   sum_terms coeff * int_0^inf e^{-c/v} v^{-p} (W_v g(n) - s g(n)) dv,
///
/// with s = 1 when the identity is subtracted and 0 otherwise. Every
/// subordinated operator in the library (Poisson, conjugate Poisson, their
/// time derivatives, fractional powers) is a short list of such terms.
namespace dharm {

struct MomentTerm {
  double coeff = 1.0;
  double c = 0.0;  // >= 0
  double p = 0.0;
};

/// W_v g sampled once on a log-spaced Gauss-Legendre grid in v, after which
/// any term list whose c values lie in [c_lo, c_hi] (or equal 0) is a
/// matrix-vector product.
///
/// The pieces: on (0, 1] terms with c = 0 use the exact Taylor series of
/// W_v g in v; [v_lo, V] is composite Gauss-Legendre in x = log v with panels
/// of width `panel`; [V, inf) uses the large-time expansion of the Bessel
/// kernel integrated term by term.
template <typename Scalar>
class HeatMomentTable {
 public:
  using Values = Vector<Scalar>;

  HeatMomentTable(const Sequence<Scalar>& g, const Window& out, double c_lo, double c_hi, bool subtract_identity,
                  double panel = 1.0, int nodes = 16);

  /// Values of the term list on the output window.
  Values evaluate(const std::vector<MomentTerm>& terms) const;

  /// Rounding floor of evaluate(): a few ulps of the same quadrature applied
  /// to W_v |g| + s |g|. When g has cancelling entries (g = D f) and v is
  /// large, W_v g is a small difference of large Bessel values and cannot be
  /// resolved below this level.
  Eigen::VectorXd rounding_floor(const std::vector<MomentTerm>& terms) const;

  /// int_0^inf v |W_v g(n)|^2 dv on the output window. Requires a table
  /// built without identity subtraction and with c_hi = 0.
  Eigen::VectorXd quadratic_moment() const;

  const Window& window() const { return out_; }
  Eigen::Index node_count() const { return static_cast<Eigen::Index>(v_.size()); }
  double tail_start() const { return big_v_; }

 private:
  void check_term(const MomentTerm& term) const;

  Window out_;
  bool subtract_;
  double c_lo_;
  double c_hi_;
  double big_v_;
  double g_sum_;
  double g_l1_;
  std::vector<double> v_;
  std::vector<double> dv_;  // Gauss weight times the Jacobian v
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> y_;  // column i: W_{v_i} g - s g
  Eigen::MatrixXd y_abs_;                                    // column i: W_{v_i} |g| + s |g|
  std::vector<Values> taylor_;                               // Delta^j g / j! on out
  std::vector<Values> hankel_;                               // W_v g ~ sum_j hankel_[j] v^{-j-1/2}
  Values g_out_;
};

/// One result per batch, refining the panel width until two successive
/// answers agree to quad.rel_tol in the max norm (plus the rounding floor).
template <typename Scalar>
std::vector<Vector<Scalar>> heat_moments(const Sequence<Scalar>& g, const Window& out,
                                         const std::vector<std::vector<MomentTerm>>& batches,
                                         bool subtract_identity, const QuadratureSpec& quad);

/// Adaptive version of HeatMomentTable::quadratic_moment.
template <typename Scalar>
Eigen::VectorXd heat_quadratic_moment(const Sequence<Scalar>& g, const Window& out, const QuadratureSpec& quad);

}  // namespace dharm
