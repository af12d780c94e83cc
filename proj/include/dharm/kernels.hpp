#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

#include "dharm/heat_moments.hpp"
#include "dharm/quadrature.hpp"
#include "dharm/sequence.hpp"

namespace dharm {

enum class KernelKind {
  heat,
  poisson,
  conj_poisson,
  conj_poisson_tilde,
  riesz,
  riesz_tilde,
  frac_laplacian,
  frac_integral,
};

enum class Parity { plus, tilde };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);
Parity parse_parity(std::string_view name);

/// Kernel values K(m) for m in `range`. For frac_laplacian the m = 0 entry
/// holds the diagonal of the operator, so that convolving with the table
/// applies (-Delta)^sigma.
struct KernelTable {
  KernelKind kind = KernelKind::heat;
  double param = 0.0;
  Window range;
  Eigen::VectorXd values;

  double operator()(long m) const { return range.contains(m) ? values[m - range.lo] : 0.0; }
  RealSequence as_sequence() const { return RealSequence(range.lo, values); }
};

/// Subordination weights. Each list is applied with heat_moments to the
/// sequence named in the comment.
namespace subordination {
std::vector<MomentTerm> poisson(double t);               // f
std::vector<MomentTerm> poisson_dt(double t);            // f
std::vector<MomentTerm> conjugate(double t);             // D f or D~ f
std::vector<MomentTerm> conjugate_dt(double t);          // D f or D~ f
std::vector<MomentTerm> fractional_laplacian(double sigma);  // f, identity subtracted
std::vector<MomentTerm> fractional_integral(double alpha);   // f
}  // namespace subordination

double poisson_kernel(long m, double t, const QuadratureSpec& quad = QuadratureSpec::subordination_default());

double conjugate_poisson_kernel(long m, double t, Parity parity,
                                const QuadratureSpec& quad = QuadratureSpec::subordination_default());

/// -1 / (pi (m + 1/2)); see README for the sign.
double riesz_kernel(long m);
/// -1 / (pi (m - 1/2))
double riesz_tilde_kernel(long m);

double fractional_laplacian_kernel(long m, double sigma, const QuadratureSpec& quad = QuadratureSpec::fractional_default());

double fractional_integral_kernel(long m, double alpha, const QuadratureSpec& quad = QuadratureSpec::fractional_default());

KernelTable kernel_table(KernelKind kind, double param, const Window& range,
                         const QuadratureSpec& quad = QuadratureSpec::subordination_default());

void check_time(double t);
void check_sigma(double sigma);
void check_alpha(double alpha);

}  // namespace dharm
