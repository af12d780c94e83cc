#include "dharm/kernels.hpp"

#include <cmath>
#include <numbers>

#include "dharm/bessel.hpp"
#include "dharm/errors.hpp"

namespace dharm {

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

RealSequence difference_of_delta(Parity parity) {
  Eigen::VectorXd v(2);
  if (parity == Parity::plus) {
    v << 1.0, -1.0;  // D delta_0 = delta_{-1} - delta_0
    return RealSequence(-1, v);
  }
  v << 1.0, -1.0;  // D~ delta_0 = delta_0 - delta_1
  return RealSequence(0, v);
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::heat: return "heat";
    case KernelKind::poisson: return "poisson";
    case KernelKind::conj_poisson: return "conj_poisson";
    case KernelKind::conj_poisson_tilde: return "conj_poisson_tilde";
    case KernelKind::riesz: return "riesz";
    case KernelKind::riesz_tilde: return "riesz_tilde";
    case KernelKind::frac_laplacian: return "frac_laplacian";
    case KernelKind::frac_integral: return "frac_integral";
  }
  return "?";
}

KernelKind parse_kernel_kind(std::string_view name) {
  for (auto k : {KernelKind::heat, KernelKind::poisson, KernelKind::conj_poisson, KernelKind::conj_poisson_tilde,
                 KernelKind::riesz, KernelKind::riesz_tilde, KernelKind::frac_laplacian, KernelKind::frac_integral}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown kernel kind: " + std::string(name));
}

Parity parse_parity(std::string_view name) {
  if (name == "plus") return Parity::plus;
  if (name == "tilde") return Parity::tilde;
  throw DomainError("unknown parity: " + std::string(name));
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("sigma must lie in (0, 1)");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
}

namespace subordination {

// P_t = t/(2 sqrt pi) int e^{-t^2/4v} v^{-3/2} W_v dv
std::vector<MomentTerm> poisson(double t) { return {{0.5 * t * kInvSqrtPi, 0.25 * t * t, 1.5}}; }

std::vector<MomentTerm> poisson_dt(double t) {
  return {{0.5 * kInvSqrtPi, 0.25 * t * t, 1.5}, {-0.25 * t * t * kInvSqrtPi, 0.25 * t * t, 2.5}};
}

// Q_t = pi^{-1/2} int e^{-t^2/4v} v^{-1/2} W_v D dv
std::vector<MomentTerm> conjugate(double t) { return {{kInvSqrtPi, 0.25 * t * t, 0.5}}; }

std::vector<MomentTerm> conjugate_dt(double t) { return {{-0.5 * t * kInvSqrtPi, 0.25 * t * t, 1.5}}; }

std::vector<MomentTerm> fractional_laplacian(double sigma) { return {{1.0 / std::tgamma(-sigma), 0.0, 1.0 + sigma}}; }

std::vector<MomentTerm> fractional_integral(double alpha) { return {{1.0 / std::tgamma(alpha), 0.0, 1.0 - alpha}}; }

}  // namespace subordination

KernelTable kernel_table(KernelKind kind, double param, const Window& range, const QuadratureSpec& quad) {
  if (range.empty()) throw DomainError("kernel_table: empty range");
  KernelTable table{kind, param, range, Eigen::VectorXd::Zero(range.size())};
  auto from_moments = [&](const RealSequence& g, const std::vector<MomentTerm>& terms, bool subtract) {
    table.values = heat_moments(g, range, {terms}, subtract, quad)[0];
  };

  switch (kind) {
    case KernelKind::heat: {
      check_time(param);
      const long radius = std::max(std::abs(range.lo), std::abs(range.hi));
      const auto row = bessel::scaled_bessel_row(param, radius);
      for (long m = range.lo; m <= range.hi; ++m) table.values[m - range.lo] = row(m);
      break;
    }
    case KernelKind::poisson:
      check_time(param);
      if (param == 0.0) {
        if (range.contains(0)) table.values[-range.lo] = 1.0;
      } else {
        from_moments(RealSequence::delta(0), subordination::poisson(param), false);
      }
      break;
    case KernelKind::conj_poisson:
    case KernelKind::conj_poisson_tilde: {
      check_time(param);
      const Parity parity = kind == KernelKind::conj_poisson ? Parity::plus : Parity::tilde;
      from_moments(difference_of_delta(parity), subordination::conjugate(param), false);
      break;
    }
    case KernelKind::riesz:
      for (long m = range.lo; m <= range.hi; ++m) table.values[m - range.lo] = riesz_kernel(m);
      break;
    case KernelKind::riesz_tilde:
      for (long m = range.lo; m <= range.hi; ++m) table.values[m - range.lo] = riesz_tilde_kernel(m);
      break;
    case KernelKind::frac_laplacian:
      check_sigma(param);
      from_moments(RealSequence::delta(0), subordination::fractional_laplacian(param), true);
      break;
    case KernelKind::frac_integral:
      check_alpha(param);
      from_moments(RealSequence::delta(0), subordination::fractional_integral(param), false);
      break;
  }
  return table;
}

double poisson_kernel(long m, double t, const QuadratureSpec& quad) {
  return kernel_table(KernelKind::poisson, t, {m, m}, quad).values[0];
}

double conjugate_poisson_kernel(long m, double t, Parity parity, const QuadratureSpec& quad) {
  const auto kind = parity == Parity::plus ? KernelKind::conj_poisson : KernelKind::conj_poisson_tilde;
  return kernel_table(kind, t, {m, m}, quad).values[0];
}

double riesz_kernel(long m) { return -1.0 / (std::numbers::pi * (static_cast<double>(m) + 0.5)); }

double riesz_tilde_kernel(long m) { return -1.0 / (std::numbers::pi * (static_cast<double>(m) - 0.5)); }

double fractional_laplacian_kernel(long m, double sigma, const QuadratureSpec& quad) {
  check_sigma(sigma);
  if (m == 0) throw DomainError("fractional_laplacian_kernel: m = 0 is the operator diagonal, not a kernel value");
  return kernel_table(KernelKind::frac_laplacian, sigma, {m, m}, quad).values[0];
}

double fractional_integral_kernel(long m, double alpha, const QuadratureSpec& quad) {
  return kernel_table(KernelKind::frac_integral, alpha, {m, m}, quad).values[0];
}

}  // namespace dharm
