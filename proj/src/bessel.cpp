#include "dharm/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dharm/errors.hpp"

namespace dharm::bessel {

namespace {

constexpr double kRatioTol = 1e-14;

// Normalised Miller pass from start index m. Fills ratio[k] = I_{k+1}/I_k for
// k < radius + 1 and returns sum_k I_k / I_0 over all integers.
double miller_pass(double t, long radius, long m, std::vector<double>& ratio) {
  ratio.assign(static_cast<std::size_t>(radius) + 1, 0.0);
  double rho = 0.0;
  // Backward sweep: rho_{k-1} = 1 / (rho_k + k/t).
  std::vector<double> all(static_cast<std::size_t>(m) + 1, 0.0);
  for (long k = m; k >= 1; --k) {
    rho = 1.0 / (rho + static_cast<double>(k) / t);
    all[k - 1] = rho;
  }
  double f = 1.0;
  double s = 1.0;
  for (long k = 1; k <= m; ++k) {
    f *= all[k - 1];
    if (f == 0.0) break;
    s += 2.0 * f;
  }
  for (long k = 0; k <= radius && k < m; ++k) ratio[k] = all[k];
  return s;
}

long miller_start(double t, long radius) {
  const double tt = std::max(t, 1.0);
  const long base = radius + static_cast<long>(std::ceil(40.0 + 4.0 * std::sqrt(radius * tt)));
  const long floor = static_cast<long>(std::ceil(40.0 + 14.0 * std::sqrt(tt)));
  return std::max(base, floor);
}

void fill_symmetric(ScaledBesselRow& row, const std::vector<double>& half) {
  const long r = row.radius;
  for (long k = 0; k <= r; ++k) {
    row.values[r + k] = half[k];
    row.values[r - k] = half[k];
  }
}

}  // namespace

void SeriesBudget::validate() const {
  if (max_terms < 1) throw DomainError("SeriesBudget: max_terms must be positive");
  if (!(rel_tol > 0.0)) throw DomainError("SeriesBudget: rel_tol must be positive");
}

std::vector<double> hankel_coefficients(long k, int count) {
  std::vector<double> a(std::max(count, 0));
  if (count <= 0) return a;
  const double mu = 4.0 * static_cast<double>(k) * static_cast<double>(k);
  a[0] = 1.0;
  for (int j = 1; j < count; ++j) {
    const double odd = 2.0 * j - 1.0;
    a[j] = a[j - 1] * (mu - odd * odd) / (8.0 * j);
  }
  return a;
}

double hankel_threshold(long radius) {
  const double r = static_cast<double>(std::abs(radius));
  return std::max(1000.0, 25.0 * r * r);
}

ScaledBesselRow scaled_bessel_row(double t, long radius) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("scaled_bessel_row: t must be finite and >= 0");
  if (radius < 0) throw DomainError("scaled_bessel_row: radius must be >= 0");
  ScaledBesselRow row;
  row.t = t;
  row.radius = radius;
  row.values = Eigen::VectorXd::Zero(2 * radius + 1);
  std::vector<double> half(radius + 1, 0.0);

  if (t == 0.0) {
    row.values[radius] = 1.0;
    return row;
  }

  const double x = 2.0 * t;
  if (x < 1e-4) {
    // Three terms of the power series; the next term is below 1e-17 relative.
    const double e = std::exp(-x);
    double lead = e;  // e^{-x} t^k / k!
    for (long k = 0; k <= radius; ++k) {
      if (k > 0) lead *= t / static_cast<double>(k);
      const double q = t * t;
      half[k] = lead * (1.0 + q / (k + 1.0) + q * q / (2.0 * (k + 1.0) * (k + 2.0)));
    }
    fill_symmetric(row, half);
    return row;
  }

  if (t >= hankel_threshold(radius)) {
    const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
    for (long k = 0; k <= radius; ++k) {
      const auto a = hankel_coefficients(k, 24);
      double sum = 0.0;
      double xp = 1.0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        const double term = (j % 2 ? -1.0 : 1.0) * a[j] * xp;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        xp /= x;
      }
      half[k] = pref * sum;
    }
    fill_symmetric(row, half);
    return row;
  }

  long m = miller_start(t, radius);
  std::vector<double> ratio;
  std::vector<double> ratio2;
  double s = miller_pass(t, radius, m, ratio);
  double achieved = 0.0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const double s2 = miller_pass(t, radius, 2 * m, ratio2);
    achieved = std::abs(s2 - s) / s2;
    for (long k = 0; k < radius; ++k) {
      if (ratio2[k] == 0.0) continue;
      achieved = std::max(achieved, std::abs(ratio2[k] - ratio[k]) / ratio2[k]);
    }
    ratio.swap(ratio2);
    s = s2;
    m *= 2;
    if (achieved <= kRatioTol) {
      double f = 1.0 / s;
      half[0] = f;
      for (long k = 1; k <= radius; ++k) {
        f *= ratio[k - 1];
        half[k] = f;
      }
      fill_symmetric(row, half);
      return row;
    }
  }
  throw NumericError("scaled_bessel_row: backward recurrence did not settle", achieved);
}

double scaled_bessel(long k, double t) {
  const long a = std::abs(k);
  return scaled_bessel_row(t, a)(a);
}

double heat_time_derivative(long k, double t) {
  const long a = std::abs(k);
  const auto row = scaled_bessel_row(t, a + 1);
  const double below = a == 0 ? row(1) : row(a - 1);
  return row(a + 1) - 2.0 * row(a) + below;
}

double bessel_series_oracle(long k, double t, const SeriesBudget& budget) {
  budget.validate();
  const long a = std::abs(k);
  if (t == 0.0) return a == 0 ? 1.0 : 0.0;
  const double sign = (t < 0 && a % 2 == 1) ? -1.0 : 1.0;
  const double h = 0.5 * std::abs(t);
  // First term (t/2)^a / a!
  double term = std::exp(a * std::log(h) - std::lgamma(a + 1.0));
  double sum = term;
  const double q = h * h;
  for (int j = 1; j < budget.max_terms; ++j) {
    term *= q / (static_cast<double>(j) * static_cast<double>(j + a));
    sum += term;
    if (j > h && term <= budget.rel_tol * sum) return sign * sum;
  }
  throw NumericError("bessel_series_oracle: series budget exhausted", term / sum);
}

double scaled_bessel_series_oracle(long k, double t, const SeriesBudget& budget) {
  budget.validate();
  const long a = std::abs(k);
  if (t == 0.0) return a == 0 ? 1.0 : 0.0;
  const double sign = (t < 0 && a % 2 == 1) ? -1.0 : 1.0;
  const double z = std::abs(t);
  const double lh = std::log(0.5 * z);
  auto log_term = [&](int j) {
    return (2.0 * j + a) * lh - std::lgamma(j + 1.0) - std::lgamma(j + a + 1.0) - z;
  };
  // Terms peak near j ~ z/2; sum outward in the log domain relative to the peak.
  std::vector<double> logs;
  double peak = -INFINITY;
  for (int j = 0; j < budget.max_terms; ++j) {
    const double lt = log_term(j);
    logs.push_back(lt);
    peak = std::max(peak, lt);
    if (j > 0.5 * z && lt - peak < std::log(budget.rel_tol) - 5.0) {
      double sum = 0.0;
      for (auto it = logs.rbegin(); it != logs.rend(); ++it) sum += std::exp(*it - peak);
      return sign * std::exp(peak) * sum;
    }
  }
  throw NumericError("scaled_bessel_series_oracle: series budget exhausted", std::exp(logs.back() - peak));
}

namespace {

// P(nu,z) e^{-z} times the integral over [0, pi] of
// e^{-z(1 + cos phi)} sin^{2 nu} phi h(cos phi, 1 + cos phi).
template <typename H>
double schlafli_integral(double nu, double z, const QuadratureSpec& quad, H&& h) {
  quad.validate();
  if (!(nu > -0.5)) throw DomainError("schlafli: nu must exceed -1/2");
  if (!(z > 0.0)) throw DomainError("schlafli: z must be positive");
  auto f = [&](const quad::Point& p) {
    const bool left = p.from_lo <= p.from_hi;
    const double sin_phi = std::sin(left ? p.from_lo : p.from_hi);
    const double s = left ? std::cos(p.from_lo) : -std::cos(p.from_hi);
    const double half_sin = std::sin(0.5 * p.from_hi);
    const double one_plus_s = 2.0 * half_sin * half_sin;
    return std::exp(-z * one_plus_s) * std::pow(sin_phi, 2.0 * nu) * h(s, one_plus_s);
  };
  const double integral = quad::tanh_sinh(f, 0.0, std::numbers::pi, quad.rel_tol);
  const double log_pref = nu * std::log(0.5 * z) - std::lgamma(nu + 0.5) + z;
  return std::exp(log_pref) / std::sqrt(std::numbers::pi) * integral;
}

}  // namespace

double schlafli_oracle(double nu, double z, const QuadratureSpec& quad) {
  return schlafli_integral(nu, z, quad, [](double, double) { return 1.0; });
}

double schlafli_difference_oracle(double nu, double z, int order, const QuadratureSpec& quad) {
  switch (order) {
    case 1:
      return -schlafli_integral(nu, z, quad, [](double, double u) { return u; });
    case 2:
      return schlafli_integral(nu, z, quad, [z](double s, double u) { return s / z + u * u; });
    case 3:
      return -schlafli_integral(nu, z, quad, [z](double s, double u) {
        return 3.0 * s / (z * z) + 3.0 * s * u / z + u * u * u;
      });
    default:
      throw DomainError("schlafli_difference_oracle: order must be 1, 2 or 3");
  }
}

double asymptotic_check(long k, double t) {
  const double kk = static_cast<double>(k);
  if (!(t >= 100.0 * std::max(1.0, kk * kk))) {
    throw DomainError("asymptotic_check: requires t >= 100 max(1, k^2)");
  }
  return std::abs(scaled_bessel(k, 0.5 * t) * std::sqrt(2.0 * std::numbers::pi * t) - 1.0);
}

}  // namespace dharm::bessel
