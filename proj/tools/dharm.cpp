// dharm: kernels, operators, verification suites and multiplier samples on
// sequences over Z.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "dharm/errors.hpp"
#include "dharm/kernels.hpp"
#include "dharm/operators.hpp"
#include "dharm/sequence_io.hpp"
#include "dharm/spectral.hpp"
#include "dharm/verify.hpp"

namespace {

using namespace dharm;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Params {
  std::optional<double> t, sigma, alpha;
  double tol = 1e-12;
  std::string range;
  std::string format = "csv";
  std::string out;

  double need(const std::optional<double>& v, const char* flag) const {
    if (!v) throw UsageError(std::string("missing ") + flag);
    return *v;
  }
};

std::optional<Window> parse_range(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto colon = s.find(':', 1);
  if (colon == std::string::npos) throw UsageError("--range expects lo:hi");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo = s.substr(0, colon), hi = s.substr(colon + 1);
    const long a = std::stol(lo, &used_lo), b = std::stol(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size() || a > b) throw UsageError("--range expects lo:hi with lo <= hi");
    return Window{a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--range expects lo:hi");
  }
}

QuadratureSpec with_tol(QuadratureSpec q, double tol) {
  q = q.with_tol(tol);
  q.validate();
  return q;
}

void emit(const Params& p, const RealSequence& f) {
  std::ofstream file;
  if (!p.out.empty()) {
    file.open(p.out);
    if (!file) throw std::runtime_error("cannot write " + p.out);
  }
  std::ostream& os = p.out.empty() ? std::cout : file;
  if (p.format == "json") {
    io::write_json(os, f);
  } else {
    io::write_csv(os, f);
  }
}

RealSequence read_input(const std::string& path) {
  if (path == "-") return io::read_any(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return io::read_any(in);
}

RealSequence real_part(const ComplexSequence& z) { return RealSequence(z.lo(), z.values().real()); }

double kernel_param(KernelKind kind, const Params& p) {
  switch (kind) {
    case KernelKind::heat:
    case KernelKind::poisson:
    case KernelKind::conj_poisson:
    case KernelKind::conj_poisson_tilde:
      return p.need(p.t, "--t");
    case KernelKind::frac_laplacian:
      return p.need(p.sigma, "--sigma");
    case KernelKind::frac_integral:
      return p.need(p.alpha, "--alpha");
    default:
      return 0.0;
  }
}

int cmd_kernel(const std::string& kind_name, const Params& p) {
  const KernelKind kind = parse_kernel_kind(kind_name);
  const auto range = parse_range(p.range);
  if (!range) throw UsageError("--range is required");
  const auto quad = kind == KernelKind::frac_laplacian || kind == KernelKind::frac_integral
                        ? with_tol(QuadratureSpec::fractional_default(), p.tol)
                        : with_tol(QuadratureSpec::subordination_default(), p.tol);
  emit(p, kernel_table(kind, kernel_param(kind, p), *range, quad).as_sequence());
  return 0;
}

OperatorSpec operator_spec(const std::string& name, const std::string& parity, const Params& p) {
  OperatorSpec op{parse_operator_kind(name), 0.0};
  if (parity == "tilde") {
    if (op.kind == OperatorKind::riesz) op.kind = OperatorKind::riesz_tilde;
    if (op.kind == OperatorKind::conj_poisson) op.kind = OperatorKind::conj_poisson_tilde;
  }
  switch (op.kind) {
    case OperatorKind::heat:
    case OperatorKind::poisson:
    case OperatorKind::conj_poisson:
    case OperatorKind::conj_poisson_tilde:
      op.param = p.need(p.t, "--t");
      break;
    case OperatorKind::frac_laplacian:
      op.param = p.need(p.sigma, "--sigma");
      break;
    case OperatorKind::frac_integral:
      op.param = p.need(p.alpha, "--alpha");
      break;
    default:
      break;
  }
  op.validate();
  return op;
}

Window default_window(const OperatorSpec& op, const Window& support) {
  if (support.empty()) return {0, 0};
  switch (op.kind) {
    case OperatorKind::identity:
      return support;
    case OperatorKind::forward_difference:
    case OperatorKind::backward_difference:
    case OperatorKind::laplacian:
      return support.dilated(1);
    case OperatorKind::heat:
      return default_heat_window(support, op.param);
    default:
      return default_poisson_window(support, op.param);
  }
}

// Direct convolution with a kernel read from file.
RealSequence convolve(const RealSequence& f, const RealSequence& k, const Window& out) {
  RealSequence g = RealSequence::zeros(out);
  for (long n = out.lo; n <= out.hi; ++n) {
    double s = 0.0;
    for (long j = f.lo(); j <= f.hi(); ++j) s += f(j) * k(n - j);
    g.ref(n) = s;
  }
  return g;
}

RealSequence apply_route(const OperatorSpec& op, const std::string& route, const RealSequence& f, const Window& out,
                         double tol) {
  const auto sub = with_tol(QuadratureSpec::subordination_default(), tol);
  const auto frac = with_tol(QuadratureSpec::fractional_default(), tol);
  const double t = op.param;
  auto only = [&](std::initializer_list<const char*> allowed) {
    for (const char* r : allowed) {
      if (route == r) return;
    }
    throw UsageError("route " + route + " does not apply to " + std::string(to_string(op.kind)));
  };
  if (route == "spectral") return real_part(oracle_apply(op, f, out));

  switch (op.kind) {
    case OperatorKind::identity:
      only({"kernel"});
      return f.on(out);
    case OperatorKind::forward_difference:
      only({"kernel"});
      return forward_difference(f).on(out);
    case OperatorKind::backward_difference:
      only({"kernel"});
      return backward_difference(f).on(out);
    case OperatorKind::laplacian:
      only({"kernel"});
      return discrete_laplacian(f).on(out);
    case OperatorKind::heat:
      only({"kernel"});
      return heat_apply(f, t, out);
    case OperatorKind::poisson:
      only({"kernel"});
      return poisson_apply(f, t, out, sub);
    case OperatorKind::riesz:
    case OperatorKind::riesz_tilde:
      only({"kernel"});
      return riesz_apply(f, op.kind == OperatorKind::riesz ? Parity::plus : Parity::tilde, out);
    case OperatorKind::frac_laplacian:
      only({"kernel", "time_integral", "kernel_sum"});
      return fractional_laplacian_apply(f, t, out, frac,
                                        route == "kernel_sum" ? FractionalRoute::kernel_sum : FractionalRoute::time_integral);
    case OperatorKind::frac_integral:
      only({"kernel"});
      return fractional_integral_apply(f, t, out, frac);
    case OperatorKind::conj_poisson:
    case OperatorKind::conj_poisson_tilde:
      only({"kernel", "integral_of_DP"});
      return conjugate_poisson_apply(f, t, op.kind == OperatorKind::conj_poisson ? Parity::plus : Parity::tilde, out, sub,
                                     route == "integral_of_DP" ? ConjugateRoute::integral_of_DP : ConjugateRoute::kernel);
  }
  throw UsageError("unknown operator");
}

int cmd_apply(const std::string& op_name, const std::string& input, const std::string& route,
              const std::string& parity, const std::string& kernel_file, const Params& p) {
  const RealSequence f = read_input(input);
  const auto range = parse_range(p.range);
  if (!kernel_file.empty()) {
    const RealSequence k = read_input(kernel_file);
    const Window out = range ? *range : (f.support().empty() ? Window{0, 0} : Window{f.lo() + k.lo(), f.hi() + k.hi()});
    emit(p, convolve(f, k, out));
    return 0;
  }
  if (op_name.empty()) throw UsageError("--op or --kernel is required");
  const OperatorSpec op = operator_spec(op_name, parity, p);
  const Window out = range ? *range : default_window(op, f.support());
  emit(p, apply_route(op, route, f, out, p.tol));
  return 0;
}

int cmd_verify(const std::string& suite, double tol) {
  bool ok = true;
  for (const auto& check : verify::run(suite, tol)) {
    std::cout << verify::format(check) << '\n';
    ok = ok && check.pass();
  }
  std::cout.flush();
  return ok ? 0 : 1;
}

int cmd_spectrum(const std::string& op_name, const std::string& parity, int samples, const Params& p) {
  if (samples < 2) throw UsageError("--samples must be >= 2");
  const OperatorSpec op = operator_spec(op_name, parity, p);
  std::ofstream file;
  if (!p.out.empty()) {
    file.open(p.out);
    if (!file) throw std::runtime_error("cannot write " + p.out);
  }
  std::ostream& os = p.out.empty() ? std::cout : file;
  os << "theta,re,im\n";
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / samples;
    const Complex m = multiplier_eval(op, theta);
    os << io::format_double(theta) << ',' << io::format_double(m.real()) << ',' << io::format_double(m.imag()) << '\n';
  }
  return 0;
}

void add_common(CLI::App* cmd, Params& p) {
  cmd->add_option("--t", p.t, "time t >= 0");
  cmd->add_option("--sigma", p.sigma, "order sigma in (0,1)");
  cmd->add_option("--alpha", p.alpha, "order alpha in (0,1/2)");
  cmd->add_option("--tol", p.tol, "quadrature relative tolerance");
  cmd->add_option("--out", p.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete harmonic analysis on sequences over Z"};
  app.require_subcommand(1);
  Params p;

  std::string kind;
  auto* kernel = app.add_subcommand("kernel", "kernel table K(m) over --range");
  kernel->add_option("--kind", kind, "heat|poisson|conj_poisson|conj_poisson_tilde|riesz|riesz_tilde|frac_laplacian|frac_integral")
      ->required();
  kernel->add_option("--range", p.range, "lo:hi")->required();
  kernel->add_option("--format", p.format)->check(CLI::IsMember({"csv", "json"}));
  add_common(kernel, p);

  std::string op, input = "-", route = "kernel", parity = "plus", kernel_file;
  auto* apply = app.add_subcommand("apply", "apply an operator to a sequence file");
  apply->add_option("input", input, "sequence file (csv or json, - for stdin)");
  apply->add_option("--op", op, "operator name");
  apply->add_option("--kernel", kernel_file, "convolve with a kernel file instead of --op");
  apply->add_option("--route", route)->check(
      CLI::IsMember({"kernel", "spectral", "integral_of_DP", "time_integral", "kernel_sum"}));
  apply->add_option("--parity", parity)->check(CLI::IsMember({"plus", "tilde"}));
  apply->add_option("--range", p.range, "output window lo:hi");
  apply->add_option("--format", p.format)->check(CLI::IsMember({"csv", "json"}));
  add_common(apply, p);

  std::string suite = "all";
  double verify_tol = 1e-12;
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  verify_cmd->add_option("--suite", suite)->check(
      CLI::IsMember({"bessel", "semigroup", "fractional", "riesz", "cauchy_riemann", "weights", "all"}));
  verify_cmd->add_option("--tol", verify_tol, "quadrature relative tolerance");

  int samples = 64;
  auto* spectrum = app.add_subcommand("spectrum", "equispaced multiplier samples on [0, 2 pi)");
  spectrum->add_option("--op", op)->required();
  spectrum->add_option("--samples", samples);
  spectrum->add_option("--parity", parity)->check(CLI::IsMember({"plus", "tilde"}));
  add_common(spectrum, p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*kernel) return cmd_kernel(kind, p);
    if (*apply) return cmd_apply(op, input, route, parity, kernel_file, p);
    if (*verify_cmd) {
      with_tol(QuadratureSpec::subordination_default(), verify_tol);
      return cmd_verify(suite, verify_tol);
    }
    if (*spectrum) return cmd_spectrum(op, parity, samples, p);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\nachieved tolerance: " << e.achieved() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const DomainError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const ContractError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
