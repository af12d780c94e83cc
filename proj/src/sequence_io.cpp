#include "dharm/sequence_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dharm/errors.hpp"

namespace dharm::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& text, int line) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("line " + std::to_string(line) + ": cannot parse '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

RealSequence read_csv(std::istream& in) {
  std::vector<long> ns;
  std::vector<double> vs;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string row = trim(raw);
    if (row.empty() || row[0] == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos) throw DomainError("line " + std::to_string(line) + ": expected 'n,value'");
    const long n = parse_number<long>(trim(row.substr(0, comma)), line);
    const double v = parse_number<double>(trim(row.substr(comma + 1)), line);
    if (!ns.empty() && n <= ns.back()) throw DomainError("line " + std::to_string(line) + ": n must increase");
    if (!std::isfinite(v)) throw DomainError("line " + std::to_string(line) + ": non-finite value");
    ns.push_back(n);
    vs.push_back(v);
  }
  if (ns.empty()) return RealSequence();
  Eigen::VectorXd values = Eigen::VectorXd::Zero(ns.back() - ns.front() + 1);
  for (std::size_t i = 0; i < ns.size(); ++i) values[ns[i] - ns.front()] = vs[i];
  return RealSequence(ns.front(), std::move(values));
}

void write_csv(std::ostream& out, const RealSequence& f, bool header) {
  if (header) out << "# n,value\n";
  for (long n = f.lo(); n <= f.hi(); ++n) out << n << ',' << format_double(f(n)) << '\n';
}

RealSequence read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    const long lo = j.at("lo").get<long>();
    const auto vals = j.at("values").get<std::vector<double>>();
    return RealSequence(lo, Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad sequence JSON: ") + e.what());
  }
}

void write_json(std::ostream& out, const RealSequence& f) {
  // Values are written by hand so that they use the same shortest
  // round-trip formatting as the CSV writer.
  out << "{\"lo\": " << f.lo() << ", \"values\": [";
  for (long n = f.lo(); n <= f.hi(); ++n) out << (n == f.lo() ? "" : ", ") << format_double(f(n));
  out << "]}\n";
}

RealSequence read_any(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::istringstream again(text);
  if (first != std::string::npos && text[first] == '{') return read_json(again);
  return read_csv(again);
}

}  // namespace dharm::io
