#pragma once

#include <iosfwd>
#include <string>

#include "dharm/sequence.hpp"

namespace dharm::io {

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

/// Rows "n,value" with an optional "# n,value" header; n strictly
/// increasing, gaps read as zeros.
RealSequence read_csv(std::istream& in);
void write_csv(std::ostream& out, const RealSequence& f, bool header = true);

/// {"lo": int, "values": [...]}
RealSequence read_json(std::istream& in);
void write_json(std::ostream& out, const RealSequence& f);

/// Dispatches on a leading '{'.
RealSequence read_any(std::istream& in);

}  // namespace dharm::io
