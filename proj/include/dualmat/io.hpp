#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "dualmat/char_suite.hpp"

namespace dualmat {

using Json = nlohmann::ordered_json;

/// Parses {"rows": m, "cols": n, "standard": [[[re, im], ...], ...], "dual": ...}.
/// Throws InvalidArgument naming the offending field.
DualMatrix matrix_from_json(const Json& j);
DualMatrix read_matrix(std::istream& in);
DualMatrix read_matrix_file(const std::string& path);

/// Rounds to 12 significant digits and maps |x| < 5e-13 (and -0) to 0, so that
/// serialized output is stable across runs.
double stable_number(double x);

/// Indented JSON with arrays of scalars kept on one line; ends with a newline.
void write_json(std::ostream& out, const Json& j);

Json to_json(const DualMatrix& a);
Json to_json(const DualReal& x);
Json to_json(const DualSvd& svd);
Json to_json(const HsDecomposition& h);
Json to_json(const InverseReport& report);
Json to_json(const EquivalenceReport& report);
Json to_json(const SuiteReport& report);

}  // namespace dualmat
