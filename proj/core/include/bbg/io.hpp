#pragma once

#include <iosfwd>
#include <string>

#include "bbg/matrix_backend.hpp"
#include "bbg/twisted_datum.hpp"

namespace bbg {

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(const std::string& s);

/// Field description: line 1 `p` in decimal, line 2 `n`, line 3 either
/// `poly c0 c1 ... cn` (decimal coefficients, ascending) or `table` followed
/// by n^3 decimal entries row-major in (i, j, k).
FieldPtr read_field_description(std::istream& in);
FieldPtr read_field_description_file(const std::string& path);
void write_field_description(std::ostream& out, const ExplicitField& F);

struct GeneratorFile {
  FieldPtr field;
  unsigned dim = 0;
  bool quotient = false;
  std::vector<Matrix> generators;
};

/// Generator file: field description, then `dim d`, `quotient 0|1`, then one
/// matrix per line as whitespace-separated entries `c0:c1:...:c_{n-1}`
/// row-major.
GeneratorFile read_generator_file(std::istream& in);
GeneratorFile read_generator_file(const std::string& path);
void write_generator_file(std::ostream& out, const ExplicitField& F, unsigned dim,
                          bool quotient, std::span<const Matrix> gens);

/// Datum file: header `rank R q Q`, then per node four lines:
///   K <hex> <hex> ...
///   Tsplit <hex> order <factored or decimal>
///   Ttwist <hex> order <factored or decimal>
///   W <hex>
/// Factored orders use `a^b·c^d` (also accepted with '*' as the separator);
/// a plain decimal declares the order without a factorization.
CurtisTitsDatum read_datum_file(std::istream& in);
CurtisTitsDatum read_datum_file(const std::string& path);
void write_datum_file(std::ostream& out, const CurtisTitsDatum& datum);

std::string format_declared_order(const DeclaredOrder& o);
DeclaredOrder parse_declared_order(const std::string& s);

}  // namespace bbg
