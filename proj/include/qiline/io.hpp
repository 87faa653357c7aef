#pragma once

// Text formats: the canonical PL map serialization, two-column rational
// tables, and exact-rational CSV.
//
// PL map format (one item per line, '#' starts a comment):
//
//   left_slope = 1
//   right_slope = 3
//   (0, 0)
//   (1, 2)
//
// Affine maps carry no points and an explicit "intercept = b" line. Rationals
// are written "p" or "p/q". serialize() output parses back to the same map and
// re-serializes byte-identically.

#include "qiline/pl_map.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qiline {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

std::string serialize(const FinitePLMap& f);
/// Parses the format above. Syntax problems raise ParseError (1-based
/// line/column); well-formed input describing a non-homeomorphism raises
/// InvariantError.
FinitePLMap parse_pl_map(std::string_view text);

using RationalPair = std::pair<Rational, Rational>;
/// Two rationals per line separated by whitespace and/or a comma; blank lines
/// and '#' comments are skipped. A first line that does not parse as numbers
/// is treated as a header.
std::vector<RationalPair> parse_pairs(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace qiline
