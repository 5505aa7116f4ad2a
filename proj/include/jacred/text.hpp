#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jacred/poly.hpp"

namespace jacred {

/// A polynomial map in the line-oriented text format:
///
///   # comment
///   vars x y
///   meta key free text
///   poly p = x + (x*y - 1)^2
///
/// Variable identity is positional; names live only here.
struct MapDocument {
  std::vector<std::string> vars;
  std::vector<std::pair<std::string, Poly>> components;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::vector<Poly> polys() const;
  /// Value of the first metadata entry with this key, or empty.
  std::string meta(std::string_view key) const;

  friend bool operator==(const MapDocument&, const MapDocument&) = default;
};

/// Throws ParseError carrying the line and column of the offending token.
MapDocument parse_map(std::string_view text);

/// Canonical text; parse_map(print_map(d)) == d.
std::string print_map(const MapDocument& doc);

/// Parses a single expression over the given variable names.
Poly parse_poly(std::string_view expr, std::span<const std::string> vars);

/// Canonical expression text: terms in descending graded-lex order.
std::string print_poly(const Poly& p, std::span<const std::string> vars);

/// x1 .. xn
std::vector<std::string> default_var_names(std::size_t n);

/// Extends `names` to `n` entries with fresh identifiers that do not clash.
std::vector<std::string> extend_var_names(std::vector<std::string> names, std::size_t n,
                                          std::string_view stem = "w");

/// Builds a document from positional polynomials, naming components f1..fm.
MapDocument make_document(std::vector<std::string> vars, std::span<const Poly> polys);

}  // namespace jacred
