#pragma once

#include <string>
#include <string_view>

#include "gcontact/graded_algebra.hpp"

namespace gcontact {

/// Malformed expression; column is 1-based within the expression text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t column)
      : Error("column " + std::to_string(column) + ": " + message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Parses a polynomial over the chart's generators.
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' '-'? digits)?
///   atom   := digits ('/' digits)? | name | '(' expr ')'
/// A slash is only accepted inside a rational literal such as 3/4; division
/// of expressions is rejected.  Negative powers are allowed on the formal
/// exponential only.  Products follow the Koszul sign rule, so the output of
/// GradedPoly::to_string parses back to the same polynomial.
GradedPoly parse_expression(std::string_view text, const ChartPtr& chart);

}  // namespace gcontact
