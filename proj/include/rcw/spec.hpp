#pragma once

// Plain-text curve specifications.
//
//   spec       = { statement ( ";" | newline ) } ;
//   statement  = ( "x" | "y" ) "=" expr
//              | "name" "=" string
//              | ( "tol_residual" | "tol_cluster" | "tol_real_snap" ) "=" number
//              | coeffs-block ;
//   expr       = [ "+" | "-" ] term { ( "+" | "-" ) term } ;
//   term       = factor { ( "*" | "/" ) factor } ;
//   factor     = primary [ "^" [ "-" ] integer ] ;
//   primary    = number | "t" | "(" expr ")" | ( "+" | "-" ) factor ;
//   number     = digits [ "." digits ] [ ( "e" | "E" ) [ "+" | "-" ] digits ] ;
//   coeffs-block = "```coeffs" newline
//                  ( "p1" | "p2" | "q" ) ":" value { [","] value } newline ...
//                  "```" ;
//   value      = [ "-" ] number [ "/" digits ] ;
//
// '#' starts a comment running to the end of the line. All arithmetic is
// exact over the rationals; floating point appears only in to_curve.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcw/curve.hpp"

namespace rcw {

using Rational = boost::multiprecision::cpp_rational;
/// Ascending coefficients; no trailing zeros.
using ExactPoly = std::vector<Rational>;

struct CurveSpec {
  std::string name;
  ExactPoly p1, p2, q;  // q monic, x = p1 / q, y = p2 / q
  std::optional<double> tol_residual, tol_cluster, tol_real_snap;

  Tolerances tolerances() const;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// Throws ParseError with the 1-based line and column of the offending token.
CurveSpec parse_curve_spec(std::string_view text);

/// Expression form that parses back to identical coefficients.
std::string print_curve_spec(const CurveSpec& spec);

/// Exact spec from floating-point coefficients (every double is a rational).
CurveSpec spec_from_curve(const RationalPlaneCurve& c, std::string name = {});

RationalPlaneCurve to_curve(const CurveSpec& spec);

std::vector<double> to_double(const ExactPoly& p);

}  // namespace rcw
