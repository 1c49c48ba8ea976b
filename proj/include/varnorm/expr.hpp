#pragma once

// Expression language for functions, exponents and weights.
//
//   function: chi(a,b) | gauss(mu,sigma) | bump(center,radius) | sinw(freq)
//           | poly(c0,...,cn) | abspow(f,e) | translate(f,t) | scale(f,c)
//           | dilate(f,s) | sum(f,g) | prod(f,g)
//   exponent: const(p) | loghold(pinf,a) | clip(f,pmin,pmax)
//   weight:   const(c) | powerw(beta) | expw(a) | sum(w,v) | prod(w,v)
//
// Numbers are decimal literals with optional sign and exponent. Whitespace
// between tokens is ignored.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "varnorm/function.hpp"
#include "varnorm/numerics.hpp"
#include "varnorm/spaces.hpp"

namespace varnorm::expr {

enum class Context { function, exponent, weight };

const char* to_string(Context c);

struct Node {
  /// Primitive name; empty for a number literal.
  std::string name;
  double value = 0.0;
  std::vector<Node> args;
  /// Offset of the first character in the source text.
  std::size_t pos = 0;

  bool is_number() const { return name.empty(); }
};

class ParseError : public Error {
public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found);

  std::size_t position() const noexcept { return position_; }
  /// Sorted tokens acceptable at position().
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Syntax and arity only; parameter values are checked by the builders.
Node parse(std::string_view text, Context ctx);

/// Canonical text: no whitespace, numbers in shortest round-trip form.
std::string print(const Node& n);
std::string format_number(double x);

RealFunction build_function(const Node& n);
ExponentField build_exponent(const Node& n, const Interval& domain = default_truncation());
WeightField build_weight(const Node& n, const Interval& domain = default_truncation());

RealFunction parse_function(std::string_view text);
ExponentField parse_exponent(std::string_view text, const Interval& domain = default_truncation());
WeightField parse_weight(std::string_view text, const Interval& domain = default_truncation());

}  // namespace varnorm::expr
