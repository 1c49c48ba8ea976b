#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "varnorm/expr.hpp"

using namespace varnorm;
using namespace varnorm::expr;

namespace {

ParseError parse_failure(const std::string& text, Context ctx) {
  try {
    parse(text, ctx);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for " << text);
  return ParseError(0, {}, "");
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Arbitrary doubles, not rounded, so printing has to be exact to round-trip.
struct TreeGen {
  std::mt19937_64 rng;
  double u(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int k(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  std::string n(double x) { return format_number(x); }

  std::string function(int depth) {
    switch (k(depth > 0 ? 11 : 5)) {
      case 0: {
        const double a = u(-5, 5);
        return "chi(" + n(a) + "," + n(a + u(0.01, 4)) + ")";
      }
      case 1: return "gauss(" + n(u(-5, 5)) + "," + n(u(0.05, 3)) + ")";
      case 2: return "bump(" + n(u(-5, 5)) + "," + n(u(0.05, 3)) + ")";
      case 3: return "sinw(" + n(u(-7, 7)) + ")";
      case 4: return "poly(" + n(u(-2, 2)) + "," + n(u(-1e-3, 1e-3)) + "," + n(u(-1e5, 1e5)) + ")";
      case 5: return "abspow(" + function(depth - 1) + "," + n(u(0.3, 3)) + ")";
      case 6: return "translate(" + function(depth - 1) + "," + n(u(-3, 3)) + ")";
      case 7: return "scale(" + function(depth - 1) + "," + n(u(-1e-8, 1e8)) + ")";
      case 8: return "dilate(" + function(depth - 1) + "," + n(u(1e-3, 30)) + ")";
      case 9: return "sum(" + function(depth - 1) + "," + function(depth - 1) + ")";
      default: return "prod(" + function(depth - 1) + "," + function(depth - 1) + ")";
    }
  }
};

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

}  // namespace

TEST_CASE("indicator with support hint") {
  const RealFunction f = parse_function("chi(0,1)");
  CHECK(f(0.0) == 1.0);
  CHECK(f(0.5) == 1.0);
  CHECK(f(1.0) == 0.0);
  CHECK(f(-1e-12) == 0.0);
  REQUIRE(f.support.has_value());
  CHECK(f.support->lo == 0.0);
  CHECK(f.support->hi == 1.0);
  CHECK(f.support_right_open);
}

TEST_CASE("compositional semantics") {
  const RealFunction f = parse_function("scale(translate(gauss(0,1), 2), 3)");
  for (double x = -3.0; x <= 6.0; x += 0.25) CHECK(f(x) == doctest::Approx(3.0 * std::exp(-(x - 2) * (x - 2))).epsilon(1e-15));
  REQUIRE(f.exact_order() >= 1);
  CHECK(f.derivatives[0](2.5) == doctest::Approx(-6.0 * 0.5 * std::exp(-0.25)).epsilon(1e-14));
  CHECK(parse_function("poly(1,2,3)")(2.0) == 17.0);
  CHECK(parse_function("sinw(2)").derivatives.at(0)(0.0) == doctest::Approx(2.0));
  CHECK(parse_function("prod(bump(0,2),sinw(1))")(3.0) == 0.0);
  CHECK(parse_function("dilate(chi(0,1),2)")(1.5) == 1.0);
  CHECK(parse_function("abspow(poly(-2),0.5)")(7.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("exponent and weight contexts") {
  const ExponentField p = parse_exponent("loghold(2, 1)");
  CHECK(p.p_minus() == 2.0);
  CHECK(p.p_plus() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(p(0.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(parse_exponent("const(2.5)").is_constant());
  const ExponentField c = parse_exponent("clip(sinw(1), 1.5, 2.5)");
  CHECK(c(0.0) == 1.5);
  CHECK(c(std::acos(-1.0) / 2) == 1.5);
  CHECK(parse_exponent("clip(poly(3),1.5,2.5)")(1.0) == 2.5);

  const WeightField w = parse_weight("prod(powerw(0.5), sum(const(1), expw(0.1)))");
  CHECK(w(4.0) == doctest::Approx(2.0 * (1.0 + std::exp(0.4))).epsilon(1e-14));
  CHECK(w(-4.0) == doctest::Approx(w(4.0)).epsilon(1e-15));
  CHECK(parse_weight("const(3)")(10.0) == 3.0);
}

TEST_CASE("parse errors carry position and expected tokens") {
  auto e = parse_failure("chi(0,)", Context::function);
  CHECK(e.position() == 6);
  CHECK(e.expected() == std::vector<std::string>{"number"});

  e = parse_failure("foo(1)", Context::function);
  CHECK(e.position() == 0);
  CHECK(e.expected() == sorted({"abspow", "bump", "chi", "dilate", "gauss", "poly", "prod", "scale",
                                "sinw", "sum", "translate"}));

  e = parse_failure("chi(0,1", Context::function);
  CHECK(e.position() == 7);
  CHECK(e.expected() == std::vector<std::string>{"')'"});

  e = parse_failure("chi(0 1)", Context::function);
  CHECK(e.position() == 6);
  CHECK(e.expected() == std::vector<std::string>{"','"});

  e = parse_failure("poly(1 2)", Context::function);
  CHECK(e.expected() == std::vector<std::string>{"')'", "','"});

  e = parse_failure("chi(0,1) x", Context::function);
  CHECK(e.position() == 9);
  CHECK(e.expected() == std::vector<std::string>{"end of input"});

  e = parse_failure("sum(const(1), gauss(0,1))", Context::weight);
  CHECK(e.position() == 14);
  CHECK(e.expected() == std::vector<std::string>{"const", "expw", "powerw", "prod", "sum"});

  e = parse_failure("const(1)", Context::function);
  CHECK(e.position() == 0);
  e = parse_failure("gauss", Context::function);
  CHECK(e.position() == 5);
  CHECK(e.expected() == std::vector<std::string>{"'('"});
  e = parse_failure("sinw(1e999)", Context::function);
  CHECK(e.position() == 5);
  e = parse_failure("sinw(--1)", Context::function);
  CHECK(e.position() == 5);
  e = parse_failure("", Context::exponent);
  CHECK(e.position() == 0);
  CHECK(e.expected() == std::vector<std::string>{"clip", "const", "loghold"});
  CHECK(std::string(e.what()).find("position 0") != std::string::npos);
}

TEST_CASE("invalid parameters are domain errors") {
  CHECK_THROWS_AS(parse_function("chi(1,0)"), DomainError);
  CHECK_THROWS_AS(parse_function("gauss(0,0)"), DomainError);
  CHECK_THROWS_AS(parse_function("bump(0,-1)"), DomainError);
  CHECK_THROWS_AS(parse_function("dilate(chi(0,1),0)"), DomainError);
  CHECK_THROWS_AS(parse_exponent("const(1)"), DomainError);
  CHECK_THROWS_AS(parse_exponent("const(0.5)"), DomainError);
  CHECK_THROWS_AS(parse_weight("const(0)"), DomainError);
  CHECK_NOTHROW(parse_function("chi(-1,1)"));
}

TEST_CASE("printing") {
  CHECK(print(parse(" sum ( chi(0,1) , bump(0, 2.50) ) ", Context::function)) == "sum(chi(0,1),bump(0,2.5))");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "-0");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(print(parse("sinw(+2)", Context::function)) == "sinw(2)");
  CHECK(print(parse("poly(1.0E2,-3e-1)", Context::function)) == "poly(100,-0.3)");
  const Node n = parse("scale(gauss(0,1),3)", Context::function);
  CHECK(n.name == "scale");
  CHECK(n.args.size() == 2);
  CHECK(n.args[1].is_number());
  CHECK(n.args[1].pos == 17);
}

TEST_CASE("round trip evaluates identically") {
  TreeGen g{std::mt19937_64(2024)};
  for (int t = 0; t < 300; ++t) {
    const std::string text = g.function(3);
    const Node a = parse(text, Context::function);
    const std::string printed = print(a);
    const Node b = parse(printed, Context::function);
    CHECK(print(b) == printed);
    const RealFunction f = build_function(a), h = build_function(b);
    double gap = 0.0;
    for (int i = 0; i < 1024; ++i) {
      const double x = -8.0 + 16.0 * (i + 0.5) / 1024.0;
      if (!same(f(x), h(x))) gap = std::max(gap, std::abs(f(x) - h(x)));
    }
    CHECK_MESSAGE(gap <= 1e-15, text);
  }
}
