#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "varnorm/sobolev.hpp"

using namespace varnorm;

namespace {

double composite_simpson(const Evaluator& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Hand-differentiated bump: b(u) = exp(-1/(1-u^2)), b'(u) = -2u/(1-u^2)^2 b(u).
double bump_prime(double u) {
  if (std::abs(u) >= 1) return 0.0;
  const double s = 1 - u * u;
  return -2 * u / (s * s) * std::exp(-1 / s);
}

RealFunction strip_derivatives(RealFunction f) {
  f.derivatives.clear();
  return f;
}

SobolevSpaceSpec unit_sobolev(int k) { return SobolevSpaceSpec{constant_space(2.0), k}; }

}  // namespace

TEST_CASE("derivative: finite differences and exact rules") {
  const auto sq = strip_derivatives(poly({0, 0, 1}));
  const auto d = derivative(sq, 1);
  for (double x : {-3.0, -0.2, 0.0, 1.7, 10.0}) CHECK(std::abs(d(x) - 2 * x) <= 1e-8);

  const auto s = strip_derivatives(sinw(1.0));
  const auto d2 = derivative(s, 2);
  for (double x : {-3.0, -0.2, 0.0, 1.7}) CHECK(std::abs(d2(x) + std::sin(x)) <= 1e-6);

  const auto b = bump(0, 1);
  const auto bd = derivative(b, 1);
  const auto bfd = derivative(strip_derivatives(b), 1);
  for (double x : {-0.9, -0.5, 0.0, 0.3, 0.75}) {
    CHECK(std::abs(bd(x) - bump_prime(x)) <= 1e-15);
    CHECK(std::abs(bfd(x) - bump_prime(x)) <= 1e-8);
  }
  CHECK_THROWS_AS(derivative(strip_derivatives(sinw(1.0)), 3), DomainError);
  CHECK_NOTHROW(derivative(sinw(1.0), 3));
  CHECK(derivative(sinw(1.0), 0)(0.4) == std::sin(0.4));
}

TEST_CASE("Sobolev norm examples") {
  const auto g = gauss(0, 1);
  CHECK(std::abs(sobolev_norm(g, unit_sobolev(0)) - std::pow(std::numbers::pi / 2, 0.25)) <= 1e-8);
  CHECK(sobolev_norm(zero_function(), unit_sobolev(2)) == 0.0);

  const auto f = prod(sinw(1.0), dilate(bump(0, 1), 4.0));
  const double n0 = std::sqrt(composite_simpson([](double x) {
    const double v = std::sin(x) * standard_bump(x / 4);
    return v * v;
  }, -4, 4, 400000));
  const double n1 = std::sqrt(composite_simpson([](double x) {
    const double v = std::cos(x) * standard_bump(x / 4) + std::sin(x) * bump_prime(x / 4) / 4;
    return v * v;
  }, -4, 4, 400000));
  CHECK(std::abs(n0 - 0.53124396463056) < 1e-12);
  CHECK(std::abs(n1 - 0.55957248478903) < 1e-12);
  const auto sp = unit_sobolev(1);
  CHECK(std::abs(sobolev_norm(f, sp) - (n0 + n1)) <= 1e-8);
  CHECK(std::abs(sobolev_norm(strip_derivatives(f), sp) - (n0 + n1)) <= 1e-7);
}

TEST_CASE("Sobolev invariants") {
  const auto f = scale(translate(gauss(0, 0.8), 0.7), 1.3);
  LebesgueSpaceSpec base{exponent_loghold(1.6, 0.8), weight_sum(weight_const(1.0), weight_power(0.5))};
  CHECK(sobolev_norm(f, SobolevSpaceSpec{base, 0}) == luxemburg_norm(f, base));

  const SobolevSpaceSpec sp{base, 2};
  double sum_norms = 0.0;
  for (int j = 0; j <= 2; ++j) sum_norms += luxemburg_norm(derivative(f, j), base);
  CHECK(std::abs(sobolev_norm(f, sp) - sum_norms) <= 1e-12);

  const SobolevSpaceSpec sp1{base, 1};
  double prev = sobolev_tail_modular(f, sp1, 0.0);
  const double full = modular(f, base) + modular(derivative(f, 1), base);
  CHECK(std::abs(prev - full) <= 1e-10);
  CHECK(std::abs(sobolev_modular(f, sp1) - full) <= 1e-10);
  for (double g : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double v = sobolev_tail_modular(f, sp1, g);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("Sobolev tail modular examples") {
  const auto sp = unit_sobolev(1);
  CHECK(sobolev_tail_modular(bump(0.5, 1.0), sp, 1.5) == 0.0);
  const double closed = 2 * std::sqrt(std::numbers::pi / 2);
  CHECK(std::abs(sobolev_tail_modular(gauss(0, 1), sp, 0.0) - closed) <= 1e-8);
  CHECK(sobolev_tail_modular(gauss(0, 1), sp, 4.0) < 1e-6);
  CHECK_THROWS_AS(sobolev_tail_modular(gauss(0, 1), unit_sobolev(2), 1.0), DomainError);
}

TEST_CASE("two-dimensional extension") {
  Sobolev2Spec sp;
  sp.exponent = [](double, double) { return 2.0; };
  sp.weight = [](double, double) { return 1.0; };
  RealFunction2 f;
  f.eval = [](double x, double y) { return std::exp(-x * x - y * y); };
  const double expected = 3 * std::sqrt(std::numbers::pi / 2);
  CHECK(std::abs(sobolev_norm_2d(f, sp) - expected) <= 1e-7);
  f.dx = [](double x, double y) { return -2 * x * std::exp(-x * x - y * y); };
  f.dy = [](double x, double y) { return -2 * y * std::exp(-x * x - y * y); };
  CHECK(std::abs(sobolev_norm_2d(f, sp) - expected) <= 1e-9);
  sp.order = 0;
  CHECK(std::abs(sobolev_norm_2d(f, sp) - std::sqrt(std::numbers::pi / 2)) <= 1e-9);
  sp.order = 2;
  CHECK_THROWS_AS(sobolev_norm_2d(f, sp), DomainError);
}
