#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "varnorm/lebesgue.hpp"
#include "varnorm/operators.hpp"

using namespace varnorm;

namespace {

double composite_simpson(const Evaluator& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

RealFunction heaviside() {
  RealFunction f;
  f.eval = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
  f.breakpoints = {0.0};
  return f;
}

}  // namespace

TEST_CASE("radius grid") {
  const auto rg = make_radius_grid();
  CHECK(rg.count == 96);
  CHECK(rg.radii.front() == 1e-3);
  CHECK(rg.radii.back() == 128.0);
  for (std::size_t i = 1; i < rg.radii.size(); ++i) CHECK(rg.radii[i] > rg.radii[i - 1]);
  const auto more = with_radii(rg, {4.0, 4.0});
  CHECK(more.count == 97);
}

TEST_CASE("maximal function examples") {
  const auto rg = make_radius_grid();
  const RealFunction f = chi(-1, 1);
  CHECK(std::abs(maximal(f, 0.0, rg) - 1.0) <= 1e-12);
  // overlap / (2r) = (r - 2) / (2r) for 2 <= r <= 4 and 1 / r beyond: max 1/4 at r = 4.
  CHECK(std::abs(maximal(f, 3.0, with_radii(rg, {4.0})) - 0.25) <= 1e-12);
  const double coarse = maximal(f, 3.0, rg);
  CHECK(coarse <= 0.25 + 1e-12);
  CHECK(coarse >= 0.25 / 1.14);
  CHECK(maximal(zero_function(), 0.7, rg) == 0.0);
}

TEST_CASE("mollifier") {
  const double oracle = composite_simpson(standard_bump, -1, 1, 1'000'000);
  CHECK(std::abs(make_mollifier(1.0).normalization - 1.0 / oracle) <= 1e-12 / oracle);
  for (double eps : {1.0, 0.5, 0.1}) {
    const auto phi = make_mollifier(eps);
    QuadratureSettings s;
    s.rel_tol = 1e-12;
    CHECK(std::abs(integrate([&](double x) { return phi(x); }, Interval(-eps, eps), s) - 1.0) <= 1e-9);
    CHECK(phi(eps) == 0.0);
    CHECK(phi(-eps) == 0.0);
    CHECK(phi(0.0) > 0.0);
  }
  CHECK_THROWS_AS(make_mollifier(0.0), DomainError);
}

TEST_CASE("mollify examples") {
  const auto one = poly({1.0});
  const auto lin = poly({0.0, 1.0});
  for (double eps : {1.0, 0.3, 0.01}) {
    for (double x : {-2.0, 0.0, 0.37, 5.0}) {
      CHECK(std::abs(mollify(one, eps, x) - 1.0) <= 1e-9);
      CHECK(std::abs(mollify(lin, eps, x) - x) <= 1e-9);
    }
  }
  CHECK(std::abs(mollify(heaviside(), 1.0, 0.0) - 0.5) <= 1e-9);
}

TEST_CASE("ball average examples") {
  CHECK(std::abs(ball_average(poly({3.5}), 1.2, 0.7) - 3.5) <= 1e-12);
  CHECK(std::abs(ball_average(poly({0.0, 1.0}), -0.8, 2.0) + 0.8) <= 1e-12);
  CHECK(std::abs(ball_average(chi(0, 1), 0.0, 0.5) - 0.5) <= 1e-12);
  CHECK_THROWS_AS(ball_average(chi(0, 1), 0.0, 0.0), DomainError);
}

TEST_CASE("pointwise domination and maximal monotonicity") {
  const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625};
  const auto rg = with_radii(make_radius_grid(), eps);
  const std::vector<RealFunction> fs{chi(-1, 1), scale(gauss(0.5, 0.7), -2.0), sinw(3.0),
                                     prod(sinw(5.0), bump(0, 2))};
  for (const auto& f : fs) {
    for (int i = 0; i <= 16; ++i) {
      const double x = -4.0 + 0.5 * i;
      const double m = maximal(f, x, rg);
      for (double e : eps) CHECK(std::abs(mollify(f, e, x)) <= m + 1e-6);
    }
  }
  const auto small = scale(bump(0, 1), 0.5);
  const auto big = chi(-1, 1);
  for (double x : {-1.5, 0.0, 0.4, 3.0}) CHECK(maximal(small, x, rg) <= maximal(big, x, rg) + 1e-9);
}

TEST_CASE("approximation convergence along the ladder") {
  const auto sp = constant_space(2.0);
  const auto f = bump(0.0, 2.0);
  double prev_m = std::numeric_limits<double>::infinity();
  double prev_a = std::numeric_limits<double>::infinity();
  for (double e : {0.5, 0.25, 0.125, 0.0625}) {
    const double m = luxemburg_norm(difference(mollified(f, e), f), sp);
    const double a = luxemburg_norm(difference(averaged(f, e), f), sp);
    CHECK(m < prev_m);
    CHECK(a < prev_a);
    prev_m = m;
    prev_a = a;
  }
  CHECK(prev_m < 1e-3);
  CHECK(prev_a < 1e-3);
}
