#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "varnorm/numerics.hpp"
#include "varnorm/sequence.hpp"

using namespace varnorm;

namespace {

WeightedSequence geometric(int n) {
  std::vector<double> x;
  for (int k = 1; k <= n; ++k) x.push_back(std::ldexp(1.0, -k));
  return uniform_sequence(x, 1.0);
}

}  // namespace

TEST_CASE("sequence modular") {
  CHECK(seq_modular(uniform_sequence({1.0, 0.0, 0.0}, 2.0), 1.0) == 1.0);
  const WeightedSequence s{{1.0, 1.0}, {1.0, 2.0}, {1.0, 1.0}};
  CHECK(std::abs(seq_modular(s, 2.0) - 0.75) <= 1e-15);
  CHECK(std::abs(seq_modular(geometric(40), 1.0) - (1.0 - std::ldexp(1.0, -40))) <= 1e-15);
  CHECK_THROWS_AS(seq_modular(WeightedSequence{{1.0}, {0.5}, {1.0}}, 1.0), DomainError);
  CHECK_THROWS_AS(seq_modular(WeightedSequence{{1.0, 2.0}, {2.0}, {1.0}}, 1.0), DomainError);
}

TEST_CASE("sequence norm") {
  CHECK(std::abs(seq_norm(uniform_sequence({1.0, 0.0}, 2.0)) - 1.0) <= 1e-10);
  CHECK(std::abs(seq_norm(uniform_sequence({-3.5, 0.0}, 2.0)) - 3.5) <= 1e-9);
  CHECK(std::abs(seq_norm(geometric(40)) - (1.0 - std::ldexp(1.0, -40))) <= 1e-10);
  CHECK(seq_norm(uniform_sequence({0.0, 0.0}, 3.0)) == 0.0);
}

TEST_CASE("sequence tail") {
  CHECK(seq_tail(uniform_sequence({1.0, 0.0, 0.0}, 2.0), 1) == 0.0);
  CHECK(seq_tail(uniform_sequence({1.0, 1.0, 1.0}, 1.0), 1) == 2.0);
  CHECK(std::abs(seq_tail(geometric(40), 10) - std::ldexp(1.0, -10) * (1 - std::ldexp(1.0, -30))) <= 1e-16);
  CHECK_THROWS_AS(seq_tail(geometric(5), 6), DomainError);
}

TEST_CASE("sequence properties") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(20 * U(rng));
    WeightedSequence s;
    for (int k = 0; k < n; ++k) {
      s.entries.push_back(10 * U(rng) - 5);
      s.exponents.push_back(1.0 + 3 * U(rng));
      s.weights.push_back(0.1 + 2 * U(rng));
    }
    const double nrm = seq_norm(s);
    CHECK(std::abs(seq_modular(s, nrm) - 1.0) <= 1e-8);
    double prev = seq_tail(s, 0);
    CHECK(prev == seq_modular(s, 1.0));
    for (int K = 1; K <= n; ++K) {
      const double v = seq_tail(s, K);
      CHECK(v <= prev);
      prev = v;
    }
    const double p = 1.0 + 3 * U(rng);
    const auto u = uniform_sequence(s.entries, p);
    double lp = 0.0;
    for (double x : s.entries) lp += std::pow(std::abs(x), p);
    lp = std::pow(lp, 1 / p);
    CHECK(std::abs(seq_norm(u) - lp) <= 1e-10 * lp);
  }
}
