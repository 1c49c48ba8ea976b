#include "varnorm/modular.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace varnorm::detail {

namespace {

struct Sample {
  double abs_f;
  double exponent;
  double weight;
};

// Samples reused across the lambda iterations of one Luxemburg solve.
class SampleCache {
public:
  explicit SampleCache(const ModularProblem& mp) : mp_(mp) {}

  const Sample& at(double x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    const double a = std::abs(mp_.f(x));
    Sample s{a, 0.0, 0.0};
    if (a != 0.0) {
      s.exponent = mp_.exponent(x);
      s.weight = mp_.weight(x);
    }
    return cache_.emplace(x, s).first->second;
  }

private:
  const ModularProblem& mp_;
  std::unordered_map<double, Sample> cache_;
};

double term(const Sample& s, double lambda) {
  if (s.abs_f == 0.0) return 0.0;
  return std::pow(s.abs_f / lambda, s.exponent) * s.weight;
}

double modular_cached(const ModularProblem& mp, double lambda, SampleCache& cache) {
  double total = 0.0;
  const Evaluator integrand = [&](double x) { return term(cache.at(x), lambda); };
  for (const auto& iv : mp.region) {
    if (iv.degenerate()) continue;
    total += integrate(integrand, iv, mp.quad, mp.hints);
  }
  return total;
}

}  // namespace

Region clip_region(const Region& region, const Interval& window) {
  Region out;
  for (const auto& iv : region) {
    if (auto c = intersect(iv, window); c && !c->degenerate()) out.push_back(*c);
  }
  return out;
}

double raw_modular(const ModularProblem& mp, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("modular scale must be positive");
  SampleCache cache(mp);
  return modular_cached(mp, lambda, cache);
}

double raw_luxemburg(const ModularProblem& mp, double tol) {
  SampleCache cache(mp);
  const Evaluator g = [&](double lambda) {
    try {
      return modular_cached(mp, lambda, cache);
    } catch (const QuadratureError& e) {
      if (e.kind() == QuadratureError::Kind::non_finite) {
        return std::numeric_limits<double>::infinity();
      }
      throw;
    }
  };
  const double g1 = g(1.0);
  if (g1 == 0.0) return 0.0;
  if (mp.constant_exponent) return std::pow(g1, 1.0 / *mp.constant_exponent);
  try {
    return solve_monotone_decreasing(g, 1.0, tol);
  } catch (const NoBracketError&) {
    return 0.0;
  }
}

}  // namespace varnorm::detail
