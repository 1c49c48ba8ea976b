#pragma once

// Unconstrained modular and Luxemburg kernels shared by the Lebesgue, A_p(.)
// and Sobolev code. The exponent here is an arbitrary positive evaluator.

#include <optional>

#include "varnorm/function.hpp"
#include "varnorm/numerics.hpp"

namespace varnorm::detail {

struct ModularProblem {
  Evaluator f;
  Evaluator exponent;
  Evaluator weight;
  Region region;
  QuadratureHints hints;
  QuadratureSettings quad;
  /// Set when the exponent is constant; the norm is then rho(f)^{1/p}.
  std::optional<double> constant_exponent;
};

/// Tolerance on |rho(f / lambda) - 1| used by every Luxemburg solve.
inline constexpr double kLuxemburgTol = 1e-8;

/// Sum over the region of the integral of (|f| / lambda)^exponent * weight.
double raw_modular(const ModularProblem& mp, double lambda);

/// inf{lambda > 0 : rho(f / lambda) <= 1}; 0 when the modular vanishes.
double raw_luxemburg(const ModularProblem& mp, double tol = kLuxemburgTol);

/// Intersects every interval of `region` with `window`, dropping empty parts.
Region clip_region(const Region& region, const Interval& window);

}  // namespace varnorm::detail
