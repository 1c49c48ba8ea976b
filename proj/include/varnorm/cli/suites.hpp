#pragma once

// Seeded randomized property suites. Case i of a suite draws from its own
// mt19937_64 seeded with (seed, suite id, i), so results do not depend on
// scheduling or on how many cases run.
//
// Ranges (all uniform):
//   leaf functions  gauss(mu in [-3,3], sigma in [0.3,2])
//                   bump(c in [-3,3], r in [0.5,3])
//                   chi(a in [-3,2], a + l), l in [0.25,3]
//                   prod(sinw(f in [0.5,4]), gauss(...))
//   composites      scale by |c| in [0.2,3] with random sign,
//                   translate by t in [-2,2], sum of two leaves
//   smooth compact  bump(c in [-2,2], r in [3,4]), its translate by t in [-2,2],
//                   half the sum of two, or its product with gauss(mu in [-2,2],
//                   sigma in [2,4])
//   exponents       const(p in [1.2,4]); loghold(pinf in [1.2,3], a in [0,1.5]);
//                   clip(sum(poly(c in [1.5,3]), scale(sinw(f in [0.25,2]), A in [0.2,1.5])),
//                        pmin in [1.1,1.5], pmax in [2.5,4])
//   weights         const(c in [0.5,2]); expw(a in [-0.05,0.05]);
//                   sum(const(c), expw(a)); powerw(beta in [-0.9,0.9]) with
//                   the exponent forced to const(2)
//   amalgam q       one of 1, 1.5, 2, 3, inf

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace varnorm::cli {

struct Scenario {
  std::string function;
  std::string exponent;
  std::string weight;
  /// Homogeneity factor, |c| in [0.2, 3].
  double c = 1.0;
  /// Amalgam outer exponent.
  double q = 1.0;
  /// Second function (Hoelder pairings).
  std::string partner;
};

/// Generator for suite `suite_id`, case `index`.
std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t suite_id, std::uint64_t index);

std::string random_function(std::mt19937_64& rng);
/// Compactly supported: bump, chi, or products and sums of those.
std::string random_compact_function(std::mt19937_64& rng);
/// Smooth, unit sized, support radius >= 3.
std::string random_smooth_compact_function(std::mt19937_64& rng);
std::string random_exponent(std::mt19937_64& rng);
/// Draws a weight; switches `exponent` to const(2) when the weight is powerw.
std::string random_weight(std::mt19937_64& rng, std::string& exponent);
Scenario random_scenario(std::mt19937_64& rng);

struct SuiteResult {
  std::string name;
  std::string metric;
  double tolerance = 0.0;
  int cases = 0;
  int violations = 0;
  /// Largest metric value over the cases (0 when none ran).
  double worst = 0.0;
  /// Up to kMaxReportedFailures case descriptions.
  std::vector<std::string> failures;

  bool passed() const { return violations == 0; }
};

inline constexpr std::size_t kMaxReportedFailures = 5;

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases);

}  // namespace varnorm::cli
