#pragma once

#include <optional>
#include <vector>

#include "varnorm/function.hpp"
#include "varnorm/spaces.hpp"

namespace varnorm {

/// L^{p(.)}_w on the truncation window.
struct LebesgueSpaceSpec {
  ExponentField p;
  WeightField w;
  Interval truncation = default_truncation();
  QuadratureSettings quad{};
};

/// p = const, w = const, default truncation.
LebesgueSpaceSpec constant_space(double p, double w = 1.0);

/// L^{q(.)}_{w*} with q the conjugate exponent and w* the dual weight.
LebesgueSpaceSpec dual_space(const LebesgueSpaceSpec& sp);

/// Constant in the weighted Hoelder inequality (1/p- + 1/q- <= 2).
inline constexpr double kHolderConstant = 2.0;

/// Integral over the region of |f(x)|^p(x) w(x). Defaults to the truncation.
double modular(const RealFunction& f, const LebesgueSpaceSpec& sp,
               const std::optional<Interval>& region = std::nullopt);
double modular(const RealFunction& f, const LebesgueSpaceSpec& sp, const Region& region);

/// inf{lambda > 0 : modular(f / lambda) <= 1}.
double luxemburg_norm(const RealFunction& f, const LebesgueSpaceSpec& sp,
                      const std::optional<Interval>& region = std::nullopt);
double luxemburg_norm(const RealFunction& f, const LebesgueSpaceSpec& sp, const Region& region);

/// e^{-T r} / r for f with decay rate r, T the distance from 0 to the nearer
/// truncation endpoint; 0 for compactly supported f inside the window.
std::optional<double> truncation_tail_bound(const RealFunction& f, const LebesgueSpaceSpec& sp);

struct HolderCheck {
  double lhs = 0.0;
  double rhs_bound = 0.0;
  bool holds = false;
};

/// Integral of |fg| against 2 ||f||_{p,w} ||g||_{q,w*}.
HolderCheck holder_pairing(const RealFunction& f, const RealFunction& g,
                           const LebesgueSpaceSpec& sp);

struct CharNormCheck {
  double norm = 0.0;
  double C_K = 0.0;
  bool holds = false;
};

/// ||chi_K|| against C_K + 1 with C_K the w-mass of K.
CharNormCheck char_norm_bound(const Interval& K, const LebesgueSpaceSpec& sp);

/// K_j = {x in (a, b) : |x| <= j, dist(x, complement) >= 1/j}; empty when the
/// constraints leave nothing of positive length.
std::optional<Interval> exhaustion_set(const Interval& omega, int j);

/// [||f chi_{K_1}||, ..., ||f chi_{K_jmax}||] for the exhaustion of the open
/// interval omega.
std::vector<double> local_seminorms(const RealFunction& f, const LebesgueSpaceSpec& sp,
                                    const Interval& omega, int j_max);

}  // namespace varnorm
