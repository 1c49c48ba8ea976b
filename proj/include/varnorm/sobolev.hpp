#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "varnorm/lebesgue.hpp"

namespace varnorm {

/// W^{k,p(.)}_theta on R; the base space weight plays the role of theta.
struct SobolevSpaceSpec {
  LebesgueSpaceSpec base;
  int order = 1;
};

inline constexpr double kFiniteDifferenceStep = 1e-4;
/// Finite-difference levels allowed on top of the exact derivatives.
inline constexpr int kMaxFiniteDifferenceLevels = 2;

/// Central difference with step h and one Richardson level:
/// (4 D_{h/2} - D_h) / 3.
Evaluator finite_difference(const Evaluator& f, double h = kFiniteDifferenceStep);

/// D^order f: exact when available, otherwise finite differences applied
/// recursively on top of the highest exact derivative. Throws DomainError
/// when that needs more than kMaxFiniteDifferenceLevels levels.
RealFunction derivative(const RealFunction& f, int order);

/// [||f||, ||f'||, ..., ||D^k f||] in the base space.
std::vector<double> sobolev_order_norms(const RealFunction& f, const SobolevSpaceSpec& sp);

/// Sum of the per-order norms.
double sobolev_norm(const RealFunction& f, const SobolevSpaceSpec& sp);

/// Sum over orders 0..k of the base modular of D^j f.
double sobolev_modular(const RealFunction& f, const SobolevSpaceSpec& sp);

/// Integral over |x| > gamma of (|f|^p + |f'|^p) theta. Needs order 1.
double sobolev_tail_modular(const RealFunction& f, const SobolevSpaceSpec& sp, double gamma);

// ---------------------------------------------------------------------------
// Two-dimensional extension, order <= 1, on a box with a tensor rule.

using Evaluator2 = std::function<double(double, double)>;

struct RealFunction2 {
  Evaluator2 eval;
  /// Exact partials d/dx and d/dy when available.
  std::optional<Evaluator2> dx;
  std::optional<Evaluator2> dy;
};

struct Sobolev2Spec {
  Evaluator2 exponent;
  Evaluator2 weight;
  Interval box_x = Interval(-8.0, 8.0);
  Interval box_y = Interval(-8.0, 8.0);
  int order = 1;
  /// Gauss-Legendre panels per unit length along each axis.
  int panels_per_unit = 1;
};

/// Luxemburg norm of g on the box under the tensor rule.
double luxemburg_norm_2d(const Evaluator2& g, const Sobolev2Spec& sp);

/// ||f|| + ||d_x f|| + ||d_y f|| (just ||f|| for order 0).
double sobolev_norm_2d(const RealFunction2& f, const Sobolev2Spec& sp);

}  // namespace varnorm
