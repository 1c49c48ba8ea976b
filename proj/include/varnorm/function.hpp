#pragma once

#include <optional>
#include <vector>

#include "varnorm/numerics.hpp"

namespace varnorm {

/// Symmetric truncation window used wherever an integral over R is needed.
inline Interval default_truncation() { return Interval(-64.0, 64.0); }

/// Finite union of closed intervals.
using Region = std::vector<Interval>;

/// {x in window : |x| > gamma}, as at most two intervals.
Region tail_region(double gamma, const Interval& window);

/// Evaluable real function on R with the metadata the integrators use.
struct RealFunction {
  Evaluator eval;
  /// f vanishes outside this set. With support_right_open the set is [lo, hi).
  std::optional<Interval> support;
  bool support_right_open = false;
  /// |f(x)| <= C exp(-rate |x|) for large |x|.
  std::optional<double> decay_rate;
  /// Jumps and kinks.
  std::vector<double> breakpoints;
  /// derivatives[j] evaluates D^{j+1} f exactly.
  std::vector<Evaluator> derivatives;

  double operator()(double x) const { return eval(x); }
  int exact_order() const { return static_cast<int>(derivatives.size()); }
  QuadratureHints hints() const;
};

/// Highest derivative order the primitives below propagate exactly.
inline constexpr int kMaxExactOrder = 2;

RealFunction zero_function();

/// Indicator of [a, b).
RealFunction chi(double a, double b);
/// exp(-((x - mu) / sigma)^2)
RealFunction gauss(double mu, double sigma);
/// exp(-1 / (1 - u^2)) with u = (x - center) / radius, zero for |u| >= 1.
RealFunction bump(double center, double radius);
/// sin(freq x)
RealFunction sinw(double freq);
/// c0 + c1 x + ... + cn x^n
RealFunction poly(std::vector<double> coeffs);
/// |f|^e
RealFunction abspow(const RealFunction& f, double e);
/// f(x - t)
RealFunction translate(const RealFunction& f, double t);
/// c f
RealFunction scale(const RealFunction& f, double c);
/// f(x / s)
RealFunction dilate(const RealFunction& f, double s);
RealFunction sum(const RealFunction& f, const RealFunction& g);
RealFunction prod(const RealFunction& f, const RealFunction& g);
/// f - g
RealFunction difference(const RealFunction& f, const RealFunction& g);
/// f on the region, zero elsewhere (closed intervals).
RealFunction restrict_to(const RealFunction& f, const Region& region);

/// Evaluates the raw standard bump exp(-1/(1-u^2)) and its first two
/// u-derivatives; zero outside (-1, 1).
double standard_bump(double u);
double standard_bump_d1(double u);
double standard_bump_d2(double u);

}  // namespace varnorm
