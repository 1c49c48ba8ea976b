#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace varnorm {

using Evaluator = std::function<double(double)>;

// ----------------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or a violated type invariant.
class DomainError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  enum class Kind { depth_exhausted, non_finite, divergent };

  QuadratureError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Raised by solve_monotone_decreasing when g stays below the target all the
/// way down to the lambda floor.
class NoBracketError : public Error {
public:
  using Error::Error;
};

// ----------------------------------------------------------------------------
// Interval
// ----------------------------------------------------------------------------

/// Closed interval [lo, hi]. Degenerate intervals (lo == hi) are allowed and
/// have zero length.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double length() const noexcept { return hi - lo; }
  double center() const noexcept { return 0.5 * (lo + hi); }
  bool degenerate() const noexcept { return !(lo < hi); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intersection of two closed intervals, empty when they do not meet.
std::optional<Interval> intersect(const Interval& a, const Interval& b);

// ----------------------------------------------------------------------------
// Quadrature
// ----------------------------------------------------------------------------

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 40;
  int min_depth = 3;
  /// Initial panels are at most this wide before adaptive refinement starts.
  double panel_width = 1.0;

  void validate() const;
};

/// Points where the integrand is known to be non-smooth (jumps, kinks) or
/// possibly unbounded (integrable endpoint singularities).
struct QuadratureHints {
  std::vector<double> breakpoints;
  std::vector<double> singular_points;

  void merge(const QuadratureHints& other);
};

/// Adaptive Simpson quadrature of `f` over `iv`.
///
/// The interval is split at every hint inside it, then into panels of width at
/// most `s.panel_width`; each panel is refined left-first. Pieces adjacent to a
/// singular point are integrated after the substitution x = a + L t^24, which
/// regularizes |x - a|^beta for beta > -1 + 1/24. Returns I with
/// |I - exact| <= max(abs_tol, rel_tol |I|) when the integrand is resolvable.
///
/// Throws QuadratureError on depth exhaustion, when f yields NaN/inf, or
/// (kind divergent) when the substituted integrand grows toward a singular
/// endpoint, i.e. |x - a|^beta with beta below about -1 + 1/24.
double integrate(const Evaluator& f, const Interval& iv, const QuadratureSettings& s = {},
                 const QuadratureHints& hints = {});

// ----------------------------------------------------------------------------
// Root finding
// ----------------------------------------------------------------------------

inline constexpr double kLambdaFloor = 1e-12;

/// Finds lambda with |g(lambda) - target| <= tol for a continuous, strictly
/// decreasing g with g -> 0 at infinity. The bracket is grown geometrically
/// from lambda = 1 by a factor 4 in the needed direction, then bisected.
double solve_monotone_decreasing(const Evaluator& g, double target, double tol);

// ----------------------------------------------------------------------------
// Greedy covering
// ----------------------------------------------------------------------------

struct NetResult {
  std::vector<std::size_t> centers;
  double radius = 0.0;
  /// cover_map[i] is the point index of the center covering points[i].
  std::vector<std::size_t> cover_map;
};

using Distance = std::function<double(std::size_t, std::size_t)>;

/// Scans `points` in order; a point becomes a center iff its distance to every
/// existing center is >= eps. Non-centers are mapped to their nearest center
/// (earliest on ties). Only point-to-center distances are evaluated.
NetResult greedy_net(std::span<const std::size_t> points, const Distance& dist, double eps);

/// Convenience overload for points 0..n-1.
NetResult greedy_net(std::size_t n, const Distance& dist, double eps);

}  // namespace varnorm
