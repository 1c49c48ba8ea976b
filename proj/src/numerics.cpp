#include "varnorm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace varnorm {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    std::ostringstream os;
    os << "invalid interval [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  }
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (hi < lo) return std::nullopt;
  return Interval(lo, hi);
}

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_depth < 1 || min_depth < 0 ||
      min_depth > max_depth || !(panel_width > 0.0)) {
    throw DomainError("invalid quadrature settings");
  }
}

void QuadratureHints::merge(const QuadratureHints& other) {
  breakpoints.insert(breakpoints.end(), other.breakpoints.begin(), other.breakpoints.end());
  singular_points.insert(singular_points.end(), other.singular_points.begin(),
                         other.singular_points.end());
}

namespace {

constexpr int kSubstitutionPower = 24;
// Panels narrower than this (relative to the abscissa) are accepted as they
// are: a jump that rounding moved off a panel edge cannot be located better,
// and its contribution is below width * |f|.
constexpr double kResolutionFloor = 0x1p-40;

struct Piece {
  double a;
  double b;
  bool singular_left;
  bool singular_right;
};

class Simpson {
public:
  Simpson(const Evaluator& f, const QuadratureSettings& s) : f_(f), s_(s) {}

  double sample(double x) const {
    const double v = f_(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand is not finite at x = " << x;
      throw QuadratureError(QuadratureError::Kind::non_finite, os.str());
    }
    return v;
  }

  // Panel endpoints are sampled one ulp inside so that a jump sitting on an
  // endpoint contributes its one-sided limit.
  double coarse(double a, double b) const {
    return (b - a) / 6.0 *
           (sample(std::nextafter(a, b)) + 4.0 * sample(0.5 * (a + b)) +
            sample(std::nextafter(b, a)));
  }

  double panel(double a, double b, double tol) const {
    const double fa = sample(std::nextafter(a, b));
    const double fm = sample(0.5 * (a + b));
    const double fb = sample(std::nextafter(b, a));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return refine(a, b, fa, fm, fb, whole, tol, 0);
  }

private:
  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = sample(lm);
    const double frm = sample(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= s_.min_depth && std::abs(delta) <= 15.0 * tol) {
      return left + right + delta / 15.0;
    }
    if (b - a <= kResolutionFloor * std::max({1.0, std::abs(a), std::abs(b)})) return left + right;
    if (depth >= s_.max_depth || !(a < lm && rm < b)) {
      std::ostringstream os;
      os.precision(17);
      os << "adaptive Simpson exhausted depth " << s_.max_depth << " on [" << a << ", " << b
         << "]";
      throw QuadratureError(QuadratureError::Kind::depth_exhausted, os.str());
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  const Evaluator& f_;
  const QuadratureSettings& s_;
};

// Interior boundaries are shifted by a deterministic irrational jitter so that
// dyadic refinements of neighbouring panels do not share a common lattice.
std::vector<double> panel_edges(double a, double b, double width) {
  const double len = b - a;
  const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil(len / width)));
  std::vector<double> edges(n + 1);
  edges.front() = a;
  edges.back() = b;
  constexpr double golden = 0.6180339887498949;
  for (std::size_t i = 1; i < n; ++i) {
    const double frac = std::fmod(static_cast<double>(i) * golden, 1.0);
    const double jitter = 0.25 * (frac - 0.5);
    edges[i] = a + len * (static_cast<double>(i) + jitter) / static_cast<double>(n);
  }
  return edges;
}

std::vector<Piece> split_pieces(const Interval& iv, const QuadratureHints& hints) {
  std::vector<double> cuts;
  std::vector<double> singular;
  for (double x : hints.breakpoints) {
    if (std::isfinite(x) && iv.lo < x && x < iv.hi) cuts.push_back(x);
  }
  for (double x : hints.singular_points) {
    if (!std::isfinite(x) || x < iv.lo || x > iv.hi) continue;
    singular.push_back(x);
    if (iv.lo < x && x < iv.hi) cuts.push_back(x);
  }
  // Singular points get their own unit-length neighbourhood piece.
  for (double x : singular) {
    if (x - 1.0 > iv.lo) cuts.push_back(x - 1.0);
    if (x + 1.0 < iv.hi) cuts.push_back(x + 1.0);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::sort(singular.begin(), singular.end());

  auto is_singular = [&](double x) {
    return std::binary_search(singular.begin(), singular.end(), x);
  };

  std::vector<double> edges;
  edges.push_back(iv.lo);
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(iv.hi);

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    if (!(a < b)) continue;
    const bool sl = is_singular(a);
    const bool sr = is_singular(b);
    if (sl && sr) {
      const double m = 0.5 * (a + b);
      pieces.push_back({a, m, true, false});
      pieces.push_back({m, b, false, true});
    } else {
      pieces.push_back({a, b, sl, sr});
    }
  }
  return pieces;
}

// Maps t in [0, 1] onto the piece so that the singular endpoint sits at t = 0.
Evaluator substituted(const Evaluator& f, const Piece& p) {
  const double len = p.b - p.a;
  const double anchor = p.singular_left ? p.a : p.b;
  const double sign = p.singular_left ? 1.0 : -1.0;
  return [&f, len, anchor, sign](double t) {
    if (t <= 0.0) return 0.0;
    const double tm1 = std::pow(t, kSubstitutionPower - 1);
    const double x = anchor + sign * len * tm1 * t;
    if (x == anchor) return 0.0;
    return f(x) * len * kSubstitutionPower * tm1;
  };
}

}  // namespace

double integrate(const Evaluator& f, const Interval& iv, const QuadratureSettings& s,
                 const QuadratureHints& hints) {
  s.validate();
  if (iv.degenerate()) return 0.0;

  const auto pieces = split_pieces(iv, hints);

  struct Panel {
    const Evaluator* fn;
    double a;
    double b;
    double x_len;  // length in x, used for tolerance allocation
  };
  std::vector<Evaluator> transformed;
  transformed.reserve(pieces.size());
  std::vector<Panel> panels;
  for (const auto& p : pieces) {
    if (p.singular_left || p.singular_right) {
      transformed.push_back(substituted(f, p));
    }
  }
  std::size_t next_transformed = 0;
  for (const auto& p : pieces) {
    if (p.singular_left || p.singular_right) {
      const Evaluator* fn = &transformed[next_transformed++];
      const double near = std::abs((*fn)(0x1p-20));
      if (near > 0.0 && near > 2.0 * std::abs((*fn)(0x1p-10))) {
        std::ostringstream os;
        os << "integrand is not integrable at x = " << (p.singular_left ? p.a : p.b);
        throw QuadratureError(QuadratureError::Kind::divergent, os.str());
      }
      const auto edges = panel_edges(0.0, 1.0, 1.0);
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        panels.push_back({fn, edges[i], edges[i + 1],
                          (p.b - p.a) * (edges[i + 1] - edges[i])});
      }
    } else {
      const auto edges = panel_edges(p.a, p.b, s.panel_width);
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        panels.push_back({&f, edges[i], edges[i + 1], edges[i + 1] - edges[i]});
      }
    }
  }

  std::vector<double> coarse(panels.size());
  double estimate = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    coarse[i] = std::abs(Simpson(*panels[i].fn, s).coarse(panels[i].a, panels[i].b));
    estimate += coarse[i];
  }
  const double tol = std::max(s.abs_tol, s.rel_tol * estimate);
  const double total = iv.length();

  // Half of the budget goes by length, half by share of the coarse estimate,
  // so a short panel carrying most of the mass is not starved.
  double sum = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& pn = panels[i];
    const double share = estimate > 0.0 ? coarse[i] / estimate : 0.0;
    const double panel_tol = tol * 0.5 * (pn.x_len / total + share);
    sum += Simpson(*pn.fn, s).panel(pn.a, pn.b, panel_tol);
  }
  return sum;
}

double solve_monotone_decreasing(const Evaluator& g, double target, double tol) {
  if (!(tol > 0.0) || !(target > 0.0)) {
    throw DomainError("solve_monotone_decreasing needs tol > 0 and target > 0");
  }
  double lo = 1.0;
  double hi = 1.0;
  const double g1 = g(1.0);
  if (std::abs(g1 - target) <= tol) return 1.0;
  if (g1 > target) {
    hi = 4.0;
    for (double v = g(hi); v > target; v = g(hi)) {
      if (std::abs(v - target) <= tol) return hi;
      lo = hi;
      hi *= 4.0;
      if (hi > 1e300) throw Error("solve_monotone_decreasing: no upper bracket");
    }
  } else {
    lo = 0.25;
    for (double v = g(lo); v < target; v = g(lo)) {
      if (std::abs(v - target) <= tol) return lo;
      hi = lo;
      if (lo <= kLambdaFloor) {
        throw NoBracketError("g stays below target down to the lambda floor");
      }
      lo = std::max(lo / 4.0, kLambdaFloor);
    }
  }

  double best = 0.5 * (lo + hi);
  double best_err = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    const double v = g(mid);
    const double err = std::abs(v - target);
    if (err < best_err) {
      best_err = err;
      best = mid;
    }
    if (err <= tol) return mid;
    if (v > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

NetResult greedy_net(std::span<const std::size_t> points, const Distance& dist, double eps) {
  if (!(eps > 0.0)) throw DomainError("greedy_net needs eps > 0");
  NetResult net;
  net.radius = eps;
  net.cover_map.resize(points.size());
  for (std::size_t pos = 0; pos < points.size(); ++pos) {
    const std::size_t p = points[pos];
    double nearest = std::numeric_limits<double>::infinity();
    std::size_t nearest_center = p;
    for (std::size_t c : net.centers) {
      const double d = dist(p, c);
      if (d < nearest) {
        nearest = d;
        nearest_center = c;
      }
    }
    if (nearest >= eps) {
      net.centers.push_back(p);
      net.cover_map[pos] = p;
    } else {
      net.cover_map[pos] = nearest_center;
    }
  }
  return net;
}

NetResult greedy_net(std::size_t n, const Distance& dist, double eps) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return greedy_net(idx, dist, eps);
}

}  // namespace varnorm
