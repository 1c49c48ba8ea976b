#include "varnorm/operators.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace varnorm {

RadiusGrid make_radius_grid(double r_min, double r_max, int count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 2) {
    throw DomainError("radius grid needs 0 < r_min < r_max and count >= 2");
  }
  RadiusGrid rg;
  rg.r_min = r_min;
  rg.r_max = r_max;
  rg.count = count;
  const double step = std::log(r_max / r_min) / (count - 1);
  for (int i = 0; i < count; ++i) rg.radii.push_back(r_min * std::exp(step * i));
  rg.radii.back() = r_max;
  return rg;
}

RadiusGrid with_radii(RadiusGrid rg, const std::vector<double>& extra) {
  for (double r : extra) {
    if (!(r > 0.0)) throw DomainError("radii must be positive");
    rg.radii.push_back(r);
  }
  std::sort(rg.radii.begin(), rg.radii.end());
  rg.radii.erase(std::unique(rg.radii.begin(), rg.radii.end()), rg.radii.end());
  rg.r_min = rg.radii.front();
  rg.r_max = rg.radii.back();
  rg.count = static_cast<int>(rg.radii.size());
  return rg;
}

namespace {

// Integral of |f| over [a, b] cut to the support of f.
double abs_integral(const RealFunction& f, double a, double b, const QuadratureSettings& quad) {
  if (!(a < b)) return 0.0;
  Interval iv(a, b);
  if (f.support) {
    auto c = intersect(iv, *f.support);
    if (!c || c->degenerate()) return 0.0;
    iv = *c;
  }
  return integrate([&](double x) { return std::abs(f(x)); }, iv, quad, f.hints());
}

// Composite 20-point Gauss-Legendre for int_{-1}^{1} g(u) du, split at the
// cuts inside. Every piece gets the same panel count whatever its length, so
// the result moves smoothly with the cuts; the outer adaptive norm integrals
// rely on that. Working in the window variable u keeps the kernel argument
// exact near a jump.
template <class F>
double window_rule(const F& g, std::vector<double> cuts, int n) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  std::vector<double> edges{-1.0};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (-1.0 < c && c < 1.0) edges.push_back(c);
  }
  edges.push_back(1.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    if (!(lo < hi)) continue;
    const double h = (hi - lo) / n;
    for (int j = 0; j < n; ++j) {
      const double pa = lo + j * h;
      const double pb = (j + 1 == n) ? hi : lo + (j + 1) * h;
      total += Rule::integrate(g, pa, pb);
    }
  }
  return total;
}

// 16 panels per piece, and 16 per unit of window length for long windows.
int panels_for(double window) {
  return static_cast<int>(std::ceil(std::max(16.0, 16.0 * window)));
}

}  // namespace

double maximal(const RealFunction& f, double x, const RadiusGrid& rg,
               const QuadratureSettings& quad) {
  double best = 0.0;
  double inner = 0.0;
  double prev = 0.0;
  for (double r : rg.radii) {
    // The ball integral grows ring by ring.
    inner += abs_integral(f, x - r, x - prev, quad) + abs_integral(f, x + prev, x + r, quad);
    prev = r;
    best = std::max(best, inner / (2.0 * r));
  }
  return best;
}

double standard_bump_mass() {
  static const double mass = [] {
    QuadratureSettings s;
    s.rel_tol = 1e-13;
    s.abs_tol = 1e-16;
    return integrate(standard_bump, Interval(-1.0, 1.0), s);
  }();
  return mass;
}

double Mollifier::operator()(double x) const {
  return normalization / epsilon * standard_bump(x / epsilon);
}

Mollifier make_mollifier(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("mollifier needs eps > 0");
  return Mollifier{epsilon, 1.0 / standard_bump_mass()};
}

double mollify(const RealFunction& f, double epsilon, double x) {
  const Mollifier phi = make_mollifier(epsilon);
  if (f.support && (f.support->hi <= x - epsilon || f.support->lo >= x + epsilon)) return 0.0;
  // y = x - eps u, so phi_eps(x - y) dy = c bump(u) du.
  const auto g = [&](double u) {
    const double k = standard_bump(u);
    return k == 0.0 ? 0.0 : k * f(x - epsilon * u);
  };
  std::vector<double> cuts;
  for (double b : f.breakpoints) cuts.push_back((x - b) / epsilon);
  return phi.normalization * window_rule(g, std::move(cuts), panels_for(2.0 * epsilon));
}

double ball_average(const RealFunction& f, double x, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ball_average needs r > 0");
  if (f.support && (f.support->hi <= x - r || f.support->lo >= x + r)) return 0.0;
  const auto g = [&](double u) { return f(x + r * u); };
  std::vector<double> cuts;
  for (double b : f.breakpoints) cuts.push_back((b - x) / r);
  return 0.5 * window_rule(g, std::move(cuts), panels_for(2.0 * r));
}

namespace {

void widen_support(RealFunction& out, const RealFunction& f, double by) {
  if (f.support) out.support = Interval(f.support->lo - by, f.support->hi + by);
  out.support_right_open = false;
  out.decay_rate = f.decay_rate;
}

}  // namespace

RealFunction mollified(const RealFunction& f, double epsilon) {
  make_mollifier(epsilon);
  RealFunction out;
  out.eval = [f, epsilon](double x) { return mollify(f, epsilon, x); };
  widen_support(out, f, epsilon);
  // Panel edges around the transition layers of the jumps of f.
  for (double b : f.breakpoints) {
    out.breakpoints.push_back(b - epsilon);
    out.breakpoints.push_back(b + epsilon);
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  for (const auto& d : f.derivatives) {
    RealFunction df;
    df.eval = d;
    df.breakpoints = f.breakpoints;
    out.derivatives.push_back([df, epsilon](double x) { return mollify(df, epsilon, x); });
  }
  return out;
}

RealFunction averaged(const RealFunction& f, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("averaged needs r > 0");
  RealFunction out;
  out.eval = [f, r](double x) { return ball_average(f, x, r); };
  widen_support(out, f, r);
  // The average has kinks where a jump of f crosses the window edge.
  for (double b : f.breakpoints) {
    out.breakpoints.push_back(b - r);
    out.breakpoints.push_back(b + r);
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  return out;
}

}  // namespace varnorm
