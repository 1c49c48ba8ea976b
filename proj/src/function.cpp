#include "varnorm/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace varnorm {

Region tail_region(double gamma, const Interval& window) {
  Region out;
  if (gamma < 0.0) {
    out.push_back(window);
    return out;
  }
  if (window.lo < -gamma) out.emplace_back(window.lo, std::min(-gamma, window.hi));
  if (window.hi > gamma) out.emplace_back(std::max(gamma, window.lo), window.hi);
  return out;
}

QuadratureHints RealFunction::hints() const {
  QuadratureHints h;
  h.breakpoints = breakpoints;
  if (support) {
    h.breakpoints.push_back(support->lo);
    h.breakpoints.push_back(support->hi);
  }
  return h;
}

namespace {

std::vector<double> merged(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> mapped(const std::vector<double>& xs, double mul, double add) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(x * mul + add);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RealFunction zero_function() {
  RealFunction f;
  f.eval = [](double) { return 0.0; };
  f.support = Interval(0.0, 0.0);
  f.derivatives = {[](double) { return 0.0; }, [](double) { return 0.0; }};
  return f;
}

RealFunction chi(double a, double b) {
  if (!(a < b)) throw DomainError("chi(a, b) needs a < b");
  RealFunction f;
  f.eval = [a, b](double x) { return (a <= x && x < b) ? 1.0 : 0.0; };
  f.support = Interval(a, b);
  f.support_right_open = true;
  f.breakpoints = {a, b};
  return f;
}

RealFunction gauss(double mu, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("gauss(mu, sigma) needs sigma > 0");
  RealFunction f;
  f.eval = [mu, sigma](double x) {
    const double u = (x - mu) / sigma;
    return std::exp(-u * u);
  };
  f.derivatives = {
      [mu, sigma](double x) {
        const double u = (x - mu) / sigma;
        return -2.0 * u / sigma * std::exp(-u * u);
      },
      [mu, sigma](double x) {
        const double u = (x - mu) / sigma;
        return (4.0 * u * u - 2.0) / (sigma * sigma) * std::exp(-u * u);
      },
  };
  return f;
}

double standard_bump(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double standard_bump_d1(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double s = 1.0 - u * u;
  return -2.0 * u / (s * s) * std::exp(-1.0 / s);
}

double standard_bump_d2(double u) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  const double s = 1.0 - u * u;
  const double g1 = -2.0 * u / (s * s);
  const double g2 = (-2.0 - 6.0 * u * u) / (s * s * s);
  return (g2 + g1 * g1) * std::exp(-1.0 / s);
}

RealFunction bump(double center, double radius) {
  if (!(radius > 0.0)) throw DomainError("bump(center, radius) needs radius > 0");
  RealFunction f;
  f.eval = [center, radius](double x) { return standard_bump((x - center) / radius); };
  f.support = Interval(center - radius, center + radius);
  f.support_right_open = true;
  f.breakpoints = {center - radius, center + radius};
  f.derivatives = {
      [center, radius](double x) { return standard_bump_d1((x - center) / radius) / radius; },
      [center, radius](double x) {
        return standard_bump_d2((x - center) / radius) / (radius * radius);
      },
  };
  return f;
}

RealFunction sinw(double freq) {
  RealFunction f;
  f.eval = [freq](double x) { return std::sin(freq * x); };
  f.derivatives = {
      [freq](double x) { return freq * std::cos(freq * x); },
      [freq](double x) { return -freq * freq * std::sin(freq * x); },
  };
  return f;
}

RealFunction poly(std::vector<double> coeffs) {
  if (coeffs.empty()) throw DomainError("poly needs at least one coefficient");
  auto horner = [](const std::vector<double>& c) {
    return [c](double x) {
      double v = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
      return v;
    };
  };
  auto differentiate = [](const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
    if (d.empty()) d.push_back(0.0);
    return d;
  };
  RealFunction f;
  f.eval = horner(coeffs);
  auto d1 = differentiate(coeffs);
  auto d2 = differentiate(d1);
  f.derivatives = {horner(d1), horner(d2)};
  return f;
}

RealFunction abspow(const RealFunction& f, double e) {
  if (!(e > 0.0)) throw DomainError("abspow(f, e) needs e > 0");
  RealFunction out;
  const Evaluator g = f.eval;
  out.eval = [g, e](double x) { return std::pow(std::abs(g(x)), e); };
  out.support = f.support;
  out.support_right_open = f.support_right_open;
  if (f.decay_rate) out.decay_rate = *f.decay_rate * e;
  out.breakpoints = f.breakpoints;
  if (f.exact_order() >= 1 && e >= 1.0) {
    const Evaluator g1 = f.derivatives[0];
    out.derivatives.push_back([g, g1, e](double x) {
      const double v = g(x);
      if (v == 0.0) return e == 1.0 ? 0.0 : 0.0;
      return e * std::pow(std::abs(v), e - 1.0) * (v > 0.0 ? 1.0 : -1.0) * g1(x);
    });
    if (f.exact_order() >= 2 && e >= 2.0) {
      const Evaluator g2 = f.derivatives[1];
      out.derivatives.push_back([g, g1, g2, e](double x) {
        const double v = g(x);
        const double a = std::abs(v);
        const double sgn = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        const double d1 = g1(x);
        return e * (e - 1.0) * std::pow(a, e - 2.0) * d1 * d1 +
               e * std::pow(a, e - 1.0) * sgn * g2(x);
      });
    }
  }
  return out;
}

RealFunction translate(const RealFunction& f, double t) {
  RealFunction out;
  const Evaluator g = f.eval;
  out.eval = [g, t](double x) { return g(x - t); };
  if (f.support) out.support = Interval(f.support->lo + t, f.support->hi + t);
  out.support_right_open = f.support_right_open;
  out.decay_rate = f.decay_rate;
  out.breakpoints = mapped(f.breakpoints, 1.0, t);
  for (const auto& d : f.derivatives) {
    out.derivatives.push_back([d, t](double x) { return d(x - t); });
  }
  return out;
}

RealFunction scale(const RealFunction& f, double c) {
  RealFunction out;
  const Evaluator g = f.eval;
  out.eval = [g, c](double x) { return c * g(x); };
  out.support = f.support;
  out.support_right_open = f.support_right_open;
  out.decay_rate = f.decay_rate;
  out.breakpoints = f.breakpoints;
  for (const auto& d : f.derivatives) {
    out.derivatives.push_back([d, c](double x) { return c * d(x); });
  }
  return out;
}

RealFunction dilate(const RealFunction& f, double s) {
  if (!(s > 0.0)) throw DomainError("dilate(f, s) needs s > 0");
  RealFunction out;
  const Evaluator g = f.eval;
  out.eval = [g, s](double x) { return g(x / s); };
  if (f.support) out.support = Interval(f.support->lo * s, f.support->hi * s);
  out.support_right_open = f.support_right_open;
  if (f.decay_rate) out.decay_rate = *f.decay_rate / s;
  out.breakpoints = mapped(f.breakpoints, s, 0.0);
  double factor = 1.0;
  for (const auto& d : f.derivatives) {
    factor /= s;
    out.derivatives.push_back([d, s, factor](double x) { return factor * d(x / s); });
  }
  return out;
}

RealFunction sum(const RealFunction& f, const RealFunction& g) {
  RealFunction out;
  const Evaluator a = f.eval;
  const Evaluator b = g.eval;
  out.eval = [a, b](double x) { return a(x) + b(x); };
  if (f.support && g.support) {
    out.support = Interval(std::min(f.support->lo, g.support->lo),
                           std::max(f.support->hi, g.support->hi));
    const bool f_hi = f.support->hi >= g.support->hi;
    const bool g_hi = g.support->hi >= f.support->hi;
    out.support_right_open =
        (!f_hi || f.support_right_open) && (!g_hi || g.support_right_open);
  }
  if (f.decay_rate && g.decay_rate) out.decay_rate = std::min(*f.decay_rate, *g.decay_rate);
  if (f.support && g.decay_rate) out.decay_rate = g.decay_rate;
  if (g.support && f.decay_rate) out.decay_rate = f.decay_rate;
  out.breakpoints = merged(f.breakpoints, g.breakpoints);
  const int order = std::min(f.exact_order(), g.exact_order());
  for (int j = 0; j < order; ++j) {
    const Evaluator da = f.derivatives[j];
    const Evaluator db = g.derivatives[j];
    out.derivatives.push_back([da, db](double x) { return da(x) + db(x); });
  }
  return out;
}

RealFunction difference(const RealFunction& f, const RealFunction& g) {
  return sum(f, scale(g, -1.0));
}

RealFunction prod(const RealFunction& f, const RealFunction& g) {
  RealFunction out;
  const Evaluator a = f.eval;
  const Evaluator b = g.eval;
  out.eval = [a, b](double x) { return a(x) * b(x); };
  if (f.support && g.support) {
    const double lo = std::max(f.support->lo, g.support->lo);
    const double hi = std::min(f.support->hi, g.support->hi);
    if (hi < lo) {
      return zero_function();
    }
    out.support = Interval(lo, hi);
    out.support_right_open = (f.support->hi == hi && f.support_right_open) ||
                             (g.support->hi == hi && g.support_right_open);
  } else if (f.support) {
    out.support = f.support;
    out.support_right_open = f.support_right_open;
  } else if (g.support) {
    out.support = g.support;
    out.support_right_open = g.support_right_open;
  }
  if (f.decay_rate || g.decay_rate) {
    out.decay_rate = f.decay_rate.value_or(0.0) + g.decay_rate.value_or(0.0);
  }
  out.breakpoints = merged(f.breakpoints, g.breakpoints);
  const int order = std::min(f.exact_order(), g.exact_order());
  if (order >= 1) {
    const Evaluator da = f.derivatives[0];
    const Evaluator db = g.derivatives[0];
    out.derivatives.push_back([a, b, da, db](double x) { return da(x) * b(x) + a(x) * db(x); });
  }
  if (order >= 2) {
    const Evaluator da = f.derivatives[0];
    const Evaluator db = g.derivatives[0];
    const Evaluator dda = f.derivatives[1];
    const Evaluator ddb = g.derivatives[1];
    out.derivatives.push_back([a, b, da, db, dda, ddb](double x) {
      return dda(x) * b(x) + 2.0 * da(x) * db(x) + a(x) * ddb(x);
    });
  }
  return out;
}

RealFunction restrict_to(const RealFunction& f, const Region& region) {
  RealFunction out;
  if (region.empty()) return zero_function();
  const Evaluator g = f.eval;
  out.eval = [g, region](double x) {
    for (const auto& iv : region) {
      if (iv.contains(x)) return g(x);
    }
    return 0.0;
  };
  double lo = region.front().lo;
  double hi = region.front().hi;
  for (const auto& iv : region) {
    lo = std::min(lo, iv.lo);
    hi = std::max(hi, iv.hi);
    out.breakpoints.push_back(iv.lo);
    out.breakpoints.push_back(iv.hi);
  }
  if (f.support) {
    lo = std::max(lo, f.support->lo);
    hi = std::min(hi, f.support->hi);
    if (hi < lo) return zero_function();
  }
  out.support = Interval(lo, hi);
  for (double b : f.breakpoints) {
    if (lo < b && b < hi) out.breakpoints.push_back(b);
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());
  return out;
}

}  // namespace varnorm
