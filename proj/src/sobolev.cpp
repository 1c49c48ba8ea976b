#include "varnorm/sobolev.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace varnorm {

Evaluator finite_difference(const Evaluator& f, double h) {
  return [f, h](double x) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double h2 = 0.5 * h;
    const double d2 = (f(x + h2) - f(x - h2)) / (2.0 * h2);
    return (4.0 * d2 - d1) / 3.0;
  };
}

RealFunction derivative(const RealFunction& f, int order) {
  if (order < 0) throw DomainError("derivative order must be >= 0");
  if (order == 0) return f;
  const int exact = std::min(order, f.exact_order());
  const int levels = order - exact;
  if (levels > kMaxFiniteDifferenceLevels) {
    throw DomainError("derivative order " + std::to_string(order) +
                      " needs too many finite-difference levels");
  }
  RealFunction out;
  out.support = f.support;
  out.support_right_open = f.support_right_open;
  out.decay_rate = f.decay_rate;
  out.breakpoints = f.breakpoints;
  Evaluator e = exact == 0 ? f.eval : f.derivatives[exact - 1];
  for (int i = 0; i < levels; ++i) e = finite_difference(e);
  out.eval = e;
  for (int j = order; j < f.exact_order(); ++j) out.derivatives.push_back(f.derivatives[j]);
  return out;
}

std::vector<double> sobolev_order_norms(const RealFunction& f, const SobolevSpaceSpec& sp) {
  if (sp.order < 0) throw DomainError("Sobolev order must be >= 0");
  std::vector<double> out;
  for (int j = 0; j <= sp.order; ++j) out.push_back(luxemburg_norm(derivative(f, j), sp.base));
  return out;
}

double sobolev_norm(const RealFunction& f, const SobolevSpaceSpec& sp) {
  double total = 0.0;
  for (double v : sobolev_order_norms(f, sp)) total += v;
  return total;
}

double sobolev_modular(const RealFunction& f, const SobolevSpaceSpec& sp) {
  double total = 0.0;
  for (int j = 0; j <= sp.order; ++j) total += modular(derivative(f, j), sp.base);
  return total;
}

double sobolev_tail_modular(const RealFunction& f, const SobolevSpaceSpec& sp, double gamma) {
  if (sp.order != 1) throw DomainError("sobolev_tail_modular needs order 1");
  if (!(gamma >= 0.0)) throw DomainError("sobolev_tail_modular needs gamma >= 0");
  const Region tail = tail_region(gamma, sp.base.truncation);
  if (tail.empty()) return 0.0;
  return modular(f, sp.base, tail) + modular(derivative(f, 1), sp.base, tail);
}

namespace {

struct TensorNode {
  double x;
  double y;
  double weight;
};

std::vector<std::pair<double, double>> axis_nodes(const Interval& iv, int per_unit) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  const int n = std::max(1, static_cast<int>(std::ceil(iv.length() * per_unit)));
  const double h = iv.length() / n;
  std::vector<std::pair<double, double>> out;
  for (int p = 0; p < n; ++p) {
    const double c = iv.lo + (p + 0.5) * h;
    // The rule stores the nonnegative half of the symmetric nodes.
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double u = abscissa[i] * 0.5 * h;
      const double w = weights[i] * 0.5 * h;
      if (abscissa[i] == 0.0) {
        out.emplace_back(c, w);
      } else {
        out.emplace_back(c - u, w);
        out.emplace_back(c + u, w);
      }
    }
  }
  return out;
}

std::vector<TensorNode> tensor_nodes(const Sobolev2Spec& sp) {
  if (sp.panels_per_unit < 1) throw DomainError("panels_per_unit must be >= 1");
  const auto xs = axis_nodes(sp.box_x, sp.panels_per_unit);
  const auto ys = axis_nodes(sp.box_y, sp.panels_per_unit);
  std::vector<TensorNode> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& [x, wx] : xs) {
    for (const auto& [y, wy] : ys) out.push_back({x, y, wx * wy});
  }
  return out;
}

}  // namespace

double luxemburg_norm_2d(const Evaluator2& g, const Sobolev2Spec& sp) {
  struct Term {
    double a;
    double p;
    double w;
  };
  std::vector<Term> terms;
  for (const auto& n : tensor_nodes(sp)) {
    const double a = std::abs(g(n.x, n.y));
    if (a == 0.0) continue;
    terms.push_back({a, sp.exponent(n.x, n.y), sp.weight(n.x, n.y) * n.weight});
  }
  if (terms.empty()) return 0.0;
  const auto rho = [&](double lambda) {
    double s = 0.0;
    for (const auto& t : terms) s += std::pow(t.a / lambda, t.p) * t.w;
    return s;
  };
  if (rho(1.0) == 0.0) return 0.0;
  try {
    return solve_monotone_decreasing(rho, 1.0, 1e-10);
  } catch (const NoBracketError&) {
    return 0.0;
  }
}

double sobolev_norm_2d(const RealFunction2& f, const Sobolev2Spec& sp) {
  if (sp.order < 0 || sp.order > 1) throw DomainError("2-D Sobolev norms support order 0 or 1");
  double total = luxemburg_norm_2d(f.eval, sp);
  if (sp.order == 0) return total;
  const Evaluator2 g = f.eval;
  const Evaluator2 dx = f.dx.value_or(Evaluator2([g](double x, double y) {
    return finite_difference([&](double t) { return g(t, y); })(x);
  }));
  const Evaluator2 dy = f.dy.value_or(Evaluator2([g](double x, double y) {
    return finite_difference([&](double t) { return g(x, t); })(y);
  }));
  total += luxemburg_norm_2d(dx, sp);
  total += luxemburg_norm_2d(dy, sp);
  return total;
}

}  // namespace varnorm
