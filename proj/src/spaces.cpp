#include "varnorm/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "varnorm/modular.hpp"

namespace varnorm {

namespace {

std::vector<double> grid(const Interval& d, int n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = d.center();
    return xs;
  }
  for (int i = 0; i < n; ++i) xs[i] = d.lo + d.length() * i / (n - 1);
  return xs;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

constexpr double kBoundSlack = 1e-12;

}  // namespace

// ---------------------------------------------------------------------------
// ExponentField

ExponentField::ExponentField(Evaluator eval, Interval domain, ExponentBounds declared,
                             std::vector<double> breakpoints)
    : eval_(std::move(eval)),
      domain_(domain),
      log_holder_(declared.log_holder_constant),
      p_infinity_(declared.p_infinity),
      breakpoints_(sorted_unique(std::move(breakpoints))) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double x : grid(domain_, kFieldSamples)) {
    const double v = eval_(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "exponent is not finite at x = " << x;
      throw DomainError(os.str());
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  p_minus_ = declared.p_minus.value_or(lo);
  p_plus_ = declared.p_plus.value_or(hi);
  if (!(p_minus_ > 1.0) || !(p_plus_ < std::numeric_limits<double>::infinity()) ||
      p_minus_ > p_plus_) {
    std::ostringstream os;
    os << "exponent bounds violate 1 < p- <= p+ < inf (p- = " << p_minus_ << ", p+ = " << p_plus_
       << ")";
    throw DomainError(os.str());
  }
  if (lo < p_minus_ - kBoundSlack || hi > p_plus_ + kBoundSlack) {
    throw DomainError("sampled exponent leaves the declared [p-, p+]");
  }
  if (p_infinity_ && !(*p_infinity_ > 1.0)) throw DomainError("p_infinity must exceed 1");
}

ExponentField exponent_const(double p, Interval domain) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("const(p) needs 1 < p < inf");
  ExponentBounds b;
  b.p_minus = p;
  b.p_plus = p;
  b.log_holder_constant = 0.0;
  b.p_infinity = p;
  return ExponentField([p](double) { return p; }, domain, b);
}

ExponentField exponent_loghold(double pinf, double a, Interval domain) {
  if (!(pinf > 1.0) || !std::isfinite(pinf)) throw DomainError("loghold needs pinf > 1");
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("loghold needs a >= 0");
  ExponentBounds b;
  b.p_minus = pinf;
  b.p_plus = pinf + a;
  b.log_holder_constant = a;
  b.p_infinity = pinf;
  return ExponentField(
      [pinf, a](double x) { return pinf + a / std::log(std::numbers::e + std::abs(x)); }, domain,
      b, {0.0});
}

ExponentField exponent_clip(const RealFunction& f, double pmin, double pmax, Interval domain) {
  if (!(pmin > 1.0) || !(pmin <= pmax) || !std::isfinite(pmax)) {
    throw DomainError("clip(f, pmin, pmax) needs 1 < pmin <= pmax < inf");
  }
  const Evaluator g = f.eval;
  return ExponentField([g, pmin, pmax](double x) { return std::clamp(g(x), pmin, pmax); },
                       domain, {}, f.breakpoints);
}

ExponentField conjugate_exponent(const ExponentField& p) {
  ExponentBounds b;
  b.p_minus = p.p_plus() / (p.p_plus() - 1.0);
  b.p_plus = p.p_minus() / (p.p_minus() - 1.0);
  if (auto pinf = p.declared_p_infinity()) b.p_infinity = *pinf / (*pinf - 1.0);
  if (auto c = p.declared_log_holder_constant()) {
    // |r(x) - r(y)| = |p(x) - p(y)| / ((p(x) - 1)(p(y) - 1))
    const double s = p.p_minus() - 1.0;
    b.log_holder_constant = *c / (s * s);
  }
  const Evaluator e = p.eval();
  return ExponentField(
      [e](double x) {
        const double v = e(x);
        return v / (v - 1.0);
      },
      p.domain(), b, p.breakpoints());
}

// ---------------------------------------------------------------------------
// WeightField

WeightField::WeightField(Evaluator eval, Interval domain, std::vector<double> singular_points,
                         std::vector<double> breakpoints)
    : eval_(std::move(eval)),
      domain_(domain),
      singular_(sorted_unique(std::move(singular_points))),
      breakpoints_(sorted_unique(std::move(breakpoints))) {
  for (double x : grid(domain_, kFieldSamples)) {
    if (std::binary_search(singular_.begin(), singular_.end(), x)) continue;
    const double v = eval_(x);
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "weight must be positive and finite; w(" << x << ") = " << v;
      throw DomainError(os.str());
    }
  }
  std::vector<Interval> probes;
  if (auto c = intersect(Interval(-1.0, 1.0), domain_)) probes.push_back(*c);
  for (double s : singular_) {
    if (auto c = intersect(Interval(s - 1.0, s + 1.0), domain_)) probes.push_back(*c);
  }
  witness_ = true;
  for (const auto& iv : probes) {
    try {
      if (!std::isfinite(integrate(eval_, iv, {}, hints()))) witness_ = false;
    } catch (const QuadratureError&) {
      witness_ = false;
    }
  }
}

QuadratureHints WeightField::hints() const {
  QuadratureHints h;
  h.breakpoints = breakpoints_;
  h.singular_points = singular_;
  return h;
}

WeightField weight_const(double c, Interval domain) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("const(c) weight needs c > 0");
  return WeightField([c](double) { return c; }, domain);
}

WeightField weight_power(double beta, Interval domain) {
  if (!std::isfinite(beta)) throw DomainError("powerw(beta) needs finite beta");
  if (beta == 0.0) return weight_const(1.0, domain);
  return WeightField([beta](double x) { return std::pow(std::abs(x), beta); }, domain, {0.0});
}

WeightField weight_exp(double a, Interval domain) {
  if (!std::isfinite(a)) throw DomainError("expw(a) needs finite a");
  return WeightField([a](double x) { return std::exp(a * std::abs(x)); }, domain, {}, {0.0});
}

namespace {

Interval common_domain(const WeightField& a, const WeightField& b) {
  auto d = intersect(a.domain(), b.domain());
  if (!d || d->degenerate()) throw DomainError("weights have disjoint domains");
  return *d;
}

std::vector<double> concat(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

WeightField weight_sum(const WeightField& a, const WeightField& b) {
  const Evaluator fa = a.eval();
  const Evaluator fb = b.eval();
  return WeightField([fa, fb](double x) { return fa(x) + fb(x); }, common_domain(a, b),
                     concat(a.singular_points(), b.singular_points()),
                     concat(a.breakpoints(), b.breakpoints()));
}

WeightField weight_prod(const WeightField& a, const WeightField& b) {
  const Evaluator fa = a.eval();
  const Evaluator fb = b.eval();
  return WeightField([fa, fb](double x) { return fa(x) * fb(x); }, common_domain(a, b),
                     concat(a.singular_points(), b.singular_points()),
                     concat(a.breakpoints(), b.breakpoints()));
}

WeightField dual_weight(const WeightField& w, const ExponentField& p) {
  const Evaluator fw = w.eval();
  const Evaluator fp = p.eval();
  const Evaluator dual = [fw, fp](double x) {
    const double v = fp(x);
    const double q = v / (v - 1.0);
    return std::pow(fw(x), 1.0 - q);
  };
  const auto& sing = w.singular_points();
  for (double x : grid(w.domain(), kFieldSamples)) {
    if (std::binary_search(sing.begin(), sing.end(), x)) continue;
    const double v = dual(x);
    if (!std::isfinite(v) || !(v > 0.0)) {
      std::ostringstream os;
      os << "dual weight leaves the double range at x = " << x;
      throw OverflowError(os.str());
    }
  }
  return WeightField(dual, w.domain(), sing, concat(w.breakpoints(), p.breakpoints()));
}

// ---------------------------------------------------------------------------
// Checks

LogHolderCheck check_log_holder(const ExponentField& p, int sample_count, const Interval& domain) {
  if (sample_count < 2) throw DomainError("check_log_holder needs sample_count >= 2");
  const auto xs = grid(domain, sample_count);
  std::vector<double> ps(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ps[i] = p(xs[i]);

  LogHolderCheck out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double dp = std::abs(ps[i] - ps[j]);
      if (dp == 0.0) continue;
      const double v = dp * std::log(std::numbers::e + 1.0 / std::abs(xs[i] - xs[j]));
      out.local_constant = std::max(out.local_constant, v);
    }
  }
  const auto declared_pinf = p.declared_p_infinity();
  out.p_infinity_used = declared_pinf.value_or(p(domain.hi));
  out.missing_p_infinity =
      !declared_pinf && std::max(std::abs(domain.lo), std::abs(domain.hi)) < kSmallDomainRadius;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v =
        std::abs(ps[i] - out.p_infinity_used) * std::log(std::numbers::e + std::abs(xs[i]));
    out.decay_constant = std::max(out.decay_constant, v);
  }
  out.passes = std::isfinite(out.local_constant) && std::isfinite(out.decay_constant);
  if (auto c = p.declared_log_holder_constant()) {
    const double cap = *c * 1.01;
    out.passes = out.passes && out.local_constant <= cap && out.decay_constant <= cap;
  }
  return out;
}

std::vector<Interval> default_balls(const Interval& domain) {
  std::vector<Interval> balls;
  for (int k = -16; k <= 16; ++k) {
    const double c = 0.5 * k;
    for (int j = -4; j <= 4; ++j) {
      const double r = std::ldexp(1.0, j);
      if (domain.lo <= c - r && c + r <= domain.hi) balls.emplace_back(c - r, c + r);
    }
  }
  return balls;
}

WeightClassEstimate estimate_Apx_constant(const WeightField& w, const ExponentField& p,
                                          const std::vector<Interval>& balls,
                                          const QuadratureSettings& quad) {
  if (balls.empty()) throw DomainError("estimate_Apx_constant needs at least one ball");
  WeightClassEstimate out;
  out.ball_count = static_cast<int>(balls.size());
  out.worst_ball = balls.front();
  out.constant_estimate = -std::numeric_limits<double>::infinity();

  const Evaluator fp = p.eval();
  const Evaluator fw = w.eval();
  QuadratureHints hints = w.hints();
  hints.breakpoints.insert(hints.breakpoints.end(), p.breakpoints().begin(),
                           p.breakpoints().end());

  for (const auto& ball : balls) {
    if (ball.degenerate() || !w.domain().contains(ball.lo) || !w.domain().contains(ball.hi)) {
      throw DomainError("A_p(.) balls must be nondegenerate and inside the domain");
    }
    const double len = ball.length();
    const double inv_mean = integrate([&](double x) { return 1.0 / fp(x); }, ball, quad, hints) / len;
    const double p_B = 1.0 / inv_mean;
    out.p_B_values.push_back(p_B);

    double value = std::numeric_limits<double>::infinity();
    try {
      const double mass = integrate(fw, ball, quad, hints);
      detail::ModularProblem mp;
      mp.f = [fw](double x) { return 1.0 / fw(x); };
      mp.exponent = [fp](double x) { return 1.0 / (fp(x) - 1.0); };
      mp.weight = [](double) { return 1.0; };
      mp.region = {ball};
      mp.hints = hints;
      mp.quad = quad;
      const double dual_norm = detail::raw_luxemburg(mp);
      value = std::pow(len, -p_B) * mass * dual_norm;
      if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
    } catch (const Error&) {
      value = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(value)) out.in_class = false;
    out.ball_values.push_back(value);
    if (value > out.constant_estimate) {
      out.constant_estimate = value;
      out.worst_ball = ball;
    }
  }
  return out;
}

}  // namespace varnorm
