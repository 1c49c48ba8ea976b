#include "varnorm/cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "varnorm/amalgam.hpp"
#include "varnorm/compactness.hpp"
#include "varnorm/expr.hpp"
#include "varnorm/lebesgue.hpp"
#include "varnorm/operators.hpp"
#include "varnorm/parallel.hpp"

namespace varnorm::cli {

namespace {

using expr::format_number;

double uniform(std::mt19937_64& rng, double a, double b) {
  // Rounded to 1e-3 so the scenario text stays short.
  const double u = std::uniform_real_distribution<double>(a, b)(rng);
  return std::clamp(std::round(u * 1000.0) / 1000.0, a, b);
}

int pick(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

std::string call(const std::string& name, const std::vector<std::string>& args) {
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i];
  return out + ")";
}

std::string num(double x) { return format_number(x); }

std::string gauss_leaf(std::mt19937_64& rng) {
  return call("gauss", {num(uniform(rng, -3, 3)), num(uniform(rng, 0.3, 2))});
}

std::string leaf(std::mt19937_64& rng) {
  switch (pick(rng, 4)) {
    case 0: return gauss_leaf(rng);
    case 1: return call("bump", {num(uniform(rng, -3, 3)), num(uniform(rng, 0.5, 3))});
    case 2: {
      const double a = uniform(rng, -3, 2);
      return call("chi", {num(a), num(a + uniform(rng, 0.25, 3))});
    }
    default: return call("prod", {call("sinw", {num(uniform(rng, 0.5, 4))}), gauss_leaf(rng)});
  }
}

double signed_factor(std::mt19937_64& rng) {
  const double c = uniform(rng, 0.2, 3);
  return pick(rng, 2) ? c : -c;
}

std::string compact_leaf(std::mt19937_64& rng) {
  if (pick(rng, 2)) return call("bump", {num(uniform(rng, -3, 3)), num(uniform(rng, 0.5, 3))});
  const double a = uniform(rng, -3, 2);
  return call("chi", {num(a), num(a + uniform(rng, 0.25, 3))});
}

struct CaseResult {
  double metric = 0.0;
  bool ok = true;
  std::string note;
};

using CaseBody = std::function<CaseResult(std::mt19937_64&, int index)>;

struct Suite {
  std::string name;
  std::string metric;
  double tolerance;
  CaseBody body;
};

LebesgueSpaceSpec space_of(const std::string& exponent, const std::string& weight) {
  return LebesgueSpaceSpec{expr::parse_exponent(exponent), expr::parse_weight(weight),
                           default_truncation(), QuadratureSettings{}};
}

std::string describe(const Scenario& s) {
  return "f=" + s.function + " p=" + s.exponent + " w=" + s.weight;
}

CaseResult within(double metric, double tol, std::string note) {
  return {metric, metric <= tol, std::move(note)};
}

CaseResult unit_ball(std::mt19937_64& rng, int) {
  const Scenario s = random_scenario(rng);
  const auto sp = space_of(s.exponent, s.weight);
  const RealFunction f = expr::parse_function(s.function);
  const double n = luxemburg_norm(f, sp);
  return within(std::abs(modular(scale(f, 1.0 / n), sp) - 1.0), 1e-6, describe(s));
}

CaseResult homogeneity(std::mt19937_64& rng, int) {
  const Scenario s = random_scenario(rng);
  const auto sp = space_of(s.exponent, s.weight);
  const RealFunction f = expr::parse_function(s.function);
  const double n = luxemburg_norm(f, sp);
  const double nc = luxemburg_norm(scale(f, s.c), sp);
  const double want = std::abs(s.c) * n;
  return within(std::abs(nc - want) / want, 1e-7, describe(s) + " c=" + num(s.c));
}

CaseResult sandwich(std::mt19937_64& rng, int) {
  const Scenario s = random_scenario(rng);
  const auto sp = space_of(s.exponent, s.weight);
  const RealFunction f = expr::parse_function(s.function);
  const double n = luxemburg_norm(f, sp);
  const double rho = modular(f, sp);
  const double lo = std::pow(n, n <= 1.0 ? sp.p.p_plus() : sp.p.p_minus());
  const double hi = std::pow(n, n <= 1.0 ? sp.p.p_minus() : sp.p.p_plus());
  const double excess = std::max((lo - rho) / lo, (rho - hi) / hi);
  return within(std::max(excess, 0.0), 1e-6, describe(s));
}

CaseResult holder(std::mt19937_64& rng, int) {
  const Scenario s = random_scenario(rng);
  const auto sp = space_of(s.exponent, s.weight);
  const HolderCheck h =
      holder_pairing(expr::parse_function(s.function), expr::parse_function(s.partner), sp);
  return {h.lhs / h.rhs_bound, h.holds, describe(s) + " g=" + s.partner};
}

CaseResult amalgam_holder_case(std::mt19937_64& rng, int) {
  const Scenario s = random_scenario(rng);
  const auto sp = make_amalgam(space_of(s.exponent, s.weight), s.q);
  const HolderCheck h =
      amalgam_holder(expr::parse_function(s.function), expr::parse_function(s.partner), sp);
  return {h.lhs / h.rhs_bound, h.holds, describe(s) + " g=" + s.partner + " q=" + num(s.q)};
}

CaseResult support_bound(std::mt19937_64& rng, int index) {
  Scenario s = random_scenario(rng);
  s.function = random_compact_function(rng);
  if (index == 0) s = Scenario{"chi(0,2)", "const(2)", "const(1)", 1.0, 2.0, ""};
  const auto sp = make_amalgam(space_of(s.exponent, s.weight), s.q);
  const BoundCheck b = support_bound_check(expr::parse_function(s.function), sp);
  return within(std::max(b.lhs - b.rhs, 0.0), 1e-9, describe(s) + " q=" + num(s.q));
}

CaseResult closed_form(std::mt19937_64& rng, int index) {
  std::string f, p = "const(2)", w = "const(1)";
  double want = 0.0;
  if (index == 0) {
    f = "chi(0,1)";
    want = 1.0;
  } else if (index == 1) {
    f = "gauss(0,1)";
    want = std::pow(std::numbers::pi / 2.0, 0.25);
  } else if (pick(rng, 2)) {
    const double a = uniform(rng, -3, 2), l = uniform(rng, 0.25, 3);
    const double P = uniform(rng, 1.2, 4), C = uniform(rng, 0.5, 2);
    f = call("chi", {num(a), num(a + l)});
    p = call("const", {num(P)});
    w = call("const", {num(C)});
    // Recompute the length from the printed endpoints.
    want = std::pow(C * ((a + l) - a), 1.0 / P);
  } else {
    const double mu = uniform(rng, -3, 3), sigma = uniform(rng, 0.3, 2);
    const double c = signed_factor(rng), C = uniform(rng, 0.5, 2);
    f = call("scale", {call("gauss", {num(mu), num(sigma)}), num(c)});
    w = call("const", {num(C)});
    want = std::abs(c) * std::sqrt(C * sigma * std::sqrt(std::numbers::pi / 2.0));
  }
  const double got = luxemburg_norm(expr::parse_function(f), space_of(p, w));
  return within(std::abs(got - want) / want, 1e-6, "f=" + f + " p=" + p + " w=" + w);
}

CaseResult domination(std::mt19937_64& rng, int) {
  static const double kEps[] = {0.5, 0.25, 0.125, 0.0625};
  const std::string f = random_function(rng);
  const double x = uniform(rng, -4, 4);
  const double eps = kEps[pick(rng, 4)];
  const RealFunction g = expr::parse_function(f);
  const double lhs = std::abs(mollify(g, eps, x));
  const double M = maximal(g, x, with_radii(make_radius_grid(), {eps}));
  return within(std::max(lhs - M, 0.0), 1e-6, "f=" + f + " x=" + num(x) + " eps=" + num(eps));
}

CaseResult convergence(std::mt19937_64& rng, int) {
  // Six dyadic steps: with q = 1 the amalgam norm sums up to eight cell
  // errors, which keeps 2^-4 above the threshold for some draws.
  static const std::vector<double> kEps = dyadic_eps_ladder(6);
  Scenario s = random_scenario(rng);
  s.function = random_smooth_compact_function(rng);
  auto sp = space_of(s.exponent, s.weight);
  sp.quad.rel_tol = 1e-7;
  const auto am = make_amalgam(sp, s.q);
  const RealFunction f = expr::parse_function(s.function);
  double finest = 0.0;
  bool monotone = true;
  for (int mode = 0; mode < 2; ++mode) {
    for (int engine = 0; engine < 2; ++engine) {
      double prev = std::numeric_limits<double>::infinity();
      for (double e : kEps) {
        const RealFunction d = difference(mode == 0 ? mollified(f, e) : averaged(f, e), f);
        const double v = engine == 0 ? luxemburg_norm(d, sp) : amalgam_norm(d, am);
        if (!(v < prev)) monotone = false;
        prev = v;
      }
      finest = std::max(finest, prev);
    }
  }
  return {finest, monotone && finest < 1e-3,
          describe(s) + " q=" + num(s.q) + (monotone ? "" : " (not decreasing)")};
}

std::string random_tree(std::mt19937_64& rng, expr::Context ctx, int depth) {
  using expr::Context;
  if (ctx == Context::exponent) {
    switch (pick(rng, 3)) {
      case 0: return call("const", {num(uniform(rng, 1.1, 6))});
      case 1: return call("loghold", {num(uniform(rng, 1.1, 3)), num(uniform(rng, 0, 2))});
      default:
        return call("clip", {random_tree(rng, Context::function, depth - 1), num(uniform(rng, 1.1, 1.5)),
                             num(uniform(rng, 2.5, 5))});
    }
  }
  if (ctx == Context::weight) {
    const int k = pick(rng, depth > 0 ? 5 : 3);
    switch (k) {
      case 0: return call("const", {num(uniform(rng, 0.1, 5))});
      case 1: return call("powerw", {num(uniform(rng, 0, 0.9))});
      case 2: return call("expw", {num(uniform(rng, -0.1, 0.1))});
      default:
        return call(k == 3 ? "sum" : "prod",
                    {random_tree(rng, ctx, depth - 1), random_tree(rng, ctx, depth - 1)});
    }
  }
  const int k = pick(rng, depth > 0 ? 11 : 5);
  switch (k) {
    case 0: {
      const double a = uniform(rng, -5, 5);
      return call("chi", {num(a), num(a + uniform(rng, 0.1, 4))});
    }
    case 1: return call("gauss", {num(uniform(rng, -5, 5)), num(uniform(rng, 0.1, 3))});
    case 2: return call("bump", {num(uniform(rng, -5, 5)), num(uniform(rng, 0.1, 3))});
    case 3: return call("sinw", {num(uniform(rng, -6, 6))});
    case 4: {
      std::vector<std::string> c;
      for (int i = 0, n = 1 + pick(rng, 4); i < n; ++i) c.push_back(num(uniform(rng, -2, 2)));
      return call("poly", c);
    }
    case 5: return call("abspow", {random_tree(rng, ctx, depth - 1), num(uniform(rng, 0.5, 3))});
    case 6: return call("translate", {random_tree(rng, ctx, depth - 1), num(uniform(rng, -3, 3))});
    case 7: return call("scale", {random_tree(rng, ctx, depth - 1), num(uniform(rng, -3, 3))});
    case 8: return call("dilate", {random_tree(rng, ctx, depth - 1), num(uniform(rng, 0.2, 3))});
    default:
      return call(k == 9 ? "sum" : "prod",
                  {random_tree(rng, ctx, depth - 1), random_tree(rng, ctx, depth - 1)});
  }
}

/// Bit-level comparison that treats equal NaNs as equal.
double value_gap(double a, double b) {
  if (a == b || (std::isnan(a) && std::isnan(b))) return 0.0;
  return std::abs(a - b);
}

CaseResult roundtrip(std::mt19937_64& rng, int index) {
  using expr::Context;
  const Context ctx = index % 3 == 0 ? Context::function : index % 3 == 1 ? Context::exponent : Context::weight;
  const std::string text = random_tree(rng, ctx, 3);
  const expr::Node n = expr::parse(text, ctx);
  const std::string printed = expr::print(n);
  const expr::Node m = expr::parse(printed, ctx);
  if (expr::print(m) != printed) return {1.0, false, text + " reprinted differently"};
  std::function<double(double)> a, b;
  if (ctx == Context::function) {
    a = expr::build_function(n).eval;
    b = expr::build_function(m).eval;
  } else if (ctx == Context::exponent) {
    a = expr::build_exponent(n).eval();
    b = expr::build_exponent(m).eval();
  } else {
    a = expr::build_weight(n).eval();
    b = expr::build_weight(m).eval();
  }
  double gap = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double x = -8.0 + 16.0 * (i + 0.5) / 1024.0;
    gap = std::max(gap, value_gap(a(x), b(x)));
  }
  return within(gap, 1e-15, ctx == Context::function ? text : std::string(to_string(ctx)) + " " + text);
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"unit_ball", "|rho(f/||f||) - 1|", 1e-6, unit_ball},
      {"homogeneity", "relative error of ||cf|| against |c| ||f||", 1e-7, homogeneity},
      {"sandwich", "relative excess over the norm-modular bounds", 1e-6, sandwich},
      {"holder", "lhs / (2 ||f|| ||g||_dual)", 1.0, holder},
      {"amalgam_holder", "lhs / (2 ||f|| ||g||_dual)", 1.0, amalgam_holder_case},
      {"support_bound", "excess of ||g||_amalgam over |S(K)|^(1/q) ||g||", 1e-9, support_bound},
      {"closed_form", "relative error against the closed form", 1e-6, closed_form},
      {"domination", "excess of |phi_eps * f(x)| over Mf(x)", 1e-6, domination},
      {"convergence", "largest approximation error at the finest eps", 1e-3, convergence},
      {"roundtrip", "max |e(x) - parse(print(e))(x)| on 1024 points", 1e-15, roundtrip},
  };
  return all;
}

}  // namespace

std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t suite_id, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite_id), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::string random_function(std::mt19937_64& rng) {
  switch (pick(rng, 4)) {
    case 0: return leaf(rng);
    case 1: return call("scale", {leaf(rng), num(signed_factor(rng))});
    case 2: return call("translate", {leaf(rng), num(uniform(rng, -2, 2))});
    default: return call("sum", {leaf(rng), leaf(rng)});
  }
}

std::string random_compact_function(std::mt19937_64& rng) {
  switch (pick(rng, 4)) {
    case 0: return compact_leaf(rng);
    case 1: return call("scale", {compact_leaf(rng), num(signed_factor(rng))});
    case 2: return call("sum", {compact_leaf(rng), compact_leaf(rng)});
    default: return call("prod", {compact_leaf(rng), gauss_leaf(rng)});
  }
}

std::string random_smooth_compact_function(std::mt19937_64& rng) {
  const auto b = [&] { return call("bump", {num(uniform(rng, -2, 2)), num(uniform(rng, 3, 4))}); };
  switch (pick(rng, 4)) {
    case 0: return b();
    case 1: return call("translate", {b(), num(uniform(rng, -2, 2))});
    case 2: return call("scale", {call("sum", {b(), b()}), "0.5"});
    default:
      return call("prod", {b(), call("gauss", {num(uniform(rng, -2, 2)), num(uniform(rng, 2, 4))})});
  }
}

std::string random_exponent(std::mt19937_64& rng) {
  switch (pick(rng, 3)) {
    case 0: return call("const", {num(uniform(rng, 1.2, 4))});
    case 1: return call("loghold", {num(uniform(rng, 1.2, 3)), num(uniform(rng, 0, 1.5))});
    default: {
      const std::string f = call("sum", {call("poly", {num(uniform(rng, 1.5, 3))}),
                                         call("scale", {call("sinw", {num(uniform(rng, 0.25, 2))}),
                                                        num(uniform(rng, 0.2, 1.5))})});
      return call("clip", {f, num(uniform(rng, 1.1, 1.5)), num(uniform(rng, 2.5, 4))});
    }
  }
}

std::string random_weight(std::mt19937_64& rng, std::string& exponent) {
  switch (pick(rng, 4)) {
    case 0: return call("const", {num(uniform(rng, 0.5, 2))});
    case 1: return call("expw", {num(uniform(rng, -0.05, 0.05))});
    case 2:
      return call("sum", {call("const", {num(uniform(rng, 0.5, 2))}),
                          call("expw", {num(uniform(rng, -0.05, 0.05))})});
    default:
      exponent = "const(2)";
      return call("powerw", {num(uniform(rng, -0.9, 0.9))});
  }
}

Scenario random_scenario(std::mt19937_64& rng) {
  static const double kQ[] = {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()};
  Scenario s;
  s.function = random_function(rng);
  s.exponent = random_exponent(rng);
  s.weight = random_weight(rng, s.exponent);
  s.c = signed_factor(rng);
  s.q = kQ[pick(rng, 5)];
  s.partner = random_function(rng);
  return s;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases) {
  const auto& all = suites();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Suite& s) { return s.name == name; });
  if (it == all.end()) throw std::invalid_argument("unknown suite " + name);
  const auto id = static_cast<std::uint64_t>(it - all.begin());

  std::vector<CaseResult> results(static_cast<std::size_t>(std::max(cases, 0)));
  parallel_for(results.size(), [&](std::size_t i) {
    auto rng = case_rng(seed, id, i);
    try {
      results[i] = it->body(rng, static_cast<int>(i));
    } catch (const std::exception& e) {
      results[i] = {0.0, false, std::string("error: ") + e.what()};
    }
  });

  SuiteResult r;
  r.name = it->name;
  r.metric = it->metric;
  r.tolerance = it->tolerance;
  r.cases = static_cast<int>(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    r.worst = std::max(r.worst, results[i].metric);
    if (results[i].ok) continue;
    ++r.violations;
    if (r.failures.size() < kMaxReportedFailures)
      r.failures.push_back("case " + std::to_string(i) + ": " + results[i].note +
                           " metric=" + num(results[i].metric));
  }
  return r;
}

}  // namespace varnorm::cli
