#include "varnorm/lebesgue.hpp"

#include <algorithm>
#include <cmath>

#include "varnorm/modular.hpp"

namespace varnorm {

LebesgueSpaceSpec constant_space(double p, double w) {
  return LebesgueSpaceSpec{exponent_const(p), weight_const(w)};
}

LebesgueSpaceSpec dual_space(const LebesgueSpaceSpec& sp) {
  return LebesgueSpaceSpec{conjugate_exponent(sp.p), dual_weight(sp.w, sp.p), sp.truncation,
                           sp.quad};
}

namespace {

detail::ModularProblem problem(const RealFunction& f, const LebesgueSpaceSpec& sp,
                               const Region& region) {
  detail::ModularProblem mp;
  mp.f = f.eval;
  mp.exponent = sp.p.eval();
  mp.weight = sp.w.eval();
  Region r = detail::clip_region(region, sp.truncation);
  if (f.support) r = detail::clip_region(r, *f.support);
  mp.region = std::move(r);
  mp.hints = f.hints();
  mp.hints.merge(sp.w.hints());
  mp.hints.breakpoints.insert(mp.hints.breakpoints.end(), sp.p.breakpoints().begin(),
                              sp.p.breakpoints().end());
  mp.quad = sp.quad;
  if (sp.p.is_constant()) mp.constant_exponent = sp.p.p_minus();
  return mp;
}

Region as_region(const LebesgueSpaceSpec& sp, const std::optional<Interval>& region) {
  return Region{region.value_or(sp.truncation)};
}

}  // namespace

double modular(const RealFunction& f, const LebesgueSpaceSpec& sp, const Region& region) {
  return detail::raw_modular(problem(f, sp, region), 1.0);
}

double modular(const RealFunction& f, const LebesgueSpaceSpec& sp,
               const std::optional<Interval>& region) {
  return modular(f, sp, as_region(sp, region));
}

double luxemburg_norm(const RealFunction& f, const LebesgueSpaceSpec& sp, const Region& region) {
  return detail::raw_luxemburg(problem(f, sp, region));
}

double luxemburg_norm(const RealFunction& f, const LebesgueSpaceSpec& sp,
                      const std::optional<Interval>& region) {
  return luxemburg_norm(f, sp, as_region(sp, region));
}

std::optional<double> truncation_tail_bound(const RealFunction& f, const LebesgueSpaceSpec& sp) {
  if (f.support && sp.truncation.contains(f.support->lo) && sp.truncation.contains(f.support->hi)) {
    return 0.0;
  }
  if (!f.decay_rate || !(*f.decay_rate > 0.0)) return std::nullopt;
  const double T = std::min(std::abs(sp.truncation.lo), std::abs(sp.truncation.hi));
  const double r = *f.decay_rate;
  return std::exp(-T * r) / r;
}

HolderCheck holder_pairing(const RealFunction& f, const RealFunction& g,
                           const LebesgueSpaceSpec& sp) {
  const RealFunction fg = prod(f, g);
  Region r{sp.truncation};
  if (fg.support) r = detail::clip_region(r, *fg.support);
  HolderCheck out;
  for (const auto& iv : r) {
    out.lhs += integrate([&](double x) { return std::abs(fg(x)); }, iv, sp.quad, fg.hints());
  }
  const double nf = luxemburg_norm(f, sp);
  const double ng = luxemburg_norm(g, dual_space(sp));
  out.rhs_bound = kHolderConstant * nf * ng;
  out.holds = out.lhs <= out.rhs_bound + 1e-9;
  return out;
}

CharNormCheck char_norm_bound(const Interval& K, const LebesgueSpaceSpec& sp) {
  CharNormCheck out;
  if (!K.degenerate()) {
    RealFunction chi_K;
    chi_K.eval = [K](double x) { return K.contains(x) ? 1.0 : 0.0; };
    chi_K.support = K;
    chi_K.breakpoints = {K.lo, K.hi};
    out.norm = luxemburg_norm(chi_K, sp);
    if (auto c = intersect(K, sp.truncation); c && !c->degenerate()) {
      out.C_K = integrate(sp.w.eval(), *c, sp.quad, sp.w.hints());
    }
  }
  out.holds = out.norm <= out.C_K + 1.0 + 1e-9;
  return out;
}

std::optional<Interval> exhaustion_set(const Interval& omega, int j) {
  if (j < 1) throw DomainError("exhaustion index must be >= 1");
  const double inv = 1.0 / j;
  const double lo = std::max(omega.lo + inv, -static_cast<double>(j));
  const double hi = std::min(omega.hi - inv, static_cast<double>(j));
  if (!(lo < hi)) return std::nullopt;
  return Interval(lo, hi);
}

std::vector<double> local_seminorms(const RealFunction& f, const LebesgueSpaceSpec& sp,
                                    const Interval& omega, int j_max) {
  if (j_max < 1) throw DomainError("local_seminorms needs j_max >= 1");
  std::vector<double> out;
  out.reserve(j_max);
  for (int j = 1; j <= j_max; ++j) {
    const auto K = exhaustion_set(omega, j);
    out.push_back(K ? luxemburg_norm(f, sp, *K) : 0.0);
  }
  return out;
}

}  // namespace varnorm
