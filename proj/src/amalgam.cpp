#include "varnorm/amalgam.hpp"

#include <algorithm>
#include <cmath>

#include "varnorm/modular.hpp"
#include "varnorm/parallel.hpp"

namespace varnorm {

AmalgamSpaceSpec make_amalgam(LebesgueSpaceSpec local, double q) {
  if (!(q >= 1.0)) throw DomainError("amalgam exponent q must satisfy 1 <= q <= inf");
  AmalgamSpaceSpec sp{std::move(local), q, 0, -1};
  sp.k_min = static_cast<int>(std::floor(sp.local.truncation.lo));
  sp.k_max = static_cast<int>(std::ceil(sp.local.truncation.hi)) - 1;
  return sp;
}

AmalgamSpaceSpec dual_amalgam(const AmalgamSpaceSpec& sp) {
  double s = kInfinity;
  if (sp.q == kInfinity) {
    s = 1.0;
  } else if (sp.q > 1.0) {
    s = sp.q / (sp.q - 1.0);
  }
  AmalgamSpaceSpec d = sp;
  d.local = dual_space(sp.local);
  d.q = s;
  return d;
}

double CellProfile::at(int k) const {
  const long i = static_cast<long>(k) - k_min;
  if (i < 0 || i >= static_cast<long>(norms.size())) return 0.0;
  return norms[static_cast<std::size_t>(i)];
}

namespace {

// Cells that can carry mass: the cell range cut down to the support of f.
std::pair<int, int> active_cells(const RealFunction& f, const AmalgamSpaceSpec& sp) {
  int lo = sp.k_min;
  int hi = sp.k_max;
  if (f.support) {
    lo = std::max(lo, static_cast<int>(std::floor(f.support->lo)));
    hi = std::min(hi, static_cast<int>(std::floor(f.support->hi)));
  }
  return {lo, hi};
}

}  // namespace

CellProfile cell_norms(const RealFunction& f, const AmalgamSpaceSpec& sp,
                       const std::optional<Region>& region) {
  CellProfile out;
  out.k_min = sp.k_min;
  out.norms.assign(static_cast<std::size_t>(std::max(0, sp.k_max - sp.k_min + 1)), 0.0);
  const auto [lo, hi] = active_cells(f, sp);
  if (hi < lo) return out;
  parallel_for(static_cast<std::size_t>(hi - lo + 1), [&](std::size_t i) {
    const int k = lo + static_cast<int>(i);
    Region cell{Interval(k, k + 1)};
    if (region) {
      Region parts;
      for (const auto& r : *region) {
        if (auto c = intersect(r, cell.front()); c && !c->degenerate()) parts.push_back(*c);
      }
      cell = std::move(parts);
    }
    out.norms[static_cast<std::size_t>(k - sp.k_min)] =
        cell.empty() ? 0.0 : luxemburg_norm(f, sp.local, cell);
  });
  return out;
}

double aggregate(const std::vector<double>& norms, double q) {
  if (q == kInfinity) {
    double m = 0.0;
    for (double v : norms) m = std::max(m, v);
    return m;
  }
  // Scaled by the maximum so that large q does not underflow.
  double m = 0.0;
  for (double v : norms) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : norms) s += std::pow(v / m, q);
  return m * std::pow(s, 1.0 / q);
}

double amalgam_norm(const RealFunction& f, const AmalgamSpaceSpec& sp,
                    const std::optional<Region>& region) {
  return aggregate(cell_norms(f, sp, region).norms, sp.q);
}

int support_cell_count(const Interval& K, bool right_open) {
  const long lo = static_cast<long>(std::floor(K.lo));
  long hi = static_cast<long>(std::floor(K.hi));
  if (right_open && !K.degenerate() && std::floor(K.hi) == K.hi) hi -= 1;
  return static_cast<int>(hi - lo + 1);
}

BoundCheck support_bound_check(const RealFunction& g, const AmalgamSpaceSpec& sp) {
  if (!g.support) throw DomainError("support_bound_check needs a compact support hint");
  const int S = support_cell_count(*g.support, g.support_right_open);
  BoundCheck out;
  out.lhs = amalgam_norm(g, sp);
  const double local = luxemburg_norm(g, sp.local);
  const double factor = sp.q == kInfinity ? static_cast<double>(S) : std::pow(S, 1.0 / sp.q);
  out.rhs = factor * local;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

HolderCheck amalgam_holder(const RealFunction& f, const RealFunction& g,
                           const AmalgamSpaceSpec& sp) {
  const RealFunction fg = prod(f, g);
  HolderCheck out;
  Region r = detail::clip_region(Region{sp.local.truncation}, fg.support.value_or(sp.local.truncation));
  const auto [lo, hi] = active_cells(fg, sp);
  QuadratureHints hints = fg.hints();
  for (int k = lo; k <= hi; ++k) {
    for (const auto& part : detail::clip_region(r, Interval(k, k + 1))) {
      out.lhs += integrate([&](double x) { return std::abs(fg(x)); }, part, sp.local.quad, hints);
    }
  }
  out.rhs_bound = kHolderConstant * amalgam_norm(f, sp) * amalgam_norm(g, dual_amalgam(sp));
  out.holds = out.lhs <= out.rhs_bound + 1e-9;
  return out;
}

std::vector<CellComponent> isometry_view(const RealFunction& f, const AmalgamSpaceSpec& sp) {
  const auto profile = cell_norms(f, sp);
  std::vector<CellComponent> out;
  for (int k = sp.k_min; k <= sp.k_max; ++k) {
    const double n = profile.at(k);
    if (n == 0.0) continue;
    out.push_back({k, prod(f, chi(k, k + 1)), n});
  }
  return out;
}

}  // namespace varnorm
