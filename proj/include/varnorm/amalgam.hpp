#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "varnorm/lebesgue.hpp"

namespace varnorm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (L^{p(.)}_w, l^q) over the cells J_k = [k, k+1), k_min <= k <= k_max.
struct AmalgamSpaceSpec {
  LebesgueSpaceSpec local;
  double q = 1.0;
  int k_min = 0;
  int k_max = -1;
};

/// Validates q in [1, inf] and sets the cell range to cover the truncation.
AmalgamSpaceSpec make_amalgam(LebesgueSpaceSpec local, double q);

/// Conjugate amalgam: dual local space and s = q / (q - 1).
AmalgamSpaceSpec dual_amalgam(const AmalgamSpaceSpec& sp);

struct CellProfile {
  int k_min = 0;
  std::vector<double> norms;

  /// Norm of cell k; 0 outside the stored range.
  double at(int k) const;
};

/// Per-cell Luxemburg norms, optionally of f restricted to `region`.
CellProfile cell_norms(const RealFunction& f, const AmalgamSpaceSpec& sp,
                       const std::optional<Region>& region = std::nullopt);

/// l^q norm of a list of cell norms (max for q = inf).
double aggregate(const std::vector<double>& norms, double q);

double amalgam_norm(const RealFunction& f, const AmalgamSpaceSpec& sp,
                    const std::optional<Region>& region = std::nullopt);

/// Number of cells [k, k+1) meeting K; K is [lo, hi) when right_open.
int support_cell_count(const Interval& K, bool right_open = false);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// amalgam_norm(g) against |S(K)|^{1/q} ||g|| (|S(K)| ||g|| for q = inf),
/// K the support of g. Throws DomainError when g has no support.
BoundCheck support_bound_check(const RealFunction& g, const AmalgamSpaceSpec& sp);

/// sum_k ||fg chi_{J_k}||_1 against 2 ||f|| ||g||_dual.
HolderCheck amalgam_holder(const RealFunction& f, const RealFunction& g,
                           const AmalgamSpaceSpec& sp);

struct CellComponent {
  int k = 0;
  RealFunction piece;  // f chi_{[k, k+1)}
  double norm = 0.0;
};

/// f -> (f chi_{J_k})_k over the cells with nonzero norm.
std::vector<CellComponent> isometry_view(const RealFunction& f, const AmalgamSpaceSpec& sp);

}  // namespace varnorm
