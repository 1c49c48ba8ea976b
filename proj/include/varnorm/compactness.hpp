#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "varnorm/amalgam.hpp"
#include "varnorm/lebesgue.hpp"
#include "varnorm/sequence.hpp"
#include "varnorm/sobolev.hpp"

namespace varnorm {

enum class Verdict { pass, fail, inconclusive };
enum class OracleVerdict { stable, growing };
enum class ApproxMode { mollifier, average, translation };

const char* to_string(Verdict v);
const char* to_string(OracleVerdict v);
const char* to_string(ApproxMode m);

struct GeneratorParams {
  std::string kind;
  /// One parameter per member, in member order.
  std::vector<double> grid;
};

struct FunctionFamily {
  std::vector<RealFunction> members;
  std::string label;
  GeneratorParams params;
};

struct SequenceFamily {
  std::vector<WeightedSequence> members;
  std::string label;
  GeneratorParams params;
};

/// Quantifier discretization. gamma and K ascend; eps (also used for the
/// averaging radius and the translation bound) descends.
struct Ladders {
  std::vector<double> gamma{1, 2, 4, 8, 16, 32};
  std::vector<double> eps{0.5, 0.25, 0.125, 0.0625};
  std::vector<int> K{1, 2, 4, 8, 16, 32};
  double threshold = 1e-3;
  /// Relative quadrature tolerance used for every norm inside a report.
  double rel_tol = 1e-7;

  void validate() const;
};

/// eps ladder 2^-1, ..., 2^-n.
std::vector<double> dyadic_eps_ladder(int n);

struct CriterionCurve {
  std::vector<double> parameter_values;
  std::vector<double> sup_values;
  /// Approximation curves only: sup over F at exactly this parameter.
  /// sup_values[i] is the max of these over the parameters <= parameter_values[i].
  std::vector<double> pointwise_values;
};

/// A curve passes once it reaches the threshold; it is inconclusive when it
/// ends above the threshold while still falling by more than
/// kStillDecreasingRatio per step; otherwise it fails.
inline constexpr double kStillDecreasingRatio = 0.9;
Verdict curve_verdict(const CriterionCurve& c, double threshold);

struct CompactnessReport {
  std::string label;
  std::string engine;
  std::string mode;
  double bound = 0.0;
  Verdict bound_verdict = Verdict::pass;
  CriterionCurve tail_curve;
  Verdict tail_verdict = Verdict::pass;
  std::optional<CriterionCurve> approx_curve;
  Verdict approx_verdict = Verdict::pass;
  std::vector<std::size_t> net_sizes;
  std::optional<OracleVerdict> oracle_verdict;

  /// pass iff every criterion passes; fail if any fails; else inconclusive.
  Verdict verdict() const;
};

/// Conjunction with the same precedence as CompactnessReport::verdict.
Verdict conjunction(const std::vector<Verdict>& vs);

// ---------------------------------------------------------------------------
// Family generators. Parameter grids are ordered coarse first, so the
// family at level L is a prefix of the family at level L + 1.

/// The bump used as the smooth compactly supported prototype: bump(0, 2).
RealFunction canonical_bump();

FunctionFamily singleton_family(const RealFunction& f, std::string label = "singleton");
/// canonical_bump(x / s), s on the dyadic grid of [1, 2] with 2^L + 1 points.
FunctionFamily bump_dilates(int level);
/// sin(k pi x) chi_[0,1), k = 1..2^L.
FunctionFamily oscillations(int level);
/// sin(k pi x) canonical_bump(x), k = 1..2^L.
FunctionFamily modulated_bumps(int level);
inline constexpr double kRunawayReach = 48.0;
/// gauss(t, 1), t on the dyadic grid of [0, kRunawayReach]. The reach exceeds
/// the default gamma ladder and stays inside the default truncation.
FunctionFamily runaway_translates(int level);
/// chi_[t, t+1), t = 0..2^L.
FunctionFamily cell_translates(int level);
/// sin(k x), k = 1..2^L.
FunctionFamily plain_oscillations(int level);

/// Unit vectors e_m, m = 1..2^(L+1), p = 2, w = 1.
SequenceFamily unit_vectors(int level);
/// x_k = r^k, k = 1..40, r on the dyadic grid of [0, 1/2]; p = 2, w = 1.
SequenceFamily geometric_sequences(int level);

/// Dyadic grid of [a, b] with 2^L + 1 points, endpoints first.
std::vector<double> coarse_first_grid(double a, double b, int level);

// ---------------------------------------------------------------------------
// Criterion engines

/// Approximation operator for mode and parameter: mollification, ball
/// average, or (for translation) sup over |y| <= parameter on a dyadic set.
CompactnessReport lebesgue_report(const FunctionFamily& F, const LebesgueSpaceSpec& sp,
                                  ApproxMode mode, const Ladders& ladders);

CompactnessReport amalgam_report(const FunctionFamily& F, const AmalgamSpaceSpec& sp,
                                 ApproxMode mode, const Ladders& ladders);

/// One mollifier-mode report per j on the restrictions to K_j; empty K_j
/// gives a trivially passing report.
std::vector<CompactnessReport> lloc_report(const FunctionFamily& F, const LebesgueSpaceSpec& sp,
                                           const Interval& omega, int j_max,
                                           const Ladders& ladders);

CompactnessReport sequence_report(const SequenceFamily& S, const Ladders& ladders);

/// D^j F for every member.
FunctionFamily derivative_family(const FunctionFamily& F, int order);

struct SobolevReport {
  /// Per-order reports on D^j F, j = 0..k.
  std::vector<CompactnessReport> per_order;
  Verdict verdict = Verdict::pass;
};

SobolevReport sobolev_report(const FunctionFamily& F, const SobolevSpaceSpec& sp,
                             ApproxMode mode, const Ladders& ladders);

struct TransferReport {
  double sobolev_bound = 0.0;
  CriterionCurve sobolev_tail_curve;
  bool hypothesis_holds = false;
  CompactnessReport dst_report;
  bool consistent = true;
  double embedding_ratio = 0.0;
};

TransferReport embedding_transfer_report(const FunctionFamily& F, const SobolevSpaceSpec& src,
                                         const LebesgueSpaceSpec& dst, const Ladders& ladders);

// ---------------------------------------------------------------------------
// epsilon-net oracle

struct NetOracleResult {
  std::vector<std::size_t> net_sizes;
  OracleVerdict verdict = OracleVerdict::stable;
  double eps = 0.0;
};

template <class Family>
using FamilySampler = std::function<Family(int level)>;

template <class Member>
using MemberDistance = std::function<double(const Member&, const Member&)>;

/// Greedy net size at levels 1..levels. Distances between members with equal
/// generator parameters are computed once.
NetOracleResult net_oracle(const FamilySampler<FunctionFamily>& sampler,
                           const MemberDistance<RealFunction>& dist, double eps, int levels);
NetOracleResult net_oracle(const FamilySampler<SequenceFamily>& sampler,
                           const MemberDistance<WeightedSequence>& dist, double eps, int levels);

MemberDistance<RealFunction> lebesgue_distance(const LebesgueSpaceSpec& sp);
MemberDistance<RealFunction> amalgam_distance(const AmalgamSpaceSpec& sp);
MemberDistance<WeightedSequence> sequence_distance();

/// sup over F of ||Mf|| / ||f||, both norms discretized on `samples` points
/// of the truncation (trapezoid rule).
double empirical_maximal_ratio(const FunctionFamily& F, const LebesgueSpaceSpec& sp,
                               int samples = 513);

}  // namespace varnorm
