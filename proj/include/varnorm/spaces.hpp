#pragma once

#include <optional>
#include <vector>

#include "varnorm/function.hpp"
#include "varnorm/numerics.hpp"

namespace varnorm {

/// Raised when a derived field leaves the double range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Points sampled when validating exponent and weight fields.
inline constexpr int kFieldSamples = 4096;

struct ExponentBounds {
  std::optional<double> p_minus;
  std::optional<double> p_plus;
  std::optional<double> log_holder_constant;
  std::optional<double> p_infinity;
};

/// Variable exponent p(.) with 1 < p_minus <= p(x) <= p_plus < inf.
///
/// Bounds not declared are taken from a kFieldSamples-point scan of the
/// domain. Declared bounds must agree with the scan.
class ExponentField {
public:
  ExponentField(Evaluator eval, Interval domain, ExponentBounds declared = {},
                std::vector<double> breakpoints = {});

  double operator()(double x) const { return eval_(x); }
  const Evaluator& eval() const { return eval_; }
  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  std::optional<double> declared_log_holder_constant() const { return log_holder_; }
  std::optional<double> declared_p_infinity() const { return p_infinity_; }
  const Interval& domain() const { return domain_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool is_constant() const { return p_minus_ == p_plus_; }

private:
  Evaluator eval_;
  Interval domain_;
  double p_minus_ = 0.0;
  double p_plus_ = 0.0;
  std::optional<double> log_holder_;
  std::optional<double> p_infinity_;
  std::vector<double> breakpoints_;
};

ExponentField exponent_const(double p, Interval domain = default_truncation());
/// pinf + a / log(e + |x|)
ExponentField exponent_loghold(double pinf, double a, Interval domain = default_truncation());
/// min(max(f(x), pmin), pmax)
ExponentField exponent_clip(const RealFunction& f, double pmin, double pmax,
                            Interval domain = default_truncation());

/// Positive weight w(.). Singular points (where w may vanish or blow up) are
/// skipped by the positivity scan and passed to the integrator as hints.
class WeightField {
public:
  WeightField(Evaluator eval, Interval domain, std::vector<double> singular_points = {},
              std::vector<double> breakpoints = {});

  double operator()(double x) const { return eval_(x); }
  const Evaluator& eval() const { return eval_; }
  const Interval& domain() const { return domain_; }
  const std::vector<double>& singular_points() const { return singular_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// True when w integrated to a finite value on [-1, 1] and on a unit
  /// neighbourhood of every singular point.
  bool local_integrability_witness() const { return witness_; }
  QuadratureHints hints() const;

private:
  Evaluator eval_;
  Interval domain_;
  std::vector<double> singular_;
  std::vector<double> breakpoints_;
  bool witness_ = false;
};

WeightField weight_const(double c, Interval domain = default_truncation());
/// |x|^beta
WeightField weight_power(double beta, Interval domain = default_truncation());
/// exp(a |x|)
WeightField weight_exp(double a, Interval domain = default_truncation());
WeightField weight_sum(const WeightField& a, const WeightField& b);
WeightField weight_prod(const WeightField& a, const WeightField& b);

/// r(x) = p(x) / (p(x) - 1).
ExponentField conjugate_exponent(const ExponentField& p);

/// w*(x) = w(x)^(1 - q(x)) with q the conjugate of p.
/// Throws OverflowError when a sampled value is not finite.
WeightField dual_weight(const WeightField& w, const ExponentField& p);

struct LogHolderCheck {
  double local_constant = 0.0;
  double decay_constant = 0.0;
  double p_infinity_used = 0.0;
  bool passes = false;
  /// No declared p_infinity and a domain too small for the boundary value to
  /// be a credible limit.
  bool missing_p_infinity = false;
};

/// Half-width below which an undeclared p_infinity raises the warning flag.
inline constexpr double kSmallDomainRadius = 16.0;

LogHolderCheck check_log_holder(const ExponentField& p, int sample_count, const Interval& domain);

struct WeightClassEstimate {
  double constant_estimate = 0.0;
  Interval worst_ball;
  int ball_count = 0;
  std::vector<double> p_B_values;
  std::vector<double> ball_values;
  /// False when some ball produced an infinite or unresolvable term.
  bool in_class = true;
};

/// Default ball family: centers k/2 for |k| <= 16, radii 2^j for -4 <= j <= 4,
/// kept when inside `domain`.
std::vector<Interval> default_balls(const Interval& domain = default_truncation());

/// Lower estimate of the A_p(.) constant over `balls`:
/// max_B |B|^(-p_B) ||w||_{L1(B)} ||1/w||_{L^{p'/p}(B)}.
WeightClassEstimate estimate_Apx_constant(const WeightField& w, const ExponentField& p,
                                          const std::vector<Interval>& balls,
                                          const QuadratureSettings& quad = {});

}  // namespace varnorm
