#include "varnorm/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "varnorm/operators.hpp"
#include "varnorm/parallel.hpp"

namespace varnorm {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(OracleVerdict v) {
  return v == OracleVerdict::stable ? "stable" : "growing";
}

const char* to_string(ApproxMode m) {
  switch (m) {
    case ApproxMode::mollifier: return "mollifier";
    case ApproxMode::average: return "average";
    case ApproxMode::translation: return "translation";
  }
  return "?";
}

void Ladders::validate() const {
  if (gamma.empty() || eps.empty() || K.empty()) throw DomainError("ladders must be non-empty");
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!(gamma[i] >= 0.0) || !std::isfinite(gamma[i])) throw DomainError("gamma must be finite and >= 0");
    if (i > 0 && !(gamma[i] > gamma[i - 1])) throw DomainError("gamma ladder must ascend");
  }
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !std::isfinite(eps[i])) throw DomainError("eps must be finite and > 0");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw DomainError("eps ladder must descend");
  }
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (K[i] < 0) throw DomainError("K must be >= 0");
    if (i > 0 && !(K[i] > K[i - 1])) throw DomainError("K ladder must ascend");
  }
  if (!(threshold > 0.0)) throw DomainError("threshold must be > 0");
  if (!(rel_tol > 0.0) || rel_tol >= 1e-2) throw DomainError("rel_tol must be in (0, 1e-2)");
}

std::vector<double> dyadic_eps_ladder(int n) {
  if (n < 1) throw DomainError("ladder length must be >= 1");
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::ldexp(1.0, -i));
  return out;
}

Verdict curve_verdict(const CriterionCurve& c, double threshold) {
  const auto& v = c.sup_values;
  if (v.empty()) return Verdict::pass;
  for (double x : v)
    if (x <= threshold) return Verdict::pass;
  if (v.size() >= 2) {
    const double last = v.back();
    const double prev = v[v.size() - 2];
    if (std::isfinite(last) && last < kStillDecreasingRatio * prev) return Verdict::inconclusive;
  }
  return Verdict::fail;
}

Verdict conjunction(const std::vector<Verdict>& vs) {
  bool inconclusive = false;
  for (Verdict v : vs) {
    if (v == Verdict::fail) return Verdict::fail;
    if (v == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::inconclusive : Verdict::pass;
}

Verdict CompactnessReport::verdict() const {
  std::vector<Verdict> vs{bound_verdict, tail_verdict};
  if (approx_curve) vs.push_back(approx_verdict);
  return conjunction(vs);
}

// ---------------------------------------------------------------------------
// Families

std::vector<double> coarse_first_grid(double a, double b, int level) {
  if (level < 0) throw DomainError("level must be >= 0");
  std::vector<double> out{a, b};
  for (int l = 1; l <= level; ++l) {
    const int n = 1 << l;
    for (int i = 1; i < n; i += 2) out.push_back(a + (b - a) * i / n);
  }
  return out;
}

RealFunction canonical_bump() { return bump(0.0, 2.0); }

FunctionFamily singleton_family(const RealFunction& f, std::string label) {
  return FunctionFamily{{f}, std::move(label), GeneratorParams{"singleton", {0.0}}};
}

FunctionFamily bump_dilates(int level) {
  FunctionFamily F{{}, "bump_dilates", GeneratorParams{"bump_dilates", coarse_first_grid(1.0, 2.0, level)}};
  for (double s : F.params.grid) F.members.push_back(dilate(canonical_bump(), s));
  return F;
}

namespace {

std::vector<double> integer_grid(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

void check_level(int level) {
  if (level < 0 || level > 20) throw DomainError("level must be in [0, 20]");
}

}  // namespace

FunctionFamily oscillations(int level) {
  check_level(level);
  FunctionFamily F{{}, "oscillations", GeneratorParams{"oscillations", integer_grid(1, 1 << level)}};
  for (double k : F.params.grid) F.members.push_back(prod(sinw(k * std::numbers::pi), chi(0.0, 1.0)));
  return F;
}

FunctionFamily modulated_bumps(int level) {
  check_level(level);
  FunctionFamily F{{}, "modulated_bumps", GeneratorParams{"modulated_bumps", integer_grid(1, 1 << level)}};
  for (double k : F.params.grid) F.members.push_back(prod(sinw(k * std::numbers::pi), canonical_bump()));
  return F;
}

FunctionFamily runaway_translates(int level) {
  FunctionFamily F{{}, "runaway_translates", GeneratorParams{"runaway_translates", coarse_first_grid(0.0, kRunawayReach, level)}};
  for (double t : F.params.grid) F.members.push_back(gauss(t, 1.0));
  return F;
}

FunctionFamily cell_translates(int level) {
  check_level(level);
  FunctionFamily F{{}, "cell_translates", GeneratorParams{"cell_translates", integer_grid(0, 1 << level)}};
  for (double t : F.params.grid) F.members.push_back(chi(t, t + 1.0));
  return F;
}

FunctionFamily plain_oscillations(int level) {
  check_level(level);
  FunctionFamily F{{}, "plain_oscillations", GeneratorParams{"plain_oscillations", integer_grid(1, 1 << level)}};
  for (double k : F.params.grid) F.members.push_back(sinw(k));
  return F;
}

SequenceFamily unit_vectors(int level) {
  check_level(level);
  const int M = 1 << (level + 1);
  SequenceFamily S{{}, "unit_vectors", GeneratorParams{"unit_vectors", integer_grid(1, M)}};
  for (int m = 1; m <= M; ++m) {
    std::vector<double> x(M, 0.0);
    x[m - 1] = 1.0;
    S.members.push_back(uniform_sequence(std::move(x), 2.0));
  }
  return S;
}

SequenceFamily geometric_sequences(int level) {
  SequenceFamily S{{}, "geometric_sequences", GeneratorParams{"geometric_sequences", coarse_first_grid(0.0, 0.5, level)}};
  for (double r : S.params.grid) {
    std::vector<double> x(40);
    double v = 1.0;
    for (double& e : x) e = (v *= r);
    S.members.push_back(uniform_sequence(std::move(x), 2.0));
  }
  return S;
}

// ---------------------------------------------------------------------------
// Engines

namespace {

using NormFn = std::function<double(const RealFunction&, const std::optional<Region>&)>;

// Translation offsets: the dyadic refinements of the largest ladder value
// down to an eighth of the smallest, plus the ladder values themselves.
std::vector<double> translation_offsets(const std::vector<double>& eps) {
  std::vector<double> d(eps.begin(), eps.end());
  const double stop = eps.back() / 8.0;
  for (double y = eps.front() / 2.0; y >= stop * (1 - 1e-12); y /= 2.0) d.push_back(y);
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

RealFunction approximant(const RealFunction& f, ApproxMode mode, double t) {
  switch (mode) {
    case ApproxMode::mollifier: return mollified(f, t);
    case ApproxMode::average: return averaged(f, t);
    case ApproxMode::translation: break;
  }
  throw DomainError("translation mode has no single approximant");
}

CompactnessReport function_report(const FunctionFamily& F, const Interval& window, const NormFn& norm,
                                  ApproxMode mode, const Ladders& ladders, std::string engine) {
  ladders.validate();
  if (F.members.empty()) throw DomainError("family must be non-empty");
  const std::size_t ng = ladders.gamma.size();
  const std::size_t ne = ladders.eps.size();
  const auto offsets = translation_offsets(ladders.eps);
  const std::size_t na = mode == ApproxMode::translation ? offsets.size() : ne;

  // Row layout: [norm, tails..., approx...].
  const std::size_t width = 1 + ng + na;
  std::vector<std::vector<double>> rows(F.members.size(), std::vector<double>(width));
  const std::size_t tasks = F.members.size() * width;
  parallel_for(tasks, [&](std::size_t t) {
    const std::size_t i = t / width;
    const std::size_t c = t % width;
    const RealFunction& f = F.members[i];
    double v;
    if (c == 0) {
      v = norm(f, std::nullopt);
    } else if (c <= ng) {
      v = norm(f, tail_region(ladders.gamma[c - 1], window));
    } else if (mode == ApproxMode::translation) {
      const double y = offsets[c - 1 - ng];
      v = std::max(norm(difference(translate(f, -y), f), std::nullopt),
                   norm(difference(translate(f, y), f), std::nullopt));
    } else {
      v = norm(difference(approximant(f, mode, ladders.eps[c - 1 - ng]), f), std::nullopt);
    }
    rows[i][c] = v;
  });

  CompactnessReport r;
  r.label = F.label;
  r.engine = std::move(engine);
  r.mode = to_string(mode);
  for (const auto& row : rows) r.bound = std::max(r.bound, row[0]);
  r.bound_verdict = std::isfinite(r.bound) ? Verdict::pass : Verdict::fail;

  r.tail_curve.parameter_values = ladders.gamma;
  for (std::size_t g = 0; g < ng; ++g) {
    double s = 0.0;
    for (const auto& row : rows) s = std::max(s, row[1 + g]);
    r.tail_curve.sup_values.push_back(s);
  }
  r.tail_verdict = curve_verdict(r.tail_curve, ladders.threshold);

  // The value at eps is the sup over every tested parameter <= eps, so the
  // curve reads "for all eps' <= eps".
  CriterionCurve ac;
  ac.parameter_values = ladders.eps;
  const auto& params = mode == ApproxMode::translation ? offsets : ladders.eps;
  for (std::size_t e = 0; e < ne; ++e) {
    double s = 0.0, at = 0.0;
    for (const auto& row : rows) {
      for (std::size_t o = 0; o < params.size(); ++o) {
        if (params[o] <= ladders.eps[e]) s = std::max(s, row[1 + ng + o]);
        if (params[o] == ladders.eps[e]) at = std::max(at, row[1 + ng + o]);
      }
    }
    ac.sup_values.push_back(s);
    ac.pointwise_values.push_back(at);
  }
  r.approx_verdict = curve_verdict(ac, ladders.threshold);
  r.approx_curve = std::move(ac);
  return r;
}

}  // namespace

namespace {

LebesgueSpaceSpec with_tol(LebesgueSpaceSpec sp, const Ladders& ladders) {
  sp.quad.rel_tol = ladders.rel_tol;
  return sp;
}

AmalgamSpaceSpec with_tol(AmalgamSpaceSpec sp, const Ladders& ladders) {
  sp.local.quad.rel_tol = ladders.rel_tol;
  return sp;
}

}  // namespace

CompactnessReport lebesgue_report(const FunctionFamily& F, const LebesgueSpaceSpec& space,
                                  ApproxMode mode, const Ladders& ladders) {
  const LebesgueSpaceSpec sp = with_tol(space, ladders);
  const NormFn norm = [&sp](const RealFunction& f, const std::optional<Region>& region) {
    return region ? luxemburg_norm(f, sp, *region) : luxemburg_norm(f, sp);
  };
  return function_report(F, sp.truncation, norm, mode, ladders, "lebesgue");
}

CompactnessReport amalgam_report(const FunctionFamily& F, const AmalgamSpaceSpec& space,
                                 ApproxMode mode, const Ladders& ladders) {
  const AmalgamSpaceSpec sp = with_tol(space, ladders);
  const NormFn norm = [&sp](const RealFunction& f, const std::optional<Region>& region) {
    return amalgam_norm(f, sp, region);
  };
  return function_report(F, sp.local.truncation, norm, mode, ladders, "amalgam");
}

std::vector<CompactnessReport> lloc_report(const FunctionFamily& F, const LebesgueSpaceSpec& sp,
                                           const Interval& omega, int j_max,
                                           const Ladders& ladders) {
  if (j_max < 1) throw DomainError("lloc_report needs j_max >= 1");
  std::vector<CompactnessReport> out;
  for (int j = 1; j <= j_max; ++j) {
    const auto K = exhaustion_set(omega, j);
    if (!K) {
      CompactnessReport r;
      r.label = F.label + "@K" + std::to_string(j);
      r.engine = "lloc";
      r.mode = to_string(ApproxMode::mollifier);
      r.tail_curve.parameter_values = ladders.gamma;
      r.tail_curve.sup_values.assign(ladders.gamma.size(), 0.0);
      const std::vector<double> zeros(ladders.eps.size(), 0.0);
      r.approx_curve = CriterionCurve{ladders.eps, zeros, zeros};
      out.push_back(std::move(r));
      continue;
    }
    FunctionFamily FK{{}, F.label + "@K" + std::to_string(j), F.params};
    for (const auto& f : F.members) FK.members.push_back(restrict_to(f, Region{*K}));
    auto r = lebesgue_report(FK, sp, ApproxMode::mollifier, ladders);
    r.engine = "lloc";
    out.push_back(std::move(r));
  }
  return out;
}

CompactnessReport sequence_report(const SequenceFamily& S, const Ladders& ladders) {
  ladders.validate();
  if (S.members.empty()) throw DomainError("family must be non-empty");
  for (const auto& s : S.members) {
    s.validate();
    if (s.exponents != S.members.front().exponents || s.weights != S.members.front().weights)
      throw DomainError("sequence family members must share exponents and weights");
  }
  CompactnessReport r;
  r.label = S.label;
  r.engine = "sequence";
  r.mode = "none";
  for (const auto& s : S.members) r.bound = std::max(r.bound, seq_modular(s, 1.0));
  r.bound_verdict = std::isfinite(r.bound) ? Verdict::pass : Verdict::fail;
  r.tail_curve.parameter_values.assign(ladders.K.begin(), ladders.K.end());
  for (int K : ladders.K) {
    double v = 0.0;
    for (const auto& s : S.members) {
      const int n = static_cast<int>(s.entries.size());
      v = std::max(v, seq_tail(s, std::min(K, n)));
    }
    r.tail_curve.sup_values.push_back(v);
  }
  r.tail_verdict = curve_verdict(r.tail_curve, ladders.threshold);
  return r;
}

FunctionFamily derivative_family(const FunctionFamily& F, int order) {
  FunctionFamily out{{}, F.label + "/D" + std::to_string(order), F.params};
  for (const auto& f : F.members) out.members.push_back(derivative(f, order));
  return out;
}

SobolevReport sobolev_report(const FunctionFamily& F, const SobolevSpaceSpec& sp,
                             ApproxMode mode, const Ladders& ladders) {
  if (sp.order < 0) throw DomainError("Sobolev order must be >= 0");
  SobolevReport out;
  std::vector<Verdict> vs;
  for (int j = 0; j <= sp.order; ++j) {
    auto r = lebesgue_report(derivative_family(F, j), sp.base, mode, ladders);
    r.engine = "sobolev";
    vs.push_back(r.verdict());
    out.per_order.push_back(std::move(r));
  }
  out.verdict = conjunction(vs);
  return out;
}

TransferReport embedding_transfer_report(const FunctionFamily& F, const SobolevSpaceSpec& source,
                                         const LebesgueSpaceSpec& destination,
                                         const Ladders& ladders) {
  ladders.validate();
  const SobolevSpaceSpec src{with_tol(source.base, ladders), source.order};
  const LebesgueSpaceSpec dst = with_tol(destination, ladders);
  if (src.order != 1) throw DomainError("embedding transfer needs a first-order source space");
  if (F.members.empty()) throw DomainError("family must be non-empty");
  const std::size_t n = F.members.size();
  const std::size_t ng = ladders.gamma.size();
  std::vector<double> src_norms(n), dst_norms(n);
  std::vector<std::vector<double>> tails(n, std::vector<double>(ng));
  parallel_for(n * (ng + 2), [&](std::size_t t) {
    const std::size_t i = t / (ng + 2);
    const std::size_t c = t % (ng + 2);
    const auto& f = F.members[i];
    if (c == 0) src_norms[i] = sobolev_norm(f, src);
    else if (c == 1) dst_norms[i] = luxemburg_norm(f, dst);
    else tails[i][c - 2] = sobolev_tail_modular(f, src, ladders.gamma[c - 2]);
  });

  TransferReport r;
  for (std::size_t i = 0; i < n; ++i) {
    r.sobolev_bound = std::max(r.sobolev_bound, src_norms[i]);
    if (src_norms[i] > 0.0) r.embedding_ratio = std::max(r.embedding_ratio, dst_norms[i] / src_norms[i]);
  }
  r.sobolev_tail_curve.parameter_values = ladders.gamma;
  for (std::size_t g = 0; g < ng; ++g) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, tails[i][g]);
    r.sobolev_tail_curve.sup_values.push_back(s);
  }
  r.hypothesis_holds = std::isfinite(r.sobolev_bound) &&
                       curve_verdict(r.sobolev_tail_curve, ladders.threshold) == Verdict::pass;
  r.dst_report = lebesgue_report(F, dst, ApproxMode::average, ladders);
  r.consistent = !r.hypothesis_holds || r.dst_report.verdict() == Verdict::pass;
  return r;
}

// ---------------------------------------------------------------------------
// Net oracle

namespace {

template <class Family, class Member>
NetOracleResult run_net_oracle(const FamilySampler<Family>& sampler,
                               const MemberDistance<Member>& dist, double eps, int levels) {
  if (!(eps > 0.0)) throw DomainError("net eps must be > 0");
  if (levels < 2) throw DomainError("net oracle needs at least two levels");
  std::map<std::pair<double, double>, double> cache;
  std::mutex mu;
  NetOracleResult out;
  out.eps = eps;
  for (int level = 1; level <= levels; ++level) {
    const Family F = sampler(level);
    const bool keyed = F.params.grid.size() == F.members.size();
    std::vector<std::size_t> centers;
    for (std::size_t i = 0; i < F.members.size(); ++i) {
      std::vector<double> d(centers.size());
      parallel_for(centers.size(), [&](std::size_t c) {
        const std::size_t j = centers[c];
        std::pair<double, double> key;
        if (keyed) {
          key = std::minmax(F.params.grid[i], F.params.grid[j]);
          std::lock_guard<std::mutex> lock(mu);
          if (auto it = cache.find(key); it != cache.end()) {
            d[c] = it->second;
            return;
          }
        }
        d[c] = dist(F.members[i], F.members[j]);
        if (keyed) {
          std::lock_guard<std::mutex> lock(mu);
          cache.emplace(key, d[c]);
        }
      });
      if (std::all_of(d.begin(), d.end(), [&](double v) { return v >= eps; })) centers.push_back(i);
    }
    out.net_sizes.push_back(centers.size());
  }
  const auto& s = out.net_sizes;
  out.verdict = s[s.size() - 1] == s[s.size() - 2] ? OracleVerdict::stable : OracleVerdict::growing;
  return out;
}

}  // namespace

NetOracleResult net_oracle(const FamilySampler<FunctionFamily>& sampler,
                           const MemberDistance<RealFunction>& dist, double eps, int levels) {
  return run_net_oracle<FunctionFamily, RealFunction>(sampler, dist, eps, levels);
}

NetOracleResult net_oracle(const FamilySampler<SequenceFamily>& sampler,
                           const MemberDistance<WeightedSequence>& dist, double eps, int levels) {
  return run_net_oracle<SequenceFamily, WeightedSequence>(sampler, dist, eps, levels);
}

MemberDistance<RealFunction> lebesgue_distance(const LebesgueSpaceSpec& sp) {
  return [sp](const RealFunction& f, const RealFunction& g) {
    return luxemburg_norm(difference(f, g), sp);
  };
}

MemberDistance<RealFunction> amalgam_distance(const AmalgamSpaceSpec& sp) {
  return [sp](const RealFunction& f, const RealFunction& g) {
    return amalgam_norm(difference(f, g), sp);
  };
}

MemberDistance<WeightedSequence> sequence_distance() {
  return [](const WeightedSequence& a, const WeightedSequence& b) {
    if (a.exponents != b.exponents || a.weights != b.weights)
      throw DomainError("sequences must share exponents and weights");
    WeightedSequence d = a;
    for (std::size_t k = 0; k < d.entries.size(); ++k) d.entries[k] -= b.entries[k];
    return seq_norm(d);
  };
}

// ---------------------------------------------------------------------------

namespace {

double discrete_norm(const std::vector<double>& xs, const std::vector<double>& v,
                     const LebesgueSpaceSpec& sp) {
  const double h = xs[1] - xs[0];
  std::vector<double> p(xs.size()), w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    p[i] = sp.p.eval()(xs[i]);
    w[i] = sp.w.eval()(xs[i]);
  }
  const auto rho = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double t = std::pow(std::abs(v[i]) / lambda, p[i]) * w[i];
      s += (i == 0 || i + 1 == xs.size()) ? 0.5 * t : t;
    }
    return s * h;
  };
  if (rho(1.0) == 0.0) return 0.0;
  try {
    return solve_monotone_decreasing(rho, 1.0, 1e-10);
  } catch (const NoBracketError&) {
    return 0.0;
  }
}

}  // namespace

double empirical_maximal_ratio(const FunctionFamily& F, const LebesgueSpaceSpec& sp, int samples) {
  if (samples < 3) throw DomainError("need at least 3 samples");
  const Interval T = sp.truncation;
  std::vector<double> xs(samples);
  for (int i = 0; i < samples; ++i) xs[i] = T.lo + (T.hi - T.lo) * i / (samples - 1);
  const auto rg = make_radius_grid();
  double ratio = 0.0;
  for (const auto& f : F.members) {
    std::vector<double> fv(samples), mv(samples);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
      fv[i] = f(xs[i]);
      mv[i] = maximal(f, xs[i], rg, sp.quad);
    });
    const double nf = discrete_norm(xs, fv, sp);
    if (nf > 0.0) ratio = std::max(ratio, discrete_norm(xs, mv, sp) / nf);
  }
  return ratio;
}

}  // namespace varnorm
