#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "varnorm/compactness.hpp"

using namespace varnorm;

namespace {

// sqrt(2 int_{-1}^{1} (Phi(u) - H(u))^2 du), Phi the normalized cumulative
// bump: the L^2 mollifier error of chi_[0,1) is this constant times sqrt(eps).
double jump_constant() {
  const int n = 200000;
  const double h = 2.0 / n;
  std::vector<double> cdf(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double a = -1 + (i - 1) * h;
    const double b = a + h;
    cdf[i] = cdf[i - 1] + h / 6 * (standard_bump(a) + 4 * standard_bump(0.5 * (a + b)) + standard_bump(b));
  }
  const double mass = cdf[n];
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = -1 + i * h;
    const double d = cdf[i] / mass - (u >= 0 ? 1.0 : 0.0);
    s += d * d * ((i == 0 || i == n) ? 0.5 : 1.0);
  }
  return std::sqrt(2 * s * h);
}

bool non_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1e-9) return false;
  return true;
}

void check_curves(const CompactnessReport& r) {
  CHECK(non_increasing(r.tail_curve.sup_values));
  if (r.approx_curve) {
    CHECK(non_increasing(r.approx_curve->sup_values));
    for (std::size_t i = 0; i < r.approx_curve->sup_values.size(); ++i)
      CHECK(r.approx_curve->pointwise_values[i] <= r.approx_curve->sup_values[i]);
  }
}

RealFunction reciprocal() {
  RealFunction f;
  f.eval = [](double x) { return 1.0 / x; };
  return f;
}

}  // namespace

TEST_CASE("curve verdicts") {
  CHECK(curve_verdict({{1, 2}, {0.5, 1e-4}}, 1e-3) == Verdict::pass);
  CHECK(curve_verdict({{1, 2}, {0.5, 1e-3}}, 1e-3) == Verdict::pass);
  CHECK(curve_verdict({{1, 2}, {0.5, 0.4}}, 1e-3) == Verdict::inconclusive);
  CHECK(curve_verdict({{1, 2}, {0.5, 0.46}}, 1e-3) == Verdict::fail);
  CHECK(curve_verdict({{1}, {0.5}}, 1e-3) == Verdict::fail);
  CHECK(conjunction({Verdict::pass, Verdict::inconclusive}) == Verdict::inconclusive);
  CHECK(conjunction({Verdict::inconclusive, Verdict::fail}) == Verdict::fail);
  CHECK(conjunction({}) == Verdict::pass);
}

TEST_CASE("ladder validation") {
  Ladders L;
  CHECK_NOTHROW(L.validate());
  L.eps = {0.25, 0.5};
  CHECK_THROWS_AS(L.validate(), DomainError);
  L = Ladders{};
  L.gamma = {};
  CHECK_THROWS_AS(L.validate(), DomainError);
  L = Ladders{};
  L.threshold = 0;
  CHECK_THROWS_AS(L.validate(), DomainError);
  const auto d = dyadic_eps_ladder(3);
  CHECK(d == std::vector<double>{0.5, 0.25, 0.125});
}

TEST_CASE("families are nested coarse first") {
  CHECK(coarse_first_grid(0, 1, 2) == std::vector<double>{0, 1, 0.5, 0.25, 0.75});
  for (int L = 1; L < 5; ++L) {
    const auto a = bump_dilates(L).params.grid;
    const auto b = bump_dilates(L + 1).params.grid;
    REQUIRE(b.size() == 2 * a.size() - 1);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
    const auto t = runaway_translates(L).params.grid;
    CHECK(t.size() == (1u << L) + 1);
    CHECK(*std::max_element(t.begin(), t.end()) == kRunawayReach);
  }
  const auto u = unit_vectors(2);
  CHECK(u.members.size() == 8);
  CHECK(u.members[3].entries[3] == 1.0);
  const auto g = geometric_sequences(1);
  CHECK(g.members[1].entries[0] == 0.5);
  CHECK(g.members[0].entries[0] == 0.0);
  CHECK(oscillations(3).members.size() == 8);
}

TEST_CASE("jump families: error constants") {
  const auto sp = constant_space(2.0);
  Ladders L;
  L.eps = dyadic_eps_ladder(24);
  const double C = jump_constant();
  const auto rm = lebesgue_report(singleton_family(chi(0, 1)), sp, ApproxMode::mollifier, L);
  const auto ra = lebesgue_report(singleton_family(chi(0, 1)), sp, ApproxMode::average, L);
  for (std::size_t i = 0; i < L.eps.size(); ++i) {
    const double e = L.eps[i];
    CHECK(std::abs(rm.approx_curve->pointwise_values[i] - C * std::sqrt(e)) <= 1e-6 * C * std::sqrt(e));
    CHECK(std::abs(ra.approx_curve->pointwise_values[i] - std::sqrt(e / 3)) <= 1e-6 * std::sqrt(e / 3));
  }
  CHECK(rm.verdict() == Verdict::pass);
  CHECK(ra.verdict() == Verdict::pass);
  check_curves(rm);
  check_curves(ra);

  // On the default ladder the jump error still falls like sqrt(eps).
  const auto short_run = lebesgue_report(singleton_family(chi(0, 1)), sp, ApproxMode::mollifier, Ladders{});
  CHECK(short_run.approx_verdict == Verdict::inconclusive);
}

TEST_CASE("canonical families agree with the net oracle") {
  const auto sp = constant_space(2.0);
  const auto am = make_amalgam(sp, 1.0);
  const Ladders L;
  const int levels = 5;
  const double net_eps = 0.25;

  struct Case {
    std::string name;
    Verdict verdict;
    NetOracleResult net;
  };
  std::vector<Case> cases;
  {
    const FamilySampler<FunctionFamily> s = [](int) { return singleton_family(canonical_bump()); };
    cases.push_back({"singleton", lebesgue_report(s(levels), sp, ApproxMode::mollifier, L).verdict(),
                     net_oracle(s, lebesgue_distance(sp), net_eps, levels)});
  }
  {
    const FamilySampler<FunctionFamily> s = oscillations;
    cases.push_back({"oscillations", lebesgue_report(s(levels), sp, ApproxMode::mollifier, L).verdict(),
                     net_oracle(s, lebesgue_distance(sp), net_eps, levels)});
  }
  {
    const FamilySampler<FunctionFamily> s = bump_dilates;
    cases.push_back({"bump_dilates", amalgam_report(s(levels), am, ApproxMode::mollifier, L).verdict(),
                     net_oracle(s, amalgam_distance(am), net_eps, levels)});
  }
  {
    const FamilySampler<FunctionFamily> s = runaway_translates;
    cases.push_back({"runaway_translates", amalgam_report(s(levels), am, ApproxMode::average, L).verdict(),
                     net_oracle(s, amalgam_distance(am), net_eps, levels)});
  }
  {
    const FamilySampler<SequenceFamily> s = unit_vectors;
    cases.push_back({"unit_vectors", sequence_report(s(levels), L).verdict(),
                     net_oracle(s, sequence_distance(), net_eps, levels)});
  }
  {
    const FamilySampler<SequenceFamily> s = geometric_sequences;
    cases.push_back({"geometric", sequence_report(s(levels), L).verdict(),
                     net_oracle(s, sequence_distance(), net_eps, levels)});
  }
  for (const auto& c : cases) {
    INFO(c.name);
    CHECK(c.verdict != Verdict::inconclusive);
    CHECK((c.verdict == Verdict::pass) == (c.net.verdict == OracleVerdict::stable));
    CHECK(c.net.net_sizes.size() == static_cast<std::size_t>(levels));
  }
  CHECK(cases[0].net.net_sizes == std::vector<std::size_t>{1, 1, 1, 1, 1});
  CHECK(cases[1].net.net_sizes == std::vector<std::size_t>{2, 4, 8, 16, 32});
  CHECK(cases[4].net.net_sizes == std::vector<std::size_t>{4, 8, 16, 32, 64});
}

TEST_CASE("report invariants") {
  const auto sp = constant_space(2.0);
  Ladders L;
  for (const auto& F : {bump_dilates(2), runaway_translates(2), oscillations(3), cell_translates(2)}) {
    for (auto mode : {ApproxMode::mollifier, ApproxMode::average, ApproxMode::translation}) {
      const auto r = lebesgue_report(F, sp, mode, L);
      INFO(F.label, " ", to_string(mode));
      check_curves(r);
      CHECK(r.bound_verdict == Verdict::pass);
      CHECK(r.tail_curve.sup_values.front() <= r.bound + 1e-9);
    }
  }
  // Translation needs |y| ~ threshold / ||f'||.
  Ladders T;
  T.eps = dyadic_eps_ladder(12);
  CHECK(lebesgue_report(singleton_family(canonical_bump()), sp, ApproxMode::translation, T).verdict() ==
        Verdict::pass);
}

TEST_CASE("amalgam report matches Lebesgue report on one cell") {
  Ladders L;
  L.rel_tol = 1e-11;
  const auto sp = constant_space(2.0);
  const auto F = oscillations(2);
  const auto lr = lebesgue_report(F, sp, ApproxMode::mollifier, L);
  // With q = p = 2 the l^2 sum of cell norms is the L^2 norm.
  const auto ar = amalgam_report(F, make_amalgam(sp, 2.0), ApproxMode::mollifier, L);
  CHECK(std::abs(lr.bound - ar.bound) <= 1e-9);
  for (std::size_t i = 0; i < L.gamma.size(); ++i)
    CHECK(std::abs(lr.tail_curve.sup_values[i] - ar.tail_curve.sup_values[i]) <= 1e-9);
  for (std::size_t i = 0; i < L.eps.size(); ++i)
    CHECK(std::abs(lr.approx_curve->sup_values[i] - ar.approx_curve->sup_values[i]) <= 1e-9);
  CHECK(lr.verdict() == ar.verdict());
  const auto a1 = amalgam_report(F, make_amalgam(sp, 1.0), ApproxMode::mollifier, L);
  CHECK(a1.verdict() == lr.verdict());
}

TEST_CASE("lloc reports") {
  const auto sp = constant_space(2.0);
  Ladders X;
  X.eps = dyadic_eps_ladder(24);
  const auto inv = lloc_report(singleton_family(reciprocal(), "reciprocal"), sp, Interval(0, 1), 4, X);
  REQUIRE(inv.size() == 4);
  for (const auto& r : inv) CHECK(r.verdict() == Verdict::pass);
  CHECK(inv[0].bound == 0.0);  // K_1, K_2 are empty in (0, 1)
  CHECK(inv[1].bound == 0.0);
  // ||1/x||_{L^2(1/3, 2/3)} = sqrt(3 - 3/2).
  CHECK(std::abs(inv[2].bound - std::sqrt(1.5)) <= 1e-8);

  const auto osc = lloc_report(plain_oscillations(7), sp, Interval(0, 1), 4, Ladders{});
  CHECK(osc[0].verdict() == Verdict::pass);
  CHECK(osc[1].verdict() == Verdict::pass);
  CHECK(osc[2].verdict() == Verdict::fail);
  CHECK(osc[3].verdict() == Verdict::fail);

  Ladders S;
  S.eps = dyadic_eps_ladder(5);
  for (const auto& r : lloc_report(singleton_family(bump(0, 1)), sp, Interval(-4, 4), 4, S))
    CHECK(r.verdict() == Verdict::pass);
}

TEST_CASE("sequence reports") {
  const Ladders L;
  CHECK(sequence_report(unit_vectors(5), L).verdict() == Verdict::fail);
  const auto g = sequence_report(geometric_sequences(3), L);
  CHECK(g.verdict() == Verdict::pass);
  // sup_r sum_k r^{2k} = (1/4) / (1 - 1/4) at r = 1/2.
  CHECK(std::abs(g.bound - 1.0 / 3.0) <= 1e-12);
  check_curves(g);
  SequenceFamily bad = geometric_sequences(1);
  bad.members[1].exponents[0] = 3.0;
  CHECK_THROWS_AS(sequence_report(bad, L), DomainError);
}

TEST_CASE("Sobolev report is the conjunction of per-order reports") {
  const auto base = constant_space(2.0);
  Ladders L;
  L.eps = dyadic_eps_ladder(6);
  for (const auto& F : {singleton_family(canonical_bump()), bump_dilates(2), runaway_translates(2)}) {
    const auto sr = sobolev_report(F, SobolevSpaceSpec{base, 1}, ApproxMode::mollifier, L);
    std::vector<Verdict> vs;
    for (int j = 0; j <= 1; ++j)
      vs.push_back(lebesgue_report(derivative_family(F, j), base, ApproxMode::mollifier, L).verdict());
    CHECK(sr.verdict == conjunction(vs));
    CHECK(sr.per_order.size() == 2);
  }
  CHECK(sobolev_report(bump_dilates(2), SobolevSpaceSpec{base, 1}, ApproxMode::mollifier, L).verdict ==
        Verdict::pass);
}

TEST_CASE("embedding transfer") {
  const auto base = constant_space(2.0);
  const SobolevSpaceSpec src{base, 1};
  const Ladders L;
  const auto good = embedding_transfer_report(bump_dilates(3), src, base, L);
  CHECK(good.hypothesis_holds);
  CHECK(good.dst_report.verdict() == Verdict::pass);
  CHECK(good.consistent);
  CHECK(good.embedding_ratio > 0.0);
  CHECK(good.embedding_ratio <= 1.0);  // ||f|| <= ||f|| + ||f'||
  const auto bad = embedding_transfer_report(runaway_translates(2), src, base, L);
  CHECK_FALSE(bad.hypothesis_holds);
  CHECK(bad.consistent);
  CHECK_THROWS_AS(embedding_transfer_report(bump_dilates(1), SobolevSpaceSpec{base, 2}, base, L),
                  DomainError);
}

TEST_CASE("net oracle") {
  const auto sp = constant_space(2.0);
  int calls = 0;
  const MemberDistance<RealFunction> counting = [&](const RealFunction& f, const RealFunction& g) {
    ++calls;
    return luxemburg_norm(difference(f, g), sp);
  };
  const auto r = net_oracle(FamilySampler<FunctionFamily>(oscillations), counting, 0.25, 3);
  CHECK(r.net_sizes == std::vector<std::size_t>{2, 4, 8});
  CHECK(r.verdict == OracleVerdict::growing);
  // Every member is a center, and each pair of k = 1..8 is measured once
  // across the three levels.
  CHECK(calls == 28);
  CHECK_THROWS_AS(net_oracle(FamilySampler<FunctionFamily>(oscillations), counting, 0.25, 1), DomainError);
  CHECK_THROWS_AS(net_oracle(FamilySampler<FunctionFamily>(oscillations), counting, 0.0, 3), DomainError);
}

TEST_CASE("empirical maximal ratio") {
  const auto sp = constant_space(2.0);
  const double r = empirical_maximal_ratio(singleton_family(canonical_bump()), sp);
  CHECK(r >= 1.0 - 1e-3);
  CHECK(std::isfinite(r));
}
