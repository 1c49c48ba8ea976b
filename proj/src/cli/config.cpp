#include "varnorm/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "varnorm/expr.hpp"

namespace varnorm::cli {

namespace {

const std::vector<std::string> kSpaces{"lebesgue", "amalgam", "sequence", "sobolev"};
const std::vector<std::string> kModes{"mollifier", "average", "translation"};

bool one_of(const std::string& s, const std::vector<std::string>& xs) {
  return std::find(xs.begin(), xs.end(), s) != xs.end();
}

std::string listing(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : " | ") + x;
  return out;
}

/// Object reader that rejects keys nobody asked for.
class Reader {
public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw InputError(where_ + " must be a JSON object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw InputError(where_ + "." + key + ": " + e.what());
    }
  }

  const json* raw(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return (it == j_.end() || it->is_null()) ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw InputError("unknown key " + where_ + "." + k);
  }

private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

Interval interval_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(where + " must be [lo, hi]");
  const double lo = j[0].get<double>(), hi = j[1].get<double>();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw InputError(where + " needs finite lo < hi");
  return Interval(lo, hi);
}

json interval_to(const Interval& i) { return json::array({i.lo, i.hi}); }

double q_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    throw InputError("q must be a number >= 1 or \"inf\"");
  }
  if (!j.is_number()) throw InputError("q must be a number >= 1 or \"inf\"");
  return j.get<double>();
}

std::string canonical(const std::string& text, expr::Context ctx, const std::string& key) {
  try {
    return expr::print(expr::parse(text, ctx));
  } catch (const expr::ParseError& e) {
    throw InputError(key + ": " + e.what());
  }
}

template <class F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw InputError(what + ": " + e.what());
  } catch (const OverflowError& e) {
    throw InputError(what + ": " + e.what());
  }
}

}  // namespace

ScenarioConfig::ScenarioConfig() {
  for (int k = -8; k <= 8; ++k) points.push_back(0.5 * k);
}

const std::vector<std::string>& function_family_kinds() {
  static const std::vector<std::string> kinds{"bump_dilates",       "cell_translates",
                                              "modulated_bumps",    "oscillations",
                                              "plain_oscillations", "runaway_translates"};
  return kinds;
}

const std::vector<std::string>& sequence_family_kinds() {
  static const std::vector<std::string> kinds{"geometric_sequences", "unit_vectors"};
  return kinds;
}

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig c;
  Reader r(j, "config");
  r.get("space", c.space);
  r.get("exponent", c.exponent);
  r.get("weight", c.weight);
  r.get("functions", c.functions);
  if (const json* f = r.raw("family")) {
    Reader rf(*f, "family");
    FamilyConfig fc;
    rf.get("kind", fc.kind);
    rf.get("level", fc.level);
    rf.finish();
    c.family = fc;
  }
  if (const json* s = r.raw("sequence")) {
    Reader rs(*s, "sequence");
    rs.get("members", c.sequence.members);
    rs.get("p", c.sequence.p);
    rs.get("w", c.sequence.w);
    rs.finish();
  }
  if (const json* q = r.raw("q")) c.q = q_from(*q);
  r.get("order", c.order);
  r.get("mode", c.mode);
  if (const json* o = r.raw("omega")) c.omega = interval_from(*o, "omega");
  r.get("j_max", c.j_max);
  if (const json* l = r.raw("ladders")) {
    Reader rl(*l, "ladders");
    rl.get("gamma", c.ladders.gamma);
    rl.get("eps", c.ladders.eps);
    rl.get("K", c.ladders.K);
    rl.get("threshold", c.ladders.threshold);
    rl.get("rel_tol", c.ladders.rel_tol);
    rl.finish();
  }
  if (const json* t = r.raw("tolerances")) {
    Reader rt(*t, "tolerances");
    rt.get("rel_tol", c.tolerances.rel_tol);
    rt.get("abs_tol", c.tolerances.abs_tol);
    rt.get("max_depth", c.tolerances.max_depth);
    rt.get("min_depth", c.tolerances.min_depth);
    rt.get("panel_width", c.tolerances.panel_width);
    rt.finish();
  }
  if (const json* t = r.raw("truncation")) c.truncation = interval_from(*t, "truncation");
  r.get("seed", c.seed);
  if (const json* n = r.raw("net")) {
    Reader rn(*n, "net");
    rn.get("eps", c.net.eps);
    rn.get("levels", c.net.levels);
    rn.finish();
  }
  r.get("points", c.points);
  if (const json* g = r.raw("radii")) {
    Reader rg(*g, "radii");
    rg.get("r_min", c.radii.r_min);
    rg.get("r_max", c.radii.r_max);
    rg.get("count", c.radii.count);
    rg.finish();
  }
  if (const json* b = r.raw("balls")) {
    if (!b->is_array()) throw InputError("balls must be a list of [lo, hi]");
    std::vector<Interval> balls;
    for (const auto& x : *b) balls.push_back(interval_from(x, "balls[]"));
    c.balls = balls;
  }
  if (const json* t = r.raw("transfer")) {
    Reader rt(*t, "transfer");
    TransferConfig tc{"const(2)", "const(1)"};
    rt.get("exponent", tc.exponent);
    rt.get("weight", tc.weight);
    rt.finish();
    c.transfer = tc;
  }
  r.get("maximal_ratio", c.maximal_ratio);
  r.get("suite", c.suite);
  r.get("scenarios", c.scenarios);
  r.finish();
  validate(c);

  c.exponent = canonical(c.exponent, expr::Context::exponent, "exponent");
  c.weight = canonical(c.weight, expr::Context::weight, "weight");
  for (auto& f : c.functions) f = canonical(f, expr::Context::function, "functions[]");
  if (c.transfer) {
    c.transfer->exponent = canonical(c.transfer->exponent, expr::Context::exponent, "transfer.exponent");
    c.transfer->weight = canonical(c.transfer->weight, expr::Context::weight, "transfer.weight");
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("config file " + path + ": " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["space"] = c.space;
  j["exponent"] = c.exponent;
  j["weight"] = c.weight;
  j["functions"] = c.functions;
  j["family"] = c.family ? json{{"kind", c.family->kind}, {"level", c.family->level}} : json(nullptr);
  j["sequence"] = {{"members", c.sequence.members}, {"p", c.sequence.p}, {"w", c.sequence.w}};
  j["q"] = std::isinf(c.q) ? json("inf") : json(c.q);
  j["order"] = c.order;
  j["mode"] = c.mode;
  j["omega"] = c.omega ? interval_to(*c.omega) : json(nullptr);
  j["j_max"] = c.j_max;
  j["ladders"] = {{"gamma", c.ladders.gamma},
                  {"eps", c.ladders.eps},
                  {"K", c.ladders.K},
                  {"threshold", c.ladders.threshold},
                  {"rel_tol", c.ladders.rel_tol}};
  j["tolerances"] = {{"rel_tol", c.tolerances.rel_tol},
                     {"abs_tol", c.tolerances.abs_tol},
                     {"max_depth", c.tolerances.max_depth},
                     {"min_depth", c.tolerances.min_depth},
                     {"panel_width", c.tolerances.panel_width}};
  j["truncation"] = interval_to(c.truncation);
  j["seed"] = c.seed;
  j["net"] = {{"eps", c.net.eps}, {"levels", c.net.levels}};
  j["points"] = c.points;
  j["radii"] = {{"r_min", c.radii.r_min}, {"r_max", c.radii.r_max}, {"count", c.radii.count}};
  if (c.balls) {
    json b = json::array();
    for (const auto& i : *c.balls) b.push_back(interval_to(i));
    j["balls"] = b;
  } else {
    j["balls"] = nullptr;
  }
  j["transfer"] = c.transfer ? json{{"exponent", c.transfer->exponent}, {"weight", c.transfer->weight}}
                             : json(nullptr);
  j["maximal_ratio"] = c.maximal_ratio;
  j["suite"] = c.suite;
  j["scenarios"] = c.scenarios;
  return j;
}

void validate(const ScenarioConfig& c) {
  if (!one_of(c.space, kSpaces)) throw InputError("space must be one of " + listing(kSpaces));
  if (!one_of(c.mode, kModes)) throw InputError("mode must be one of " + listing(kModes));
  if (c.family) {
    const auto& kinds = c.space == "sequence" ? sequence_family_kinds() : function_family_kinds();
    if (!one_of(c.family->kind, kinds))
      throw InputError("family.kind for space " + c.space + " must be one of " + listing(kinds));
    if (c.family->level < 0 || c.family->level > 12) throw InputError("family.level must be in [0, 12]");
  }
  if (!(c.q >= 1.0)) throw InputError("q must be >= 1");
  if (c.order < 0 || c.order > kMaxExactOrder) throw InputError("order must be in [0, 2]");
  if (c.j_max < 1) throw InputError("j_max must be >= 1");
  guarded("ladders", [&] {
    c.ladders.validate();
    return 0;
  });
  guarded("tolerances", [&] {
    c.tolerances.validate();
    return 0;
  });
  if (!(c.net.eps > 0.0) || c.net.levels < 2 || c.net.levels > 10)
    throw InputError("net needs eps > 0 and levels in [2, 10]");
  for (double x : c.points)
    if (!std::isfinite(x)) throw InputError("points must be finite");
  if (!(c.radii.r_min > 0.0 && c.radii.r_min < c.radii.r_max) || c.radii.count < 2)
    throw InputError("radii needs 0 < r_min < r_max and count >= 2");
  if (!(c.sequence.p >= 1.0) || !(c.sequence.w > 0.0))
    throw InputError("sequence needs p >= 1 and w > 0");
  if (c.scenarios < 1 || c.scenarios > 100000) throw InputError("scenarios must be in [1, 100000]");
}

LebesgueSpaceSpec lebesgue_space(const ScenarioConfig& c) {
  return guarded("space", [&] {
    LebesgueSpaceSpec sp{expr::parse_exponent(c.exponent, c.truncation),
                         expr::parse_weight(c.weight, c.truncation), c.truncation, c.tolerances};
    return sp;
  });
}

AmalgamSpaceSpec amalgam_space(const ScenarioConfig& c) {
  return guarded("space", [&] { return make_amalgam(lebesgue_space(c), c.q); });
}

SobolevSpaceSpec sobolev_space(const ScenarioConfig& c) {
  return SobolevSpaceSpec{lebesgue_space(c), c.order};
}

ApproxMode approx_mode(const ScenarioConfig& c) {
  if (c.mode == "average") return ApproxMode::average;
  if (c.mode == "translation") return ApproxMode::translation;
  return ApproxMode::mollifier;
}

RadiusGrid radius_grid(const ScenarioConfig& c) {
  return guarded("radii", [&] { return make_radius_grid(c.radii.r_min, c.radii.r_max, c.radii.count); });
}

FunctionFamily function_family_at(const std::string& kind, int level) {
  if (kind == "bump_dilates") return bump_dilates(level);
  if (kind == "cell_translates") return cell_translates(level);
  if (kind == "modulated_bumps") return modulated_bumps(level);
  if (kind == "oscillations") return oscillations(level);
  if (kind == "plain_oscillations") return plain_oscillations(level);
  if (kind == "runaway_translates") return runaway_translates(level);
  throw InputError("unknown function family " + kind);
}

SequenceFamily sequence_family_at(const std::string& kind, int level) {
  if (kind == "geometric_sequences") return geometric_sequences(level);
  if (kind == "unit_vectors") return unit_vectors(level);
  throw InputError("unknown sequence family " + kind);
}

FunctionFamily function_family(const ScenarioConfig& c) {
  if (c.family) return function_family_at(c.family->kind, c.family->level);
  if (c.functions.empty()) throw InputError("no functions: set functions or family");
  FunctionFamily F;
  F.label = "functions";
  F.params.kind = "explicit";
  for (std::size_t i = 0; i < c.functions.size(); ++i) {
    F.members.push_back(guarded(c.functions[i], [&] { return expr::parse_function(c.functions[i]); }));
    F.params.grid.push_back(static_cast<double>(i));
  }
  return F;
}

SequenceFamily sequence_family(const ScenarioConfig& c) {
  if (c.family) return sequence_family_at(c.family->kind, c.family->level);
  if (c.sequence.members.empty()) throw InputError("no sequences: set sequence.members or family");
  SequenceFamily S;
  S.label = "sequences";
  S.params.kind = "explicit";
  for (std::size_t i = 0; i < c.sequence.members.size(); ++i) {
    S.members.push_back(guarded("sequence.members", [&] {
      WeightedSequence s = uniform_sequence(c.sequence.members[i], c.sequence.p, c.sequence.w);
      s.validate();
      return s;
    }));
    S.params.grid.push_back(static_cast<double>(i));
  }
  return S;
}

}  // namespace varnorm::cli
