#include "varnorm/cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>

#include "varnorm/cli/suites.hpp"
#include "varnorm/expr.hpp"
#include "varnorm/parallel.hpp"
#include "varnorm/spaces.hpp"

namespace varnorm::cli {

namespace {

json curve_json(const CriterionCurve& c) {
  return {{"parameter_values", c.parameter_values},
          {"sup_values", c.sup_values},
          {"pointwise_values", c.pointwise_values}};
}

json report_json(const CompactnessReport& r) {
  json j{{"label", r.label},
         {"engine", r.engine},
         {"mode", r.mode},
         {"bound", r.bound},
         {"bound_verdict", to_string(r.bound_verdict)},
         {"tail_curve", curve_json(r.tail_curve)},
         {"tail_verdict", to_string(r.tail_verdict)},
         {"approx_curve", r.approx_curve ? curve_json(*r.approx_curve) : json(nullptr)},
         {"approx_verdict", to_string(r.approx_verdict)},
         {"net_sizes", r.net_sizes},
         {"oracle_verdict", r.oracle_verdict ? json(to_string(*r.oracle_verdict)) : json(nullptr)},
         {"verdict", to_string(r.verdict())}};
  return j;
}

std::string slug(std::string s) {
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  return s;
}

void export_curves(std::vector<CurveExport>& out, const CompactnessReport& r, const std::string& stem) {
  out.push_back({stem + "_tail", r.tail_curve.parameter_values, r.tail_curve.sup_values});
  if (r.approx_curve)
    out.push_back({stem + "_approx", r.approx_curve->parameter_values, r.approx_curve->sup_values});
}

std::string member_name(const ScenarioConfig& c, const FunctionFamily& F, std::size_t i) {
  if (!c.family) return c.functions.at(i);
  return F.label + "[" + expr::format_number(F.params.grid.at(i)) + "]";
}

CommandResult norm_or_modular(const ScenarioConfig& c, bool norm) {
  CommandResult out;
  json values = json::array();
  const char* key = norm ? "norm" : "modular";
  if (c.space == "sequence") {
    const SequenceFamily S = sequence_family(c);
    for (std::size_t i = 0; i < S.members.size(); ++i)
      values.push_back({{"index", i},
                        {key, norm ? seq_norm(S.members[i]) : seq_modular(S.members[i], 1.0)}});
    out.results["values"] = values;
    return out;
  }
  const FunctionFamily F = function_family(c);
  std::vector<json> rows(F.members.size());
  if (c.space == "lebesgue") {
    const auto sp = lebesgue_space(c);
    parallel_for(rows.size(), [&](std::size_t i) {
      const RealFunction& f = F.members[i];
      rows[i][key] = norm ? luxemburg_norm(f, sp) : modular(f, sp);
      const auto tail = truncation_tail_bound(f, sp);
      rows[i]["truncation_tail_bound"] = tail ? json(*tail) : json(nullptr);
    });
  } else if (c.space == "amalgam") {
    const auto sp = amalgam_space(c);
    parallel_for(rows.size(), [&](std::size_t i) {
      rows[i][key] = norm ? amalgam_norm(F.members[i], sp) : modular(F.members[i], sp.local);
    });
  } else {
    const auto sp = sobolev_space(c);
    parallel_for(rows.size(), [&](std::size_t i) {
      if (norm) {
        const auto orders = sobolev_order_norms(F.members[i], sp);
        rows[i]["order_norms"] = orders;
        double total = 0.0;
        for (double x : orders) total += x;
        rows[i][key] = total;
      } else {
        rows[i][key] = sobolev_modular(F.members[i], sp);
      }
    });
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i]["expr"] = member_name(c, F, i);
    values.push_back(rows[i]);
  }
  out.results["values"] = values;
  return out;
}

CommandResult maximal_command(const ScenarioConfig& c) {
  if (c.space == "sequence") throw InputError("maximal needs a function space");
  const FunctionFamily F = function_family(c);
  const RadiusGrid rg = radius_grid(c);
  std::vector<std::vector<double>> vals(F.members.size(), std::vector<double>(c.points.size()));
  const std::size_t n = c.points.size();
  parallel_for(F.members.size() * n, [&](std::size_t t) {
    vals[t / n][t % n] = maximal(F.members[t / n], c.points[t % n], rg, c.tolerances);
  });
  CommandResult out;
  json values = json::array();
  for (std::size_t i = 0; i < F.members.size(); ++i)
    values.push_back({{"expr", member_name(c, F, i)}, {"values", vals[i]}});
  out.results["points"] = c.points;
  out.results["radii"] = {{"r_min", rg.r_min}, {"r_max", rg.r_max}, {"count", rg.count}};
  out.results["values"] = values;
  return out;
}

MemberDistance<RealFunction> function_distance(const ScenarioConfig& c) {
  if (c.space == "lebesgue") return lebesgue_distance(lebesgue_space(c));
  if (c.space == "amalgam") return amalgam_distance(amalgam_space(c));
  const auto sp = sobolev_space(c);
  return [sp](const RealFunction& f, const RealFunction& g) {
    return sobolev_norm(difference(f, g), sp);
  };
}

/// Net oracle on the configured generator; nullopt for explicit members.
std::optional<NetOracleResult> net_for(const ScenarioConfig& c) {
  if (!c.family) return std::nullopt;
  const std::string kind = c.family->kind;
  if (c.space == "sequence")
    return net_oracle([kind](int level) { return sequence_family_at(kind, level); },
                      sequence_distance(), c.net.eps, c.net.levels);
  return net_oracle([kind](int level) { return function_family_at(kind, level); },
                    function_distance(c), c.net.eps, c.net.levels);
}

json net_json(const NetOracleResult& n) {
  return {{"eps", n.eps}, {"net_sizes", n.net_sizes}, {"verdict", to_string(n.verdict)}};
}

CommandResult net_command(const ScenarioConfig& c) {
  if (!c.family) throw InputError("net needs a generator family");
  CommandResult out;
  out.results = net_json(*net_for(c));
  return out;
}

CommandResult compactness_command(const ScenarioConfig& c) {
  CommandResult out;
  Ladders ladders = c.ladders;
  const ApproxMode mode = approx_mode(c);
  std::vector<CompactnessReport> reports;
  Verdict verdict = Verdict::pass;
  json extra = json::object();

  if (c.space == "sequence") {
    reports.push_back(sequence_report(sequence_family(c), ladders));
  } else {
    const FunctionFamily F = function_family(c);
    if (c.space == "lebesgue") {
      const auto sp = lebesgue_space(c);
      if (c.omega) {
        reports = lloc_report(F, sp, *c.omega, c.j_max, ladders);
      } else {
        reports.push_back(lebesgue_report(F, sp, mode, ladders));
      }
      if (c.maximal_ratio) extra["maximal_ratio"] = empirical_maximal_ratio(F, sp);
    } else if (c.space == "amalgam") {
      reports.push_back(amalgam_report(F, amalgam_space(c), mode, ladders));
    } else {
      const auto sp = sobolev_space(c);
      SobolevReport s = sobolev_report(F, sp, mode, ladders);
      reports = s.per_order;
      verdict = s.verdict;
      if (c.transfer) {
        const LebesgueSpaceSpec dst{expr::parse_exponent(c.transfer->exponent, c.truncation),
                                    expr::parse_weight(c.transfer->weight, c.truncation),
                                    c.truncation, c.tolerances};
        const TransferReport t = embedding_transfer_report(F, sp, dst, ladders);
        extra["transfer"] = {{"sobolev_bound", t.sobolev_bound},
                             {"sobolev_tail_curve", curve_json(t.sobolev_tail_curve)},
                             {"hypothesis_holds", t.hypothesis_holds},
                             {"destination", report_json(t.dst_report)},
                             {"consistent", t.consistent},
                             {"embedding_ratio", t.embedding_ratio}};
        if (!t.consistent) out.verification_failed = true;
      }
    }
  }
  if (c.space != "sobolev") {
    std::vector<Verdict> vs;
    for (const auto& r : reports) vs.push_back(r.verdict());
    verdict = conjunction(vs);
  }

  const auto net = c.omega ? std::nullopt : net_for(c);
  if (net) {
    for (auto& r : reports) {
      r.net_sizes = net->net_sizes;
      r.oracle_verdict = net->verdict;
    }
    extra["net"] = net_json(*net);
    extra["agreement"] = (verdict == Verdict::pass) == (net->verdict == OracleVerdict::stable);
  }

  json rs = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    rs.push_back(report_json(reports[i]));
    std::string stem = slug(reports[i].label) + "_" + slug(reports[i].engine);
    if (reports.size() > 1) stem += "_" + std::to_string(i);
    export_curves(out.curves, reports[i], stem);
  }
  out.results = extra;
  out.results["reports"] = rs;
  out.results["verdict"] = to_string(verdict);
  return out;
}

CommandResult apx_command(const ScenarioConfig& c) {
  const auto sp = lebesgue_space(c);
  const auto balls = c.balls ? *c.balls : default_balls(c.truncation);
  const WeightClassEstimate e = estimate_Apx_constant(sp.w, sp.p, balls, c.tolerances);
  const LogHolderCheck lh = check_log_holder(sp.p, kFieldSamples, c.truncation);
  CommandResult out;
  out.results = {{"constant_estimate", e.constant_estimate},
                 {"worst_ball", {e.worst_ball.lo, e.worst_ball.hi}},
                 {"ball_count", e.ball_count},
                 {"in_class", e.in_class},
                 {"weight_local_integrability", sp.w.local_integrability_witness()},
                 {"p_minus", sp.p.p_minus()},
                 {"p_plus", sp.p.p_plus()},
                 {"log_holder",
                  {{"local_constant", lh.local_constant},
                   {"decay_constant", lh.decay_constant},
                   {"p_infinity_used", lh.p_infinity_used},
                   {"passes", lh.passes},
                   {"missing_p_infinity", lh.missing_p_infinity}}}};
  return out;
}

CommandResult verify_command(const ScenarioConfig& c) {
  std::vector<std::string> names;
  if (c.suite == "all") {
    names = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), c.suite) != suite_names().end()) {
    names = {c.suite};
  } else {
    throw InputError("unknown suite " + c.suite);
  }
  CommandResult out;
  json suites = json::array();
  int cases = 0, violations = 0;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, c.seed, c.scenarios);
    cases += r.cases;
    violations += r.violations;
    suites.push_back({{"name", r.name},
                      {"metric", r.metric},
                      {"tolerance", r.tolerance},
                      {"cases", r.cases},
                      {"violations", r.violations},
                      {"worst", r.worst},
                      {"failures", r.failures},
                      {"passed", r.passed()}});
  }
  out.results = {{"suites", suites},
                 {"cases", cases},
                 {"violations", violations},
                 {"passed", violations == 0}};
  out.verification_failed = violations > 0;
  return out;
}

void sanitize(json& j, const std::string& pointer, std::vector<std::string>& flagged) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    flagged.push_back(pointer);
    j = nullptr;
  } else if (j.is_object()) {
    for (auto& [k, v] : j.items()) sanitize(v, pointer + "/" + k, flagged);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) sanitize(j[i], pointer + "/" + std::to_string(i), flagged);
  }
}

struct Flags {
  std::string config, out, csv, suite, space, exponent, weight, family, q;
  std::vector<std::string> functions;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<int> scenarios, level;
  bool timing = false;
};

json merged_config(const Flags& f) {
  json j = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config, std::ios::binary);
    if (!in) throw InputError("cannot read config file " + f.config);
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InputError("config file " + f.config + ": " + e.what());
    }
    if (!j.is_object()) throw InputError("config file must hold a JSON object");
  }
  if (!f.space.empty()) j["space"] = f.space;
  if (!f.exponent.empty()) j["exponent"] = f.exponent;
  if (!f.weight.empty()) j["weight"] = f.weight;
  if (!f.functions.empty()) j["functions"] = f.functions;
  if (!f.family.empty()) {
    json fam = j.contains("family") && j["family"].is_object() ? j["family"] : json::object();
    fam["kind"] = f.family;
    j["family"] = fam;
  }
  if (f.level) {
    if (!j.contains("family") || !j["family"].is_object()) throw InputError("--level needs a family");
    j["family"]["level"] = *f.level;
  }
  if (!f.q.empty()) {
    if (f.q == "inf") {
      j["q"] = "inf";
    } else {
      try {
        std::size_t used = 0;
        j["q"] = std::stod(f.q, &used);
        if (used != f.q.size()) throw std::invalid_argument(f.q);
      } catch (const std::exception&) {
        throw InputError("--q must be a number or inf");
      }
    }
  }
  if (f.seed) j["seed"] = *f.seed;
  if (f.threshold) {
    if (!j.contains("ladders") || !j["ladders"].is_object()) j["ladders"] = json::object();
    j["ladders"]["threshold"] = *f.threshold;
  }
  if (!f.suite.empty()) j["suite"] = f.suite;
  if (f.scenarios) j["scenarios"] = *f.scenarios;
  return j;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"norm", "modular", "maximal", "compactness",
                                              "net",  "verify",  "apx"};
  return names;
}

CommandResult execute(const std::string& command, const ScenarioConfig& c) {
  if (command == "norm") return norm_or_modular(c, true);
  if (command == "modular") return norm_or_modular(c, false);
  if (command == "maximal") return maximal_command(c);
  if (command == "compactness") return compactness_command(c);
  if (command == "net") return net_command(c);
  if (command == "verify") return verify_command(c);
  if (command == "apx") return apx_command(c);
  throw InputError("unknown command " + command);
}

json report_document(const std::string& command, const ScenarioConfig& c, const CommandResult& r) {
  json doc;
  doc["command"] = command;
  doc["config"] = config_to_json(c);
  doc["results"] = r.results;
  doc["status"] = r.verification_failed ? "verification_failed" : "ok";
  doc["versions"] = {{"varnorm", kVersion}, {"report_schema", kReportSchemaVersion}};
  std::vector<std::string> flagged;
  sanitize(doc, "", flagged);
  doc["non_finite"] = flagged;
  return doc;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_csv(const CurveExport& curve) {
  std::string s = "parameter,sup_value\n";
  for (std::size_t i = 0; i < curve.parameters.size(); ++i) {
    const double v = curve.values.at(i);
    s += expr::format_number(curve.parameters[i]) + "," + (std::isfinite(v) ? expr::format_number(v) : "inf") +
         "\n";
  }
  return s;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(std::random_device{}());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move report into place at " + path);
  }
}

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Variable exponent Lebesgue, amalgam and Sobolev norm toolkit", "varnorm");
  app.require_subcommand(1);
  Flags f;
  const std::map<std::string, std::string> blurbs{
      {"norm", "Luxemburg (or amalgam, Sobolev, sequence) norms of the configured functions"},
      {"modular", "modular values of the configured functions"},
      {"maximal", "maximal function on the configured points"},
      {"compactness", "compactness criteria report, with the net oracle for generator families"},
      {"net", "greedy epsilon-net sizes across refinement levels"},
      {"verify", "seeded randomized property suites"},
      {"apx", "A_p(.) constant estimate and log-Hoelder check"}};
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--config", f.config, "scenario config JSON");
    sub->add_option("--out", f.out, "report path (stdout when absent)");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--csv", f.csv, "directory for CSV curves");
    sub->add_option("--threshold", f.threshold, "criterion pass threshold");
    sub->add_flag("--timing", f.timing, "add wall time to the report");
    sub->add_option("--space", f.space, "lebesgue | amalgam | sequence | sobolev");
    sub->add_option("--exponent", f.exponent, "exponent expression");
    sub->add_option("--weight", f.weight, "weight expression");
    sub->add_option("--function", f.functions, "function expression (repeatable)");
    sub->add_option("--family", f.family, "generator family kind");
    sub->add_option("--level", f.level, "generator family level");
    sub->add_option("--q", f.q, "amalgam outer exponent (number or inf)");
    if (name == "verify") {
      sub->add_option("--suite", f.suite, "suite name or all");
      sub->add_option("--scenarios", f.scenarios, "cases per suite");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const auto start = std::chrono::steady_clock::now();
    const ScenarioConfig c = config_from_json(merged_config(f));
    const CommandResult r = execute(command, c);
    json doc = report_document(command, c, r);
    if (f.timing)
      doc["wall_time_seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = render(doc);
    if (f.out.empty()) {
      out << text;
    } else {
      write_atomic(f.out, text);
    }
    if (!f.csv.empty()) {
      std::filesystem::create_directories(f.csv);
      for (const auto& curve : r.curves)
        write_atomic((std::filesystem::path(f.csv) / (curve.name + ".csv")).string(), render_csv(curve));
    }
    if (r.verification_failed) {
      err << "varnorm " << command << ": verification failed\n";
      return kVerificationFailure;
    }
    return kSuccess;
  } catch (const Error& e) {
    err << "varnorm " << command << ": " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "varnorm " << command << ": " << e.what() << "\n";
  } catch (const std::filesystem::filesystem_error& e) {
    err << "varnorm " << command << ": " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace varnorm::cli
