#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "varnorm/amalgam.hpp"
#include "varnorm/compactness.hpp"
#include "varnorm/lebesgue.hpp"
#include "varnorm/numerics.hpp"
#include "varnorm/operators.hpp"
#include "varnorm/sequence.hpp"
#include "varnorm/sobolev.hpp"

namespace varnorm::cli {

using json = nlohmann::json;

/// Bad configuration or command-line input; maps to exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

/// Parametric family sampled at a refinement level.
struct FamilyConfig {
  std::string kind;
  int level = 3;
};

struct SequenceConfig {
  std::vector<std::vector<double>> members;
  double p = 2.0;
  double w = 1.0;
};

struct NetConfig {
  double eps = 0.25;
  int levels = 5;
};

struct RadiusConfig {
  double r_min = 1e-3;
  double r_max = 128.0;
  int count = 96;
};

/// Destination space of the Sobolev embedding transfer check.
struct TransferConfig {
  std::string exponent;
  std::string weight;
};

struct ScenarioConfig {
  /// lebesgue | amalgam | sequence | sobolev
  std::string space = "lebesgue";
  std::string exponent = "const(2)";
  std::string weight = "const(1)";
  std::vector<std::string> functions;
  std::optional<FamilyConfig> family;
  SequenceConfig sequence;
  /// Amalgam outer exponent; kInfinity allowed (written as "inf").
  double q = 1.0;
  /// Sobolev order.
  int order = 1;
  /// mollifier | average | translation
  std::string mode = "mollifier";
  /// Open set for the local (L_loc) criterion; lebesgue space only.
  std::optional<Interval> omega;
  int j_max = 4;
  Ladders ladders;
  QuadratureSettings tolerances;
  Interval truncation = default_truncation();
  std::uint64_t seed = 0;
  NetConfig net;
  std::vector<double> points;
  RadiusConfig radii;
  /// Balls for the A_p(.) estimate; the default family when absent.
  std::optional<std::vector<Interval>> balls;
  std::optional<TransferConfig> transfer;
  bool maximal_ratio = false;
  std::string suite = "all";
  int scenarios = 16;

  ScenarioConfig();
};

/// Reads a config object; missing keys take their defaults, unknown keys and
/// invalid values throw InputError. Expressions are stored canonicalized.
ScenarioConfig config_from_json(const json& j);
ScenarioConfig load_config(const std::string& path);

/// Every key, defaults included.
json config_to_json(const ScenarioConfig& c);

/// Throws InputError on anything config_from_json would reject.
void validate(const ScenarioConfig& c);

const std::vector<std::string>& function_family_kinds();
const std::vector<std::string>& sequence_family_kinds();

// Builders from a validated config.
LebesgueSpaceSpec lebesgue_space(const ScenarioConfig& c);
AmalgamSpaceSpec amalgam_space(const ScenarioConfig& c);
SobolevSpaceSpec sobolev_space(const ScenarioConfig& c);
ApproxMode approx_mode(const ScenarioConfig& c);
RadiusGrid radius_grid(const ScenarioConfig& c);

/// Explicit functions, or the configured generator family at its level.
FunctionFamily function_family(const ScenarioConfig& c);
FunctionFamily function_family_at(const std::string& kind, int level);
SequenceFamily sequence_family(const ScenarioConfig& c);
SequenceFamily sequence_family_at(const std::string& kind, int level);

}  // namespace varnorm::cli
