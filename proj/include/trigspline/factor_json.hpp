#pragma once

#include <string>

#include <json.hpp>

#include "trigspline/factors.hpp"
#include "trigspline/spline.hpp"

namespace trigspline {

// Canonical JSON form of a factor spec; parse(print(spec)) == spec.
nlohmann::json factor_to_json(const FactorSpec& spec);
FactorSpec factor_from_json(const nlohmann::json& j);

// CLI document: spline configuration plus output controls.
struct RunConfig {
  SplineConfig spline;
  int samples = 721;
  std::string format = "csv";  // csv | json
};

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

// Parses a whole config file; throws ConfigError with a position-bearing
// message on malformed input.
RunConfig parse_run_config(const std::string& text);

}  // namespace trigspline
