#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sl2c/cli.hpp"
#include "sl2c/errors.hpp"

namespace sl2c::cli::detail {

using json = nlohmann::json;

json to_json(cplx z);
json to_json(const ContourSpec& c);
json to_json(const MbDiagnostics& d);
json to_json(const QuadratureResult& q);
json config_to_json(const RunConfig& config);
RunConfig config_from_json(const json& j);

void validate_config(const RunConfig& config);
int exit_code_for(const Error& e);

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double threshold = 0.0;
  long samples = 0;
  double seconds = 0.0;
  std::string note;
};

// Runs one named suite (not "all"); throws Error on invalid configuration.
std::vector<PropertyResult> run_suite(const std::string& suite, const RunConfig& config);

}  // namespace sl2c::cli::detail
