#pragma once

#include <string>

#include "json.hpp"

#include "octa/force_field.hpp"

namespace octa {

struct RunConfig {
  PotentialParams params = kReferenceParams;
  double lambda_max = 3.0;
  double epsilon = 0.05;
  int n_samples = 120;
  std::string output_dir = ".";
};

// key=value lines with '#' comments; keys sigma1, sigma2, sigma3, lambda_max, epsilon, n_samples,
// output_dir. Unset keys keep their defaults. Throws ConfigError carrying the offending line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Compact JSON with sorted keys and doubles printed with 17 significant digits.
std::string dump_json(const nlohmann::json& j);

}  // namespace octa
