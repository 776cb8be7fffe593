#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orlicz {

/// Experiment configuration: one section per concern, strict keys (unknown
/// sections or keys are parse errors), round-trip serializable.
struct ExperimentConfig {
  // [experiment]
  std::string task = "verify";
  std::uint64_t seed = 1;
  int trials = 100;
  std::string out = "out";

  // [dims]
  int n = 8;
  int d = 1;

  // [young]
  std::string phi = "power(p=1.5)";
  std::string psi = "power(p=3)";
  std::string phi_random = "power(p=4)";

  // [io]
  std::string input;
  std::string erased;

  // [verify]
  std::string verify_id = "HOLDER_1C";

  // [estimate]
  int budget = 8;
  double expected_size = 8.0;

  // [up]
  std::string up_theorem = "classical";
  std::string up_signal = "comb";
  std::string up_branch = "above";
  double up_alpha = 1.0;

  // [phase]
  std::vector<int> e_sizes = {1, 2, 3};
  std::vector<int> s_sizes = {2, 4};
  double c_restriction = 1.0;
  double d_random = 1.0;

  // [tolerances]
  double support_tol = 1e-10;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws std::invalid_argument with line and key context on malformed input.
ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace orlicz
