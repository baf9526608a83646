// config.hpp - experiment configuration: strict INI-style key = value text.
//
//   # comment
//   omega = 0.12          # keys before any [section] belong to [model]
//   [packet]
//   k0 = 1.0
//
// Sections: model, packet, sos, rotation, evolve, floquet, concurrence,
// ensemble, output. Unknown sections or keys are rejected.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shearless/entanglement.hpp"
#include "shearless/model.hpp"

namespace shearless::config {

struct SosConfig {
  int seeds_x = 20;
  int seeds_p = 20;
  int periods = 500;
};

struct RotationConfig {
  double x0 = 25.0;
  double p_min = 0.0;
  double p_max = kPi;
  int resolution = 400;
  int iterations = 200;
};

struct EvolveConfig {
  int periods = 20;
  int samples_per_period = 1;
};

struct FloquetConfig {
  double sigma = 0.1;
  double prominence = 0.1;
  int grid = 4096;
  double threshold = 1e-3;
};

struct ConcurrenceConfig {
  std::vector<entanglement::SitePair> pairs{{25, 26}, {50, 51}, {75, 76}, {100, 1}};
  int periods = 20;
  int samples_per_period = 20;
};

struct EnsembleConfig {
  int samples = 1000;
  int periods = 20;
  std::uint64_t rng_seed = 12345;
};

struct ExperimentConfig {
  SimParams params;
  PacketSpec packet;
  SosConfig sos;
  RotationConfig rotation;
  EvolveConfig evolve;
  FloquetConfig floquet;
  ConcurrenceConfig concurrence;
  EnsembleConfig ensemble;
  std::string out_dir = "out";
};

/// Strict parse with defaults for every missing key. Throws Error with code
/// SyntaxError, UnknownKey or InvalidValue; messages name the key and line.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a file; an empty path yields the defaults.
ExperimentConfig load_config(const std::string& path);

/// Cross-field checks (packet inside the ring, pairs valid for N, ...).
/// Throws Error{InvalidValue}.
void check_consistency(const ExperimentConfig& cfg);

/// Every resolved setting as ("section.key", value) in schema order. The
/// text round-trips through parse_config.
std::vector<std::pair<std::string, std::string>> resolved_entries(const ExperimentConfig& cfg);

/// Overrides one setting by its "section.key" name with the same checks as
/// the file parser. Throws UnknownKey or InvalidValue.
void set_entry(ExperimentConfig& cfg, std::string_view dotted_key, std::string_view value);

/// Renders resolved_entries back into config-file syntax.
std::string to_text(const ExperimentConfig& cfg);

/// Round-trip decimal form, 17 significant digits.
std::string format_number(double value);

}  // namespace shearless::config
