#pragma once

// Run configuration for sweeps and single-point runs.
//
// File format: one `key = value` pair per line, `#` starts a comment. Angles
// accept a `pi` suffix ("pi", "-pi", "0.5pi", "pi/2"). Command-line flags are
// applied on top of the file through the same key names.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhqc/dfs.hpp"
#include "nhqc/lindblad.hpp"
#include "nhqc/propagator.hpp"
#include "nhqc/pulses.hpp"

namespace nhqc::harness {

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::string_view text);
KeyValues load_config_file(const std::string& path);

double parse_angle(std::string_view text);
double parse_number(std::string_view key, std::string_view text);

struct Grid {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  std::vector<double> values() const;
  void validate(std::string_view name) const;
};

enum class GatePreset { x_half, s_gate, custom };

GatePreset parse_gate_preset(std::string_view name);
std::string_view gate_preset_name(GatePreset g);

struct SweepConfig {
  std::vector<SchemeId> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  GatePreset gate = GatePreset::x_half;
  GateParams params = GateParams::x_half();
  double phi0 = 0.0;

  // Single-point values.
  NoiseParams noise;
  double gamma_rate = 0.0;

  // Grids. The secondary axis of a 2D map is either `delta` or `rate`.
  Grid epsilon{-0.1, 0.1, 21};
  std::optional<Grid> delta;
  std::optional<Grid> rate;

  double step = kDefaultStep;
  std::size_t samples = 201;
  unsigned workers = 0;  // 0 = hardware concurrency
  std::string out;

  bool dfs = false;
  DfsLevel level = DfsLevel::single;
  TwoQubitParams two;
  OperatorSet model = OperatorSet::lambda_three_level;
  bool model_set = false;

  void validate() const;
};

/// Builds a config from key/value pairs; unknown keys raise ConfigError.
SweepConfig make_config(const KeyValues& kv);
// Keys accepted by make_config, for usage messages.
const std::vector<std::string>& config_keys();

}  // namespace nhqc::harness
