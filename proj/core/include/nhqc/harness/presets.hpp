#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nhqc/lindblad.hpp"

namespace nhqc::harness {

struct PresetOptions {
  std::string out_dir = ".";
  unsigned workers = 0;
  double step = kDefaultStep;
  OperatorSet dfs_model = OperatorSet::qubit_decay_dephasing;
};

struct PresetCheck {
  std::string label;
  double value = 0.0;
  std::string target;
  bool pass = false;
};

struct PresetReport {
  std::string name;
  std::vector<std::string> files;
  std::vector<PresetCheck> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool passed() const;
  std::string summary() const;
};

const std::vector<std::string>& preset_names();

/// Runs a named experiment, writes `<name>*.csv` and `<name>_summary.txt` into
/// opt.out_dir and returns the checks. Unknown names raise ConfigError.
PresetReport run_preset(std::string_view name, const PresetOptions& opt = {});

}  // namespace nhqc::harness
