// nhqc: command-line front end for gate evaluation, sweeps, dynamics and presets.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure
// (including a preset whose checks fail).

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "nhqc/dfs.hpp"
#include "nhqc/errors.hpp"
#include "nhqc/harness/config.hpp"
#include "nhqc/harness/csv.hpp"
#include "nhqc/harness/presets.hpp"
#include "nhqc/harness/sweep.hpp"
#include "nhqc/lindblad.hpp"
#include "nhqc/propagator.hpp"

namespace {

using namespace nhqc;
using namespace nhqc::harness;

// Every config key becomes a --flag with '_' spelled '-'.
class Flags {
 public:
  void attach(CLI::App* app, const std::vector<std::string>& keys) {
    for (const auto& key : keys) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      auto* opt = app->add_option(flag, values_[key], help(key));
      options_.emplace_back(key, opt);
    }
    app->add_option("--config", config_path_, "key=value config file; flags override its values");
  }

  SweepConfig resolve() const {
    KeyValues kv;
    if (!config_path_.empty()) kv = load_config_file(config_path_);
    for (const auto& [key, opt] : options_)
      if (opt->count() > 0) kv[key] = values_.at(key);
    return make_config(kv);
  }

 private:
  static std::string help(const std::string& key) {
    static const std::map<std::string, std::string> text = {
        {"scheme", "scheme name(s), comma separated, or 'all'"},
        {"gate", "gate preset: x2, s or custom"},
        {"theta", "rotation axis polar angle (accepts e.g. 0.5pi)"},
        {"phi", "rotation axis azimuth"},
        {"gamma_g", "geometric phase"},
        {"phi0", "base drive phase"},
        {"epsilon", "X error (drive amplitude scale 1+epsilon)"},
        {"delta", "Z error (detuning in units of the drive amplitude)"},
        {"gamma_rate", "decoherence rate Gamma"},
        {"step", "RK4 step"},
        {"samples", "number of time samples"},
        {"workers", "worker threads (0 = all cores)"},
        {"out", "output path ('-' or empty for stdout)"},
        {"dfs", "use the DFS encoding in epsilon-delta maps"},
        {"level", "DFS level: single or two"},
        {"chi", "two-qubit coupling angle"},
        {"eta", "two-qubit relative phase"},
        {"eta4", "base phase of the second two-qubit coupling"},
        {"model", "decoherence model: lambda, decay_dephasing or decay"},
    };
    const auto it = text.find(key);
    return it == text.end() ? "grid setting" : it->second;
  }

  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
  std::string config_path_;
};

Matrix initial_state(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "0") return Matrix::column({1.0, 0.0});
  if (name == "1") return Matrix::column({0.0, 1.0});
  if (name == "+") return Matrix::column({r, r});
  if (name == "-") return Matrix::column({r, -r});
  if (name == "+i") return Matrix::column({Complex(r), Complex(0, r)});
  if (name == "-i") return Matrix::column({Complex(r), Complex(0, -r)});
  throw ConfigError("unknown initial state '" + name + "' (expected 0, 1, +, -, +i or -i)");
}

int cmd_gate(const SweepConfig& c) {
  Table t;
  t.columns = {"scheme", "epsilon", "delta", "gamma_rate", "fidelity_exact", "fidelity_series",
               "fidelity_propagated", "fidelity_average"};
  const auto d = DecoherenceParams::uniform(c.gamma_rate, c.model);
  for (auto s : c.schemes) {
    t.add_row({std::string(scheme_name(s)), c.noise.epsilon, c.noise.delta, c.gamma_rate,
               scheme_fidelity(s, c.params.gamma_g, c.noise.epsilon, FidelityMode::exact),
               scheme_fidelity(s, c.params.gamma_g, c.noise.epsilon, FidelityMode::series),
               propagated_gate_fidelity(s, c.params, c.noise, c.phi0),
               avg_gate_fidelity(s, c.params, c.noise, d, c.step)});
  }
  write_csv_file(t, c.out);
  return 0;
}

int cmd_dynamics(const SweepConfig& c, const std::string& initial) {
  const SchemeId s = c.schemes.front();
  const Matrix psi = initial_state(initial);
  const Matrix psi0 = embed_qubit_state(psi);
  const Matrix target = embed_qubit_state(target_gate(c.params) * psi);
  const auto segs = build_sequence(s, c.params, c.phi0);
  const auto samples = population_trace(psi0, make_schedule(segs, c.params, c.noise),
                                        DecoherenceParams::uniform(c.gamma_rate, c.model), c.samples, target, c.step);
  Table t;
  t.columns = {"t", "P_0", "P_1", "P_e", "trace", "fidelity"};
  for (const auto& p : samples)
    t.add_row({p.t, p.populations[0], p.populations[1], p.populations[2], p.trace, p.fidelity});
  write_csv_file(t, c.out);
  return 0;
}

int cmd_dfs(const SweepConfig& c) {
  const OperatorSet model = c.model_set ? c.model : OperatorSet::qubit_decay_dephasing;
  const auto d = DecoherenceParams::uniform(c.gamma_rate, model);
  const DfsGateSpec gate = c.level == DfsLevel::single ? DfsGateSpec{c.params} : DfsGateSpec{c.two};
  Table t;
  t.columns = {"level", "scheme", "dimension", "fidelity", "leakage"};
  for (auto s : c.schemes) {
    const auto r = simulate_dfs(c.level, s, gate, c.noise, d, c.step);
    t.add_row({std::string(dfs_level_name(r.level)), std::string(scheme_name(s)),
               static_cast<double>(r.dimension), r.fidelity, r.leakage});
  }
  write_csv_file(t, c.out);
  std::cerr << "model: " << (d.is_zero() ? "closed system (Gamma = 0)" : describe_operator_set(model)) << "\n";
  return 0;
}

int cmd_traj(const SweepConfig& c) {
  const auto segs = build_sequence(c.schemes.front(), c.params, c.phi0);
  Table t;
  t.columns = {"t", "x", "y", "z"};
  for (const auto& p : bloch_trajectory(segs, c.params, c.noise, c.samples)) t.add_row({p.t, p.x, p.y, p.z});
  write_csv_file(t, c.out);
  return 0;
}

int cmd_preset(const std::string& name, const std::string& out_dir, unsigned workers, double step,
               const std::string& model) {
  if (name.empty()) {
    std::string list;
    for (const auto& n : preset_names()) list += " " + n;
    throw ConfigError("preset name required; available presets:" + list);
  }
  PresetOptions opt;
  opt.out_dir = out_dir;
  opt.workers = workers;
  opt.step = step;
  if (!model.empty()) opt.dfs_model = parse_operator_set(model);
  const auto report = run_preset(name, opt);
  std::cout << report.summary();
  return report.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gate robustness simulator"};
  app.require_subcommand(1);

  const auto& keys = config_keys();
  Flags gate_flags, sweep_flags, map_flags, dyn_flags, dfs_flags, traj_flags;
  auto* gate = app.add_subcommand("gate", "evaluate one gate for each selected scheme");
  gate_flags.attach(gate, keys);
  auto* sweep = app.add_subcommand("sweep", "closed-system epsilon sweep");
  sweep_flags.attach(sweep, keys);
  auto* map = app.add_subcommand("map", "2D fidelity map over epsilon and Gamma or delta");
  map_flags.attach(map, keys);
  auto* dyn = app.add_subcommand("dynamics", "population trace under the master equation");
  dyn_flags.attach(dyn, keys);
  std::string initial = "0";
  dyn->add_option("--initial", initial, "initial qubit state: 0, 1, +, -, +i, -i");
  auto* dfs = app.add_subcommand("dfs", "DFS-encoded gate in the physical qubit space");
  dfs_flags.attach(dfs, keys);
  auto* traj = app.add_subcommand("traj", "Bloch trajectory in the bright/excited subspace");
  traj_flags.attach(traj, keys);

  auto* preset = app.add_subcommand("preset", "run a named experiment preset");
  std::string preset_name, preset_out = "results", preset_model;
  unsigned preset_workers = 0;
  double preset_step = kDefaultStep;
  preset->add_option("name", preset_name, "preset id");
  preset->add_option("--out", preset_out, "output directory");
  preset->add_option("--workers", preset_workers, "worker threads (0 = all cores)");
  preset->add_option("--step", preset_step, "RK4 step");
  preset->add_option("--model", preset_model, "DFS decoherence model: decay_dephasing or decay");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gate->parsed()) return cmd_gate(gate_flags.resolve());
    if (sweep->parsed()) {
      const auto c = sweep_flags.resolve();
      write_csv_file(run_epsilon_sweep(c), c.out);
      return 0;
    }
    if (map->parsed()) {
      const auto c = map_flags.resolve();
      write_csv_file(run_2d_map(c), c.out);
      return 0;
    }
    if (dyn->parsed()) return cmd_dynamics(dyn_flags.resolve(), initial);
    if (dfs->parsed()) return cmd_dfs(dfs_flags.resolve());
    if (traj->parsed()) return cmd_traj(traj_flags.resolve());
    if (preset->parsed()) return cmd_preset(preset_name, preset_out, preset_workers, preset_step, preset_model);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
