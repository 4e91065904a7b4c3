#include "nhqc/harness/presets.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nhqc/dfs.hpp"
#include "nhqc/errors.hpp"
#include "nhqc/harness/config.hpp"
#include "nhqc/harness/csv.hpp"
#include "nhqc/harness/sweep.hpp"

namespace nhqc::harness {

namespace {

constexpr double kGammaPaper = 2e-4;

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

PresetCheck within(std::string label, double value, double target, double tol) {
  return {std::move(label), value, fmt(target) + " +/- " + fmt(tol),
          std::abs(value - target) <= tol};
}

PresetCheck in_range(std::string label, double value, double lo, double hi) {
  return {std::move(label), value, "[" + fmt(lo) + ", " + fmt(hi) + "]", value >= lo && value <= hi};
}

PresetCheck below(std::string label, double value, double limit) {
  return {std::move(label), value, "< " + fmt(limit), value < limit};
}

class Context {
 public:
  Context(std::string name, const PresetOptions& opt) : opt_(opt) {
    report_.name = std::move(name);
    std::filesystem::create_directories(opt_.out_dir);
  }

  const PresetOptions& opt() const { return opt_; }
  PresetReport& report() { return report_; }

  void write(const Table& t, const std::string& suffix = "") {
    const auto path = (std::filesystem::path(opt_.out_dir) / (report_.name + suffix + ".csv")).string();
    write_csv_file(t, path);
    report_.files.push_back(path);
  }

  void check(PresetCheck c) { report_.checks.push_back(std::move(c)); }
  void note(std::string s) { report_.notes.push_back(std::move(s)); }

 private:
  PresetOptions opt_;
  PresetReport report_;
};

SweepConfig base_config(GatePreset gate, unsigned workers) {
  KeyValues kv{{"gate", std::string(gate_preset_name(gate))}};
  auto cfg = make_config(kv);
  cfg.workers = workers;
  return cfg;
}

double row_value(const Table& t, std::string_view scheme, double eps, std::string_view column) {
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    if (t.text(r, "scheme") == scheme && std::abs(t.number(r, "epsilon") - eps) < 1e-12) return t.number(r, column);
  throw ValidationError("preset: missing row for " + std::string(scheme));
}

void epsilon_preset(Context& ctx, GatePreset gate) {
  const auto cfg = base_config(gate, ctx.opt().workers);
  const Table t = run_epsilon_sweep(cfg);
  ctx.write(t);

  double worst_at_zero = 0.0;
  for (auto s : kAllSchemes)
    worst_at_zero = std::max(worst_at_zero, std::abs(1.0 - row_value(t, scheme_name(s), 0.0, "fidelity_exact")));
  ctx.check(below("all schemes at epsilon=0: |1 - F|", worst_at_zero, 1e-12));

  double agreement = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    agreement = std::max(agreement, std::abs(t.number(r, "fidelity_exact") - t.number(r, "fidelity_numeric")));
  ctx.check(below("closed form vs propagation", agreement, kSweepAgreementTol));

  const double op = row_value(t, "OPNHQC", 0.1, "fidelity_exact");
  const double dc = row_value(t, "DCNHQC", 0.1, "fidelity_exact");
  const double tl = row_value(t, "TLNHQC", 0.1, "fidelity_exact");
  const double nh = row_value(t, "NHQC", 0.1, "fidelity_exact");
  const bool ordered = op >= dc && dc >= tl && tl >= nh;
  ctx.check({"ordering OPNHQC >= DCNHQC >= TLNHQC >= NHQC at epsilon=0.1", ordered ? 1.0 : 0.0, "1", ordered});
  ctx.check(within("NHQC fidelity at epsilon=0.1", nh, 0.987840, 5e-7));
}

Table trace_table(const std::vector<TraceSample>& samples, std::span<const std::size_t> indices,
                  const std::vector<std::string>& labels) {
  Table t;
  t.columns = {"t"};
  for (const auto& l : labels) t.columns.push_back("P_" + l);
  t.columns.push_back("leakage");
  t.columns.push_back("fidelity");
  for (const auto& s : samples) {
    std::vector<Cell> row{s.t};
    double inside = 0.0;
    for (std::size_t i : indices) {
      row.emplace_back(s.populations[i]);
      inside += s.populations[i];
    }
    row.emplace_back(std::max(0.0, s.trace - inside));
    row.emplace_back(s.fidelity);
    t.add_row(std::move(row));
  }
  return t;
}

void dynamics_preset(Context& ctx, bool s_gate) {
  const GateParams g = s_gate ? GateParams::s_gate() : GateParams::x_half();
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix psi = s_gate ? Matrix::column({r, r}) : Matrix::column({1.0, 0.0});
  const Matrix psi0 = embed_qubit_state(psi);
  const Matrix target = embed_qubit_state(target_gate(g) * psi);
  const auto d = DecoherenceParams::uniform(kGammaPaper);
  const auto segs = build_sequence(SchemeId::opnhqc, g);
  const auto samples = population_trace(psi0, make_schedule(segs, g, {}), d, 201, target, ctx.opt().step);
  const std::array<std::size_t, 2> qubit = {0, 1};
  Table t = trace_table(samples, qubit, {"0", "1"});
  ctx.write(t);

  const double avg = avg_gate_fidelity(SchemeId::opnhqc, g, {}, d, ctx.opt().step);
  const char* gate = s_gate ? "S" : "X/2";
  ctx.check(within(std::string("final state fidelity, ") + gate + ", Gamma=2e-4", samples.back().fidelity,
                   s_gate ? 0.9989 : 0.9990, 3e-4));
  ctx.check(within(std::string("six-state average fidelity, ") + gate + ", Gamma=2e-4", avg,
                   s_gate ? 0.9990 : 0.9989, 3e-4));
  ctx.note(std::string("initial state: ") + (s_gate ? "(|0> + |1>)/sqrt(2)" : "|0>"));
  ctx.note("decoherence: " + describe_operator_set(d.operator_set));
}

void fig5(Context& ctx) {
  auto cfg = base_config(GatePreset::x_half, ctx.opt().workers);
  cfg.epsilon = Grid{-0.1, 0.1, 11};
  cfg.rate = Grid{0.0, 5e-4, 11};
  cfg.step = ctx.opt().step;
  ctx.write(run_2d_map(cfg));

  Table th;
  th.columns = {"scheme", "gamma_rate", "min_fidelity"};
  const auto eps = Grid{-0.1, 0.1, 11}.values();
  const struct {
    SchemeId scheme;
    double lo, claim;
  } cases[] = {{SchemeId::opnhqc, 1.0e-4, 1.4e-4}, {SchemeId::dcnhqc, 0.4e-4, 0.8e-4}};
  for (const auto& c : cases) {
    const auto rates = Grid{c.lo, c.lo + 7 * 0.1e-4, 8}.values();
    const auto res = locate_threshold(c.scheme, GateParams::x_half(), eps, rates, 0.999, ctx.opt().step,
                                      ctx.opt().workers);
    for (std::size_t k = 0; k < rates.size(); ++k)
      th.add_row({std::string(scheme_name(c.scheme)), rates[k], res.min_fidelity[k]});
    auto chk = within(std::string(scheme_name(c.scheme)) + " threshold rate for min fidelity >= 0.999",
                      res.found ? res.threshold : 0.0, c.claim, 0.2e-4 + 1e-12);
    chk.pass = chk.pass && res.found;
    ctx.check(chk);
  }
  ctx.write(th, "_threshold");
}

double dfs_delta_spread(SchemeId scheme, const GateParams& g, double eps, std::span<const double> deltas) {
  const Matrix ref = dfs_single_gate(scheme, g, NoiseParams{eps, 0.0});
  double worst = 0.0;
  for (double d : deltas)
    worst = std::max(worst, 1.0 - trace_fidelity(ref, dfs_single_gate(scheme, g, NoiseParams{eps, d})));
  return worst;
}

void fig6(Context& ctx) {
  auto cfg = base_config(GatePreset::x_half, ctx.opt().workers);
  cfg.schemes = {SchemeId::opnhqc};
  cfg.delta = Grid{-0.1, 0.1, 21};
  const Table plain = run_2d_map(cfg);
  ctx.write(plain, "a");
  cfg.dfs = true;
  const Table dfs = run_2d_map(cfg);
  ctx.write(dfs, "b");

  const auto deltas = cfg.delta->values();
  double spread = 0.0;
  for (double e : cfg.epsilon.values())
    spread = std::max(spread, dfs_delta_spread(SchemeId::opnhqc, cfg.params, e, deltas));
  ctx.check(below("DFS propagator deviation across delta (1 - trace fidelity)", spread, 1e-12));

  double plain_spread = 0.0;
  for (std::size_t r = 0; r < plain.rows.size(); ++r)
    plain_spread = std::max(plain_spread, 1.0 - plain.number(r, "fidelity"));
  ctx.note("largest infidelity without DFS: " + fmt(plain_spread));
}

void fig7(Context& ctx) {
  const auto d = DecoherenceParams::uniform(kGammaPaper, ctx.opt().dfs_model);
  const auto single = simulate_dfs(DfsLevel::single, SchemeId::opnhqc, GateParams::x_half(), {}, d, ctx.opt().step);

  const TwoQubitParams p{};
  std::array<std::size_t, 4> qubit_states{};
  for (std::size_t i = 0; i < 4; ++i) qubit_states[i] = DfsTwoBasis::indices[DfsTwoBasis::logical[i]];
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix init = Matrix::column({r, 0.0, r, 0.0});
  const Matrix psi0 = embed_logical(qubit_states, init, DfsTwoBasis::dim);
  const Matrix target = embed_logical(qubit_states, two_qubit_gate(p).u4 * init, DfsTwoBasis::dim);
  const auto samples =
      population_trace(psi0, dfs_two_schedule(SchemeId::opnhqc, p, {}), d, 201, target, ctx.opt().step);
  ctx.write(trace_table(samples, DfsTwoBasis::indices, {"00", "01", "E1", "10", "11", "E2"}));

  ctx.check(in_range("single logical qubit X/2 fidelity, Gamma=2e-4", single.fidelity, 0.9954, 0.9990));
  ctx.check(in_range("two logical qubit state fidelity, Gamma=2e-4", samples.back().fidelity, 0.9944, 0.9990));
  ctx.note("single logical qubit leakage: " + fmt(single.leakage));
  ctx.note("physical dimensions: " + std::to_string(DfsSingleBasis::dim) + " and " +
           std::to_string(DfsTwoBasis::dim));
  ctx.note("Lindblad model: " + describe_operator_set(d.operator_set));
}

void cnot_check(Context& ctx) {
  const auto closed = cnot_equivalence();
  const TwoQubitParams p{};
  const auto propagated = cnot_equivalence(logical_block(two_qubit_evolution(p, SchemeId::opnhqc, {})));
  Table t;
  t.columns = {"route", "deviation"};
  t.add_row({std::string("closed_form"), closed.deviation});
  t.add_row({std::string("propagated_opnhqc"), propagated.deviation});
  ctx.write(t);
  ctx.check(below("closed-form gate times (I x X/2) vs CNOT, 1 - F", closed.deviation, kCnotTol));
  ctx.check(below("propagated OPNHQC gate times (I x X/2) vs CNOT, 1 - F", propagated.deviation, kCnotTol));
}

void order_scaling(Context& ctx) {
  Table t;
  t.columns = {"scheme", "epsilon", "infidelity"};
  for (auto s : kAllSchemes) {
    const auto fit = fit_error_order(s, kPi / 2);
    for (std::size_t i = 0; i < fit.epsilons.size(); ++i)
      t.add_row({std::string(scheme_name(s)), fit.epsilons[i], fit.infidelities[i]});
    ctx.check(within(std::string(scheme_name(s)) + " log-log slope", fit.slope, error_order(s), 0.05));
  }
  ctx.write(t);
  const double ratio = (1.0 - scheme_fidelity(SchemeId::opnhqc, kPi / 2, 1e-3, FidelityMode::exact)) /
                       (1.0 - scheme_fidelity(SchemeId::dcnhqc, kPi / 2, 1e-3, FidelityMode::exact));
  ctx.check(within("OPNHQC / DCNHQC infidelity ratio at epsilon=1e-3", ratio, 0.5, 0.025));
}

const std::map<std::string, std::function<void(Context&)>, std::less<>>& registry() {
  static const std::map<std::string, std::function<void(Context&)>, std::less<>> r = {
      {"fig3a", [](Context& c) { epsilon_preset(c, GatePreset::x_half); }},
      {"fig3b", [](Context& c) { epsilon_preset(c, GatePreset::s_gate); }},
      {"fig4a", [](Context& c) { dynamics_preset(c, false); }},
      {"fig4b", [](Context& c) { dynamics_preset(c, true); }},
      {"fig5", fig5},
      {"fig6", fig6},
      {"fig7", fig7},
      {"cnot-check", cnot_check},
      {"order-scaling", order_scaling},
  };
  return r;
}

}  // namespace

bool PresetReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PresetCheck& c) { return c.pass; });
}

std::string PresetReport::summary() const {
  std::ostringstream os;
  os << "preset: " << name << "\n";
  os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  os << "runtime: " << fmt(seconds, 3) << " s\n\n";
  for (const auto& c : checks)
    os << (c.pass ? "PASS  " : "FAIL  ") << c.label << ": " << fmt(c.value, 10) << " (target " << c.target << ")\n";
  if (!notes.empty()) {
    os << "\n";
    for (const auto& n : notes) os << "note: " << n << "\n";
  }
  if (!files.empty()) {
    os << "\nfiles:\n";
    for (const auto& f : files) os << "  " << f << "\n";
  }
  return os.str();
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

PresetReport run_preset(std::string_view name, const PresetOptions& opt) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) {
    std::string list;
    for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + std::string(name) + "'; available presets: " + list);
  }
  const auto start = std::chrono::steady_clock::now();
  Context ctx(std::string(name), opt);
  it->second(ctx);
  auto& report = ctx.report();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto path = (std::filesystem::path(opt.out_dir) / (report.name + "_summary.txt")).string();
  report.files.push_back(path);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << report.summary();
  return report;
}

}  // namespace nhqc::harness
