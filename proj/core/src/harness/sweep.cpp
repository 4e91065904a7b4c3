#include "nhqc/harness/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nhqc/errors.hpp"
#include "nhqc/harness/parallel.hpp"

namespace nhqc::harness {

Table run_epsilon_sweep(const SweepConfig& cfg) {
  cfg.validate();
  if (cfg.rate) throw ConfigError("sweep: a decoherence-rate grid is not allowed in a closed-system sweep");

  const auto eps = cfg.epsilon.values();
  const std::size_t per = eps.size();
  const std::size_t total = cfg.schemes.size() * per;
  std::vector<double> exact(total), numeric(total);

  parallel_for(total, cfg.workers, [&](std::size_t i) {
    const SchemeId s = cfg.schemes[i / per];
    const double e = eps[i % per];
    exact[i] = scheme_fidelity(s, cfg.params.gamma_g, e, FidelityMode::exact);
    numeric[i] = propagated_gate_fidelity(s, cfg.params, NoiseParams{e, 0.0}, cfg.phi0);
  });

  Table t;
  t.columns = {"scheme", "epsilon", "fidelity_exact", "fidelity_numeric"};
  for (std::size_t i = 0; i < total; ++i) {
    const SchemeId s = cfg.schemes[i / per];
    if (std::abs(exact[i] - numeric[i]) > kSweepAgreementTol)
      throw NumericalError("sweep: closed form and propagation disagree for " + std::string(scheme_name(s)) +
                           " at epsilon=" + format_number(eps[i % per]) + " (" + format_number(exact[i]) + " vs " +
                           format_number(numeric[i]) + ")");
    t.add_row({std::string(scheme_name(s)), eps[i % per], exact[i], numeric[i]});
  }
  return t;
}

Table run_2d_map(const SweepConfig& cfg) {
  cfg.validate();
  if (cfg.rate.has_value() == cfg.delta.has_value())
    throw ConfigError("map: set exactly one of the rate grid or the delta grid");

  const bool open = cfg.rate.has_value();
  if (open && cfg.dfs) throw ConfigError("map: the DFS encoding is supported on the epsilon-delta map only");
  const auto eps = cfg.epsilon.values();
  const auto second = open ? cfg.rate->values() : cfg.delta->values();
  const std::size_t per_scheme = eps.size() * second.size();
  const std::size_t total = cfg.schemes.size() * per_scheme;
  std::vector<double> fid(total);

  const Matrix target = target_gate(cfg.params);
  parallel_for(total, cfg.workers, [&](std::size_t i) {
    const SchemeId s = cfg.schemes[i / per_scheme];
    const std::size_t r = i % per_scheme;
    const double e = eps[r / second.size()];
    const double y = second[r % second.size()];
    if (open) {
      fid[i] = avg_gate_fidelity(s, cfg.params, NoiseParams{e, 0.0}, DecoherenceParams::uniform(y), cfg.step);
    } else if (cfg.dfs) {
      fid[i] = trace_fidelity(target, computational_block(dfs_single_gate(s, cfg.params, NoiseParams{e, y})));
    } else {
      fid[i] = propagated_gate_fidelity(s, cfg.params, NoiseParams{e, y}, cfg.phi0);
    }
  });

  Table t;
  t.columns = {"scheme", "epsilon", open ? "gamma_rate" : "delta", "fidelity"};
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t r = i % per_scheme;
    t.add_row({std::string(scheme_name(cfg.schemes[i / per_scheme])), eps[r / second.size()],
               second[r % second.size()], fid[i]});
  }
  return t;
}

ThresholdResult locate_threshold(SchemeId scheme, const GateParams& g, std::span<const double> epsilons,
                                 std::span<const double> rates, double level, double step, unsigned workers) {
  if (epsilons.empty() || rates.empty()) throw ConfigError("threshold: empty grid");
  if (!std::is_sorted(rates.begin(), rates.end())) throw ConfigError("threshold: rates must be ascending");

  const std::size_t ne = epsilons.size();
  std::vector<double> fid(rates.size() * ne);
  parallel_for(fid.size(), workers, [&](std::size_t i) {
    fid[i] = avg_gate_fidelity(scheme, g, NoiseParams{epsilons[i % ne], 0.0},
                               DecoherenceParams::uniform(rates[i / ne]), step);
  });

  ThresholdResult out;
  out.rates.assign(rates.begin(), rates.end());
  out.min_fidelity.resize(rates.size());
  bool run = true;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const auto first = fid.begin() + static_cast<std::ptrdiff_t>(k * ne);
    out.min_fidelity[k] = *std::min_element(first, first + static_cast<std::ptrdiff_t>(ne));
    if (run && out.min_fidelity[k] >= level) {
      out.threshold = rates[k];
      out.found = true;
    } else {
      run = false;
    }
  }
  return out;
}

OrderFit fit_error_order(SchemeId scheme, double gamma_g, double eps_lo, double eps_hi, std::size_t points) {
  if (!(eps_lo > 0.0) || !(eps_hi > eps_lo) || points < 2) throw ConfigError("order fit: invalid epsilon range");
  OrderFit fit;
  fit.scheme = scheme;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double step = std::log(eps_hi / eps_lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double e = eps_lo * std::exp(step * static_cast<double>(i));
    const double inf = 1.0 - scheme_fidelity(scheme, gamma_g, e, FidelityMode::exact);
    if (!(inf > 0.0)) throw NumericalError("order fit: non-positive infidelity at epsilon=" + format_number(e));
    fit.epsilons.push_back(e);
    fit.infidelities.push_back(inf);
    const double x = std::log(e), y = std::log(inf);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points);
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace nhqc::harness
