#pragma once

#include <span>
#include <vector>

#include "nhqc/harness/config.hpp"
#include "nhqc/harness/csv.hpp"

namespace nhqc::harness {

// Tolerance between the closed-form and propagated fidelity in a sweep.
inline constexpr double kSweepAgreementTol = 1e-9;

/// Columns: scheme, epsilon, fidelity_exact, fidelity_numeric. Throws
/// ConfigError when a Γ grid is configured and NumericalError when the two
/// fidelity routes disagree beyond kSweepAgreementTol.
Table run_epsilon_sweep(const SweepConfig& cfg);

/// ε × Γ map of the six-state average fidelity (columns scheme, epsilon,
/// gamma_rate, fidelity), or ε × δ map of the closed-system gate fidelity
/// (columns scheme, epsilon, delta, fidelity), optionally through the
/// single-qubit DFS encoding. Exactly one secondary grid must be set.
Table run_2d_map(const SweepConfig& cfg);

struct ThresholdResult {
  std::vector<double> rates;
  std::vector<double> min_fidelity;  // minimum over the ε grid, per rate
  double threshold = 0.0;            // largest rate of the leading run at or above `level`
  bool found = false;
};

ThresholdResult locate_threshold(SchemeId scheme, const GateParams& g, std::span<const double> epsilons,
                                 std::span<const double> rates, double level, double step, unsigned workers);

struct OrderFit {
  SchemeId scheme = SchemeId::nhqc;
  std::vector<double> epsilons;
  std::vector<double> infidelities;
  double slope = 0.0;
};

/// Least-squares slope of log(1 − F) against log ε for the closed-form fidelity,
/// over `points` log-spaced ε values in [eps_lo, eps_hi].
OrderFit fit_error_order(SchemeId scheme, double gamma_g, double eps_lo = 1e-3, double eps_hi = 1e-2,
                         std::size_t points = 11);

}  // namespace nhqc::harness
