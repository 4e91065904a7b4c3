#pragma once

// Open-system dynamics:
//
//   dρ/dt = i[ρ, H] + ½ Σ_j Γ_j (2σ_j ρ σ_j† − σ_j†σ_j ρ − ρ σ_j†σ_j)
//
// integrated with fixed-step classic RK4 over piecewise-constant Hamiltonians.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nhqc/algebra.hpp"
#include "nhqc/propagator.hpp"
#include "nhqc/pulses.hpp"

namespace nhqc {

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kTraceTol = 1e-8;

enum class OperatorSet {
  // σ1=|e><0|, σ2=|e><1|, σ3=(|0><0|-|e><e|)/2, σ4=(|1><1|-|e><e|)/2
  lambda_three_level,
  // Per physical qubit: S⁻ = |0><1| and (|1><1| - |0><0|)/2.
  qubit_decay_dephasing,
  // Per physical qubit: S⁻ only.
  qubit_decay,
};

std::string_view operator_set_name(OperatorSet set);
OperatorSet parse_operator_set(std::string_view name);
// Human-readable description of the collapse model, printed in reports.
std::string describe_operator_set(OperatorSet set);

struct DecoherenceParams {
  // One rate per collapse operator, or a single rate shared by all of them.
  std::vector<double> rates;
  OperatorSet operator_set = OperatorSet::lambda_three_level;

  static DecoherenceParams uniform(double gamma, OperatorSet set = OperatorSet::lambda_three_level);
  void validate() const;
  // Rates expanded to `count` operators.
  std::vector<double> resolve(std::size_t count) const;
  bool is_zero() const;
};

struct LabeledOperator {
  Matrix op;
  std::string label;
};

std::vector<LabeledOperator> decoherence_ops_3level();
std::vector<LabeledOperator> qubit_collapse_ops(std::size_t qubits, bool with_dephasing);
// Operators for `set` acting on a space of dimension `dim` (3, or 2^qubits).
std::vector<LabeledOperator> collapse_operators(OperatorSet set, std::size_t dim);

struct ScheduleSegment {
  Matrix hamiltonian;
  double duration = 0.0;
};

struct Schedule {
  std::vector<ScheduleSegment> segments;

  std::size_t dim() const;
  double total_duration() const;
  double shortest_duration() const;
  void validate() const;
};

// Binds a pulse sequence to three-level Hamiltonians (Ω = Ω_m = 1).
Schedule make_schedule(std::span<const PulseSegment> segments, const GateParams& g, const NoiseParams& n);

/// Dense right-hand side, term by term as in the master equation above.
Matrix lindblad_rhs(const Matrix& rho, const Matrix& h, std::span<const Matrix> ops, std::span<const double> rates);

/// Precompiled generator for one constant Hamiltonian. Stores A = iH + ½ΣΓσ†σ
/// and the jump operators as nonzero lists, so that
///   dρ/dt = −Aρ − ρA† + Σ Γ σρσ†.
class LindbladGenerator {
 public:
  LindbladGenerator(const Matrix& h, std::span<const Matrix> ops, std::span<const double> rates);

  std::size_t dim() const noexcept { return dim_; }
  void apply(const Matrix& rho, Matrix& out) const;
  Matrix operator()(const Matrix& rho) const;

 private:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    Complex value;
  };
  struct Jump {
    double rate;
    std::vector<Entry> entries;
  };

  static std::vector<Entry> nonzeros(const Matrix& m);

  std::size_t dim_ = 0;
  std::vector<Entry> drift_;
  std::vector<Jump> jumps_;
};

/// Fixed-step RK4 over every schedule segment; the output is re-Hermitized once.
/// Throws ConfigError if step exceeds the shortest segment, NumericalError on trace drift.
Matrix integrate(const Matrix& rho0, const Schedule& schedule, const DecoherenceParams& d,
                 double step = kDefaultStep);

/// <ψ|ρ|ψ>. A qubit target is embedded with zero |e> amplitude for a 3x3 ρ.
double state_fidelity(const Matrix& rho, const Matrix& psi_target);

// {|0>, |1>, (|0>-|1>)/√2, (|0>+|1>)/√2, (|0>-i|1>)/√2, (|0>+i|1>)/√2}
std::array<Matrix, 6> cardinal_states();

/// Six-state average of <ψ_k|U† ρ_k U|ψ_k>, U = target_gate(g) (identity on |e>).
double avg_gate_fidelity(SchemeId scheme, const GateParams& g, const NoiseParams& n, const DecoherenceParams& d,
                         double step = kDefaultStep);

struct TraceSample {
  double t = 0.0;
  std::vector<double> populations;
  double fidelity = 0.0;
  double trace = 0.0;
};

/// Uniformly sampled diagonal of ρ(t) with the running fidelity against `target`.
/// `initial` may be a state vector or a density matrix.
std::vector<TraceSample> population_trace(const Matrix& initial, const Schedule& schedule,
                                          const DecoherenceParams& d, std::size_t samples, const Matrix& target,
                                          double step = kDefaultStep);

Matrix as_density(const Matrix& state_or_density);

}  // namespace nhqc
