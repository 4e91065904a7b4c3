#pragma once

// Decoherence-free-subspace encodings built from exchange-coupled physical qubits.
//
// Physical qubit order, most significant bit first:
//   single logical qubit: (T1, T2, TE1)            -> 8-dim space
//   two logical qubits:   (T1, T2, TE1, T3, T4, TE2) -> 64-dim space
// S+ = |1><0|, S- = |0><1|.

#include <array>
#include <cstddef>
#include <string>
#include <variant>

#include "nhqc/algebra.hpp"
#include "nhqc/lindblad.hpp"
#include "nhqc/propagator.hpp"
#include "nhqc/pulses.hpp"

namespace nhqc {

/// |0>_L = |100>, |1>_L = |010>, |E1>_L = |001>.
struct DfsSingleBasis {
  static constexpr std::size_t qubits = 3;
  static constexpr std::size_t dim = 8;
  static constexpr std::array<std::size_t, 3> indices = {0b100, 0b010, 0b001};
};

/// |00>_L=|100100>, |01>_L=|100010>, |E1>_L=|110000>, |10>_L=|010100>,
/// |11>_L=|010010>, |E2>_L=|000110>.
struct DfsTwoBasis {
  static constexpr std::size_t qubits = 6;
  static constexpr std::size_t dim = 64;
  static constexpr std::array<std::size_t, 6> indices = {0b100100, 0b100010, 0b110000,
                                                         0b010100, 0b010010, 0b000110};
  // Positions of |00>, |01>, |10>, |11> within the six-state logical basis.
  static constexpr std::array<std::size_t, 4> logical = {0, 1, 3, 4};
};

/// Two-qubit gate parameters. tan(χ/2) = G1/G2, η = η3 − η4 + π.
struct TwoQubitParams {
  double chi = kPi / 2;
  double eta = 0.0;
  double gamma_g = kPi / 2;
  // Base phase of the G2 coupling; η3 follows from η.
  double eta4 = 0.0;

  double eta3() const { return eta + eta4 - kPi; }
  double g1() const;
  double g2() const;
  Complex alpha() const;
  Complex beta() const;
  void validate() const;
};

// Logical basis embedding: column vectors in the physical space.
Matrix embed_logical(std::span<const std::size_t> indices, const Matrix& logical, std::size_t dim);
Matrix project_logical(std::span<const std::size_t> indices, const Matrix& physical_op);

/// (1+ε)[K1 e^{-iη1}|0><E1| + K2 e^{-iη2}|1><E1| + h.c.] + δ K_m I in the logical basis.
Matrix logical_hamiltonian_1q(double k1, double k2, double eta1, double eta2, const NoiseParams& n);
/// The same drive written as exchange couplings on three physical qubits,
/// with the collective Z error δ K_m Σ_j |1><1|_j.
Matrix physical_hamiltonian_1q(double k1, double k2, double eta1, double eta2, const NoiseParams& n);

/// Logical 3x3 propagator of a scheme realized through K1/K2 and η1 − η2 (K_m = 1).
Matrix dfs_single_gate(SchemeId scheme, const GateParams& g, const NoiseParams& n);

struct TwoQubitGate {
  Matrix u6;  // (|00>, |01>, |E1>, |10>, |11>, |E2>)
  Matrix u4;  // (|00>, |01>, |10>, |11>)
};

/// Closed-form U_T(χ, η, γ_g) and its logical 4x4 reduction.
TwoQubitGate two_qubit_gate(const TwoQubitParams& p);

/// Six-dimensional logical Hamiltonian of the coupled pair, δ term included
/// (two excitations, so it contributes 2 δ G_m I).
Matrix logical_hamiltonian_2q(double g1, double g2, double eta3, double eta4, const NoiseParams& n);
Matrix physical_hamiltonian_2q(double g1, double g2, double eta3, double eta4, const NoiseParams& n);

/// Propagates the logical Hamiltonian under the scheme's phase schedule, applied
/// to η3 and η4 together so that η stays fixed. The scheme must have total area 2π.
Matrix two_qubit_evolution(const TwoQubitParams& p, SchemeId scheme, const NoiseParams& n);

Matrix logical_block(const Matrix& u6);
Matrix cnot_matrix();

struct CnotCheck {
  bool equivalent = false;
  double deviation = 1.0;  // 1 − trace_fidelity
};

inline constexpr double kCnotTol = 1e-10;

/// U_T'(π/2, 0, π/2) · (I ⊗ X/2) against CNOT.
CnotCheck cnot_equivalence();
CnotCheck cnot_equivalence(const Matrix& u4);

enum class DfsLevel { single, two };

std::string_view dfs_level_name(DfsLevel level);
DfsLevel parse_dfs_level(std::string_view name);

// Physical-space schedules (Ω = K_m = G_m = 1).
Schedule dfs_single_schedule(SchemeId scheme, const GateParams& g, const NoiseParams& n);
Schedule dfs_two_schedule(SchemeId scheme, const TwoQubitParams& p, const NoiseParams& n);

struct DfsReport {
  DfsLevel level = DfsLevel::single;
  SchemeId scheme = SchemeId::opnhqc;
  std::size_t dimension = 0;
  double fidelity = 0.0;
  double leakage = 0.0;
  std::string model;
};

/// Lindblad evolution in the full physical space; fidelity against the ideal
/// logical target, leakage = population outside the DFS.
DfsReport simulate_dfs_single(SchemeId scheme, const GateParams& g, const NoiseParams& n, const DecoherenceParams& d,
                              const Matrix& initial_logical, double step = kDefaultStep);
DfsReport simulate_dfs_two(SchemeId scheme, const TwoQubitParams& p, const NoiseParams& n,
                           const DecoherenceParams& d, const Matrix& initial_logical, double step = kDefaultStep);

using DfsGateSpec = std::variant<GateParams, TwoQubitParams>;

// Default initial states: |0>_L (single) and (|00>_L + |10>_L)/√2 (two).
DfsReport simulate_dfs(DfsLevel level, SchemeId scheme, const DfsGateSpec& gate, const NoiseParams& n,
                       const DecoherenceParams& d, double step = kDefaultStep);

}  // namespace nhqc
