#pragma once

// Three-level Λ-system dynamics. Basis order is (|0>, |1>, |e>) everywhere.

#include <span>
#include <vector>

#include "nhqc/algebra.hpp"
#include "nhqc/pulses.hpp"

namespace nhqc {

/// Systematic control errors: the drive is scaled by (1 + epsilon) and the
/// excited level is detuned by delta * Ω_m.
struct NoiseParams {
  double epsilon = 0.0;
  double delta = 0.0;

  double mu() const { return 1.0 + epsilon; }
  void validate() const;
};

enum class FidelityMode { exact, series };

inline constexpr std::size_t kLevelE = 2;

/// (1+ε)[Ω e^{-iφ0}|b><e| + h.c.] + δ Ω|e><e|.
Matrix hamiltonian_3level(const GateParams& g, double phi0, double omega, const NoiseParams& n);

/// Product of segment propagators, later segments on the left.
Matrix evolve_sequence(std::span<const PulseSegment> segments, const GateParams& g, const NoiseParams& n);

/// Coefficient of |b><b| in the closed-form error operator of each scheme.
Complex dressed_error_amplitude(SchemeId scheme, double gamma_g, double epsilon);

double scheme_fidelity(SchemeId scheme, double gamma_g, double epsilon, FidelityMode mode);

// Leading error order of the scheme (2 or 4).
int error_order(SchemeId scheme);

/// Matrix elements of a 3x3 operator between the dressed states (embedded with
/// zero |e> amplitude).
struct DressedBlock {
  Complex bb;
  Complex bd;
  Complex db;
  Complex dd;
};

DressedBlock dressed_projection(const Matrix& u3, const GateParams& g);

// Top-left 2x2 block (the computational subspace).
Matrix computational_block(const Matrix& u3);

// Embed a two-component state into the three-level space with zero |e> amplitude.
Matrix embed_qubit_state(const Matrix& psi2);

/// trace_fidelity of the propagated computational block against target_gate(g).
double propagated_gate_fidelity(SchemeId scheme, const GateParams& g, const NoiseParams& n,
                                double phi0_base = 0.0);

struct BlochPoint {
  double t;
  double x;
  double y;
  double z;
};

/// Bloch vector of the state started in |b>, in the {|b>, |e>} subspace (|b> is
/// the north pole), sampled uniformly over the sequence duration.
std::vector<BlochPoint> bloch_trajectory(std::span<const PulseSegment> segments, const GateParams& g,
                                         const NoiseParams& n, std::size_t samples);

}  // namespace nhqc
