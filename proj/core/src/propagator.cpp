#include "nhqc/propagator.hpp"

#include <cmath>

#include "nhqc/errors.hpp"

namespace nhqc {

void NoiseParams::validate() const {
  if (!std::isfinite(epsilon) || !std::isfinite(delta)) throw ValidationError("NoiseParams: non-finite value");
  if (std::abs(epsilon) > 0.5) throw ValidationError("NoiseParams: |epsilon| must not exceed 0.5");
  if (std::abs(delta) > 0.5) throw ValidationError("NoiseParams: |delta| must not exceed 0.5");
}

Matrix hamiltonian_3level(const GateParams& g, double phi0, double omega, const NoiseParams& n) {
  n.validate();
  if (!(omega > 0.0)) throw ValidationError("hamiltonian_3level: omega must be positive");
  const Matrix bright = bright_dark_basis(g).bright;
  const Complex drive = n.mu() * omega * std::polar(1.0, -phi0);

  Matrix h(3, 3);
  for (std::size_t k = 0; k < 2; ++k) {
    h(k, kLevelE) = drive * bright[k];
    h(kLevelE, k) = std::conj(h(k, kLevelE));
  }
  h(kLevelE, kLevelE) = n.delta * omega;
  return h;
}

Matrix evolve_sequence(std::span<const PulseSegment> segments, const GateParams& g, const NoiseParams& n) {
  if (segments.empty()) throw ValidationError("evolve_sequence: empty segment list");
  Matrix u = Matrix::identity(3);
  for (const auto& seg : segments) {
    if (!(seg.area > 0.0)) throw ValidationError("evolve_sequence: segment area must be positive");
    u = expm_generator(hamiltonian_3level(g, seg.phi0, 1.0, n), seg.duration()) * u;
  }
  return u;
}

Complex dressed_error_amplitude(SchemeId scheme, double gamma_g, double epsilon) {
  const double mu = 1.0 + epsilon;
  const double c = std::cos(mu * kPi / 2);
  const double s = std::sin(mu * kPi / 2);
  const double s_full = std::sin(mu * kPi);
  const double c2 = c * c;
  const double s2 = s * s;
  const double sf2 = s_full * s_full;
  const Complex phase = std::polar(1.0, gamma_g);

  switch (scheme) {
    case SchemeId::nhqc:
      return c2 + s2 * phase;
    case SchemeId::opnhqc:
      return phase - 2.0 * kI * phase * std::sin(gamma_g / 2) *
                         (c2 * c2 * std::polar(1.0, -gamma_g / 2) + 0.25 * sf2);
    case SchemeId::tlnhqc:
      // The quartic bright term is sin^4(μπ/2); it must reduce to e^{iγ} at μ = 1.
      return 0.5 * sf2 * (std::cos(gamma_g / 2) + std::polar(1.0, gamma_g / 2)) + s2 * s2 * phase +
             c2 * (1.0 - 3.0 * s2);
    case SchemeId::dcnhqc:
      return c2 * c2 + (s2 + 0.25 * sf2) * phase;
  }
  throw ValidationError("dressed_error_amplitude: unknown scheme");
}

int error_order(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::nhqc:
    case SchemeId::tlnhqc:
      return 2;
    case SchemeId::dcnhqc:
    case SchemeId::opnhqc:
      return 4;
  }
  throw ValidationError("error_order: unknown scheme");
}

double scheme_fidelity(SchemeId scheme, double gamma_g, double epsilon, FidelityMode mode) {
  if (mode == FidelityMode::exact) {
    const Complex amp = dressed_error_amplitude(scheme, gamma_g, epsilon);
    return 0.5 * std::abs(1.0 + amp * std::polar(1.0, -gamma_g));
  }

  const double e2 = epsilon * epsilon;
  const double pi2 = kPi * kPi;
  switch (scheme) {
    case SchemeId::nhqc:
      return 1.0 - e2 * pi2 * (1.0 - std::cos(gamma_g)) / 8.0;
    case SchemeId::tlnhqc: {
      const double sq = std::sin(gamma_g / 4);
      const double ch = std::cos(gamma_g / 2);
      return 1.0 - e2 * pi2 * sq * sq * ch * ch;
    }
    case SchemeId::opnhqc:
      return 1.0 - e2 * e2 * pi2 * pi2 * (1.0 - std::cos(gamma_g)) / 64.0;
    case SchemeId::dcnhqc:
      return 1.0 - e2 * e2 * pi2 * pi2 * (1.0 - std::cos(gamma_g)) / 32.0;
  }
  throw ValidationError("scheme_fidelity: unknown scheme");
}

Matrix embed_qubit_state(const Matrix& psi2) {
  if (psi2.rows() != 2 || psi2.cols() != 1) throw ShapeError("embed_qubit_state: expected a 2-component column");
  return Matrix::column({psi2[0], psi2[1], 0.0});
}

DressedBlock dressed_projection(const Matrix& u3, const GateParams& g) {
  if (u3.rows() != 3 || u3.cols() != 3) throw ShapeError("dressed_projection: expected a 3x3 operator");
  const auto [b2, d2] = bright_dark_basis(g);
  const Matrix b = embed_qubit_state(b2);
  const Matrix d = embed_qubit_state(d2);
  const Matrix ub = u3 * b;
  const Matrix ud = u3 * d;
  return {inner(b, ub), inner(b, ud), inner(d, ub), inner(d, ud)};
}

Matrix computational_block(const Matrix& u3) {
  if (u3.rows() < 2 || u3.cols() < 2) throw ShapeError("computational_block: operator too small");
  return Matrix{{u3(0, 0), u3(0, 1)}, {u3(1, 0), u3(1, 1)}};
}

double propagated_gate_fidelity(SchemeId scheme, const GateParams& g, const NoiseParams& n, double phi0_base) {
  const auto segments = build_sequence(scheme, g, phi0_base);
  return trace_fidelity(target_gate(g), computational_block(evolve_sequence(segments, g, n)));
}

std::vector<BlochPoint> bloch_trajectory(std::span<const PulseSegment> segments, const GateParams& g,
                                         const NoiseParams& n, std::size_t samples) {
  if (samples < 2) throw ValidationError("bloch_trajectory: need at least 2 samples");
  if (segments.empty()) throw ValidationError("bloch_trajectory: empty segment list");

  std::vector<double> starts;
  std::vector<Matrix> hams;
  double total = 0.0;
  for (const auto& seg : segments) {
    if (!(seg.area > 0.0)) throw ValidationError("bloch_trajectory: segment area must be positive");
    starts.push_back(total);
    hams.push_back(hamiltonian_3level(g, seg.phi0, 1.0, n));
    total += seg.duration();
  }

  const Matrix bright = embed_qubit_state(bright_dark_basis(g).bright);
  std::vector<BlochPoint> out;
  out.reserve(samples);

  // State at the start of the current segment, advanced lazily as samples move forward.
  Matrix psi_at_start = bright;
  std::size_t seg = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = total * static_cast<double>(k) / static_cast<double>(samples - 1);
    while (seg + 1 < segments.size() && t >= starts[seg + 1]) {
      psi_at_start = expm_generator(hams[seg], segments[seg].duration()) * psi_at_start;
      ++seg;
    }
    const double local = std::min(std::max(t - starts[seg], 0.0), segments[seg].duration());
    const Matrix psi = expm_generator(hams[seg], local) * psi_at_start;

    const Complex ab = inner(bright, psi);
    const Complex ae = psi[kLevelE];
    const Complex coh = std::conj(ab) * ae;
    out.push_back({t, 2.0 * coh.real(), 2.0 * coh.imag(), std::norm(ab) - std::norm(ae)});
  }
  return out;
}

}  // namespace nhqc
