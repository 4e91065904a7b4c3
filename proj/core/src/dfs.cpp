#include "nhqc/dfs.hpp"

#include <cmath>

#include "nhqc/errors.hpp"

namespace nhqc {

namespace {

const Matrix& raise() {
  static const Matrix m{{0.0, 0.0}, {1.0, 0.0}};
  return m;
}

const Matrix& lower() {
  static const Matrix m{{0.0, 1.0}, {0.0, 0.0}};
  return m;
}

const Matrix& excited() {
  static const Matrix m{{0.0, 0.0}, {0.0, 1.0}};
  return m;
}

// Product of single-qubit operators placed on the given qubits, identity elsewhere.
Matrix place(std::size_t qubits, std::initializer_list<std::pair<std::size_t, const Matrix*>> factors) {
  Matrix out = Matrix::identity(1);
  for (std::size_t q = 0; q < qubits; ++q) {
    const Matrix* op = nullptr;
    for (const auto& [pos, m] : factors)
      if (pos == q) op = m;
    out = kron(out, op ? *op : Matrix::identity(2));
  }
  return out;
}

Matrix excitation_number(std::size_t qubits) {
  Matrix n(std::size_t{1} << qubits, std::size_t{1} << qubits);
  for (std::size_t q = 0; q < qubits; ++q) n += place(qubits, {{q, &excited()}});
  return n;
}

// Exchange term c S+_a S-_b + h.c.
Matrix exchange(std::size_t qubits, std::size_t a, std::size_t b, Complex c) {
  Matrix t = place(qubits, {{a, &raise()}, {b, &lower()}}) * c;
  return t + t.adjoint();
}

void check_scheme_area(SchemeId scheme, const std::vector<PulseSegment>& segs) {
  if (std::abs(total_area(segs) - 2.0 * kPi) > 1e-12) {
    throw ConfigError(std::string("two-qubit evolution needs total pulse area 2pi; ") +
                      std::string(scheme_name(scheme)) + " has " + std::to_string(total_area(segs)));
  }
}

void require_qubit_model(const DecoherenceParams& d) {
  if (d.operator_set == OperatorSet::lambda_three_level && !d.is_zero())
    throw ConfigError("DFS simulations need a per-qubit decoherence model (decay_dephasing or decay)");
}

// Drive amplitudes and phases for segment phase phi0 realizing (θ, φ).
struct SingleDrive {
  double k1, k2, eta1, eta2;
};

SingleDrive single_drive(const GateParams& g, double phi0) {
  return {std::sin(g.theta / 2), std::cos(g.theta / 2), phi0, phi0 - g.phi + kPi};
}

DfsReport finish_report(DfsLevel level, SchemeId scheme, const Matrix& rho, std::span<const std::size_t> dfs,
                        const Matrix& target, const DecoherenceParams& d) {
  DfsReport r;
  r.level = level;
  r.scheme = scheme;
  r.dimension = rho.rows();
  r.fidelity = state_fidelity(rho, target);
  double inside = 0.0;
  for (std::size_t i : dfs) inside += rho(i, i).real();
  r.leakage = 1.0 - inside;
  r.model = d.is_zero() ? std::string("closed system (Gamma = 0)") : describe_operator_set(d.operator_set);
  return r;
}

}  // namespace

double TwoQubitParams::g1() const { return std::sin(chi / 2); }
double TwoQubitParams::g2() const { return std::cos(chi / 2); }

Complex TwoQubitParams::alpha() const {
  return {std::cos(gamma_g / 2), std::cos(chi) * std::sin(gamma_g / 2)};
}

Complex TwoQubitParams::beta() const { return std::sin(chi) * std::sin(gamma_g / 2) * std::polar(1.0, -eta); }

void TwoQubitParams::validate() const {
  if (!std::isfinite(chi) || !std::isfinite(eta) || !std::isfinite(gamma_g) || !std::isfinite(eta4))
    throw ValidationError("TwoQubitParams: angles must be finite");
  if (chi < -1e-12 || chi > kPi + 1e-12) throw ValidationError("TwoQubitParams: chi must lie in [0, pi]");
}

Matrix embed_logical(std::span<const std::size_t> indices, const Matrix& logical, std::size_t dim) {
  if (logical.cols() != 1 || logical.rows() != indices.size())
    throw ShapeError("embed_logical: logical vector does not match the basis");
  Matrix out(dim, 1);
  for (std::size_t i = 0; i < indices.size(); ++i) out[indices[i]] = logical[i];
  return out;
}

Matrix project_logical(std::span<const std::size_t> indices, const Matrix& physical_op) {
  Matrix out(indices.size(), indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t c = 0; c < indices.size(); ++c) out(r, c) = physical_op(indices[r], indices[c]);
  return out;
}

Matrix logical_hamiltonian_1q(double k1, double k2, double eta1, double eta2, const NoiseParams& n) {
  n.validate();
  if (k1 < 0.0 || k2 < 0.0 || (k1 == 0.0 && k2 == 0.0))
    throw ValidationError("logical_hamiltonian_1q: couplings must be non-negative and not both zero");
  Matrix h(3, 3);
  h(0, 2) = n.mu() * k1 * std::polar(1.0, -eta1);
  h(1, 2) = n.mu() * k2 * std::polar(1.0, -eta2);
  h(2, 0) = std::conj(h(0, 2));
  h(2, 1) = std::conj(h(1, 2));
  const double km = std::hypot(k1, k2);
  for (std::size_t i = 0; i < 3; ++i) h(i, i) += n.delta * km;
  return h;
}

Matrix physical_hamiltonian_1q(double k1, double k2, double eta1, double eta2, const NoiseParams& n) {
  n.validate();
  if (k1 < 0.0 || k2 < 0.0 || (k1 == 0.0 && k2 == 0.0))
    throw ValidationError("physical_hamiltonian_1q: couplings must be non-negative and not both zero");
  constexpr std::size_t q = DfsSingleBasis::qubits;
  Matrix h = exchange(q, 0, 2, k1 * std::polar(1.0, -eta1)) + exchange(q, 1, 2, k2 * std::polar(1.0, -eta2));
  h *= n.mu();
  h += excitation_number(q) * Complex{n.delta * std::hypot(k1, k2)};
  return h;
}

Matrix dfs_single_gate(SchemeId scheme, const GateParams& g, const NoiseParams& n) {
  Matrix u = Matrix::identity(3);
  for (const auto& seg : build_sequence(scheme, g)) {
    const auto drive = single_drive(g, seg.phi0);
    u = expm_generator(logical_hamiltonian_1q(drive.k1, drive.k2, drive.eta1, drive.eta2, n), seg.duration()) * u;
  }
  return u;
}

TwoQubitGate two_qubit_gate(const TwoQubitParams& p) {
  p.validate();
  const Complex a = p.alpha();
  const Complex b = p.beta();
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10)
    throw NumericalError("two_qubit_gate: |alpha|^2 + |beta|^2 deviates from 1");

  const Complex minus = std::polar(1.0, -p.gamma_g / 2);
  const Complex plus = std::polar(1.0, p.gamma_g / 2);
  Matrix u6(6, 6);
  u6(0, 0) = a * minus;
  u6(0, 1) = kI * std::conj(b) * minus;
  u6(1, 0) = kI * b * minus;
  u6(1, 1) = std::conj(a) * minus;
  u6(2, 2) = std::polar(1.0, p.gamma_g);
  u6(3, 3) = a * plus;
  u6(3, 4) = -kI * std::conj(b) * plus;
  u6(4, 3) = -kI * b * plus;
  u6(4, 4) = std::conj(a) * plus;
  u6(5, 5) = std::polar(1.0, -p.gamma_g);
  return {u6, logical_block(u6)};
}

Matrix logical_hamiltonian_2q(double g1, double g2, double eta3, double eta4, const NoiseParams& n) {
  n.validate();
  Matrix h(6, 6);
  h(0, 2) = g1 * std::polar(1.0, eta3);
  h(1, 2) = g2 * std::polar(1.0, eta4);
  h(4, 5) = g1 * std::polar(1.0, -eta3);
  h(3, 5) = g2 * std::polar(1.0, -eta4);
  h = (h + h.adjoint()) * Complex{n.mu()};
  const double gm = std::hypot(g1, g2);
  for (std::size_t i = 0; i < 6; ++i) h(i, i) += 2.0 * n.delta * gm;
  return h;
}

Matrix physical_hamiltonian_2q(double g1, double g2, double eta3, double eta4, const NoiseParams& n) {
  n.validate();
  constexpr std::size_t q = DfsTwoBasis::qubits;
  // T2 couples to T3 (G1) and to T4 (G2).
  Matrix h = exchange(q, 1, 3, g1 * std::polar(1.0, -eta3)) + exchange(q, 1, 4, g2 * std::polar(1.0, -eta4));
  h *= n.mu();
  h += excitation_number(q) * Complex{n.delta * std::hypot(g1, g2)};
  return h;
}

Matrix two_qubit_evolution(const TwoQubitParams& p, SchemeId scheme, const NoiseParams& n) {
  p.validate();
  const auto segs = build_sequence(scheme, GateParams{0.0, 0.0, p.gamma_g});
  check_scheme_area(scheme, segs);
  Matrix u = Matrix::identity(6);
  for (const auto& seg : segs) {
    const Matrix h = logical_hamiltonian_2q(p.g1(), p.g2(), p.eta3() + seg.phi0, p.eta4 + seg.phi0, n);
    u = expm_generator(h, seg.duration()) * u;
  }
  return u;
}

Matrix logical_block(const Matrix& u6) {
  if (u6.rows() != 6 || u6.cols() != 6) throw ShapeError("logical_block: expected a 6x6 operator");
  return project_logical(DfsTwoBasis::logical, u6);
}

Matrix cnot_matrix() {
  return Matrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}

CnotCheck cnot_equivalence(const Matrix& u4) {
  if (u4.rows() != 4 || u4.cols() != 4) throw ShapeError("cnot_equivalence: expected a 4x4 operator");
  const Matrix local = kron(Matrix::identity(2), target_gate(GateParams::x_half()));
  const double f = trace_fidelity(cnot_matrix(), u4 * local);
  const double dev = std::abs(1.0 - f);
  return {dev < kCnotTol, dev};
}

CnotCheck cnot_equivalence() { return cnot_equivalence(two_qubit_gate(TwoQubitParams{kPi / 2, 0.0, kPi / 2}).u4); }

std::string_view dfs_level_name(DfsLevel level) {
  switch (level) {
    case DfsLevel::single:
      return "single";
    case DfsLevel::two:
      return "two";
  }
  throw ValidationError("dfs_level_name: invalid level");
}

DfsLevel parse_dfs_level(std::string_view name) {
  if (name == "single") return DfsLevel::single;
  if (name == "two") return DfsLevel::two;
  throw ConfigError("unknown DFS level '" + std::string(name) + "' (expected single or two)");
}

Schedule dfs_single_schedule(SchemeId scheme, const GateParams& g, const NoiseParams& n) {
  Schedule s;
  for (const auto& seg : build_sequence(scheme, g)) {
    const auto drive = single_drive(g, seg.phi0);
    s.segments.push_back(
        {physical_hamiltonian_1q(drive.k1, drive.k2, drive.eta1, drive.eta2, n), seg.duration()});
  }
  return s;
}

Schedule dfs_two_schedule(SchemeId scheme, const TwoQubitParams& p, const NoiseParams& n) {
  p.validate();
  const auto segs = build_sequence(scheme, GateParams{0.0, 0.0, p.gamma_g});
  check_scheme_area(scheme, segs);
  Schedule s;
  for (const auto& seg : segs) {
    s.segments.push_back(
        {physical_hamiltonian_2q(p.g1(), p.g2(), p.eta3() + seg.phi0, p.eta4 + seg.phi0, n), seg.duration()});
  }
  return s;
}

DfsReport simulate_dfs_single(SchemeId scheme, const GateParams& g, const NoiseParams& n, const DecoherenceParams& d,
                              const Matrix& initial_logical, double step) {
  require_qubit_model(d);
  if (initial_logical.rows() != 2 || initial_logical.cols() != 1)
    throw ShapeError("simulate_dfs_single: initial state must be a 2-component logical vector");
  const std::array<std::size_t, 2> qubit_states = {DfsSingleBasis::indices[0], DfsSingleBasis::indices[1]};
  const Matrix psi0 = embed_logical(qubit_states, initial_logical, DfsSingleBasis::dim);
  const Matrix target = embed_logical(qubit_states, target_gate(g) * initial_logical, DfsSingleBasis::dim);
  const Matrix rho = integrate(outer(psi0, psi0), dfs_single_schedule(scheme, g, n), d, step);
  return finish_report(DfsLevel::single, scheme, rho, DfsSingleBasis::indices, target, d);
}

DfsReport simulate_dfs_two(SchemeId scheme, const TwoQubitParams& p, const NoiseParams& n,
                           const DecoherenceParams& d, const Matrix& initial_logical, double step) {
  require_qubit_model(d);
  if (initial_logical.rows() != 4 || initial_logical.cols() != 1)
    throw ShapeError("simulate_dfs_two: initial state must be a 4-component logical vector");
  std::array<std::size_t, 4> qubit_states{};
  for (std::size_t i = 0; i < 4; ++i) qubit_states[i] = DfsTwoBasis::indices[DfsTwoBasis::logical[i]];
  const Matrix psi0 = embed_logical(qubit_states, initial_logical, DfsTwoBasis::dim);
  const Matrix target = embed_logical(qubit_states, two_qubit_gate(p).u4 * initial_logical, DfsTwoBasis::dim);
  const Matrix rho = integrate(outer(psi0, psi0), dfs_two_schedule(scheme, p, n), d, step);
  return finish_report(DfsLevel::two, scheme, rho, DfsTwoBasis::indices, target, d);
}

DfsReport simulate_dfs(DfsLevel level, SchemeId scheme, const DfsGateSpec& gate, const NoiseParams& n,
                       const DecoherenceParams& d, double step) {
  switch (level) {
    case DfsLevel::single: {
      const auto* g = std::get_if<GateParams>(&gate);
      if (!g) throw ConfigError("simulate_dfs: single level needs GateParams");
      return simulate_dfs_single(scheme, *g, n, d, Matrix::column({1.0, 0.0}), step);
    }
    case DfsLevel::two: {
      const auto* p = std::get_if<TwoQubitParams>(&gate);
      if (!p) throw ConfigError("simulate_dfs: two level needs TwoQubitParams");
      const double r = 1.0 / std::sqrt(2.0);
      return simulate_dfs_two(scheme, *p, n, d, Matrix::column({r, 0.0, r, 0.0}), step);
    }
  }
  throw ValidationError("simulate_dfs: invalid level");
}

}  // namespace nhqc
