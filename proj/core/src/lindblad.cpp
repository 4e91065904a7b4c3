#include "nhqc/lindblad.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "nhqc/errors.hpp"

namespace nhqc {

namespace {

std::size_t qubit_count(std::size_t dim) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < dim) ++q;
  if ((std::size_t{1} << q) != dim) throw ShapeError("dimension " + std::to_string(dim) + " is not a power of two");
  return q;
}

Matrix single_qubit_op(const Matrix& op2, std::size_t qubit, std::size_t qubits) {
  Matrix out = Matrix::identity(1);
  for (std::size_t k = 0; k < qubits; ++k) out = kron(out, k == qubit ? op2 : Matrix::identity(2));
  return out;
}

std::size_t steps_for(double duration, double step) {
  const double ratio = duration / step;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio - 1e-9)));
}

struct Rk4Workspace {
  Matrix k1, k2, k3, k4, tmp;
  explicit Rk4Workspace(std::size_t n) : k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n) {}
};

void axpy_into(Matrix& out, const Matrix& x, double a, const Matrix& y) {
  auto o = out.data();
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = xs[i] + a * ys[i];
}

// Advances rho over `duration` under one generator in ceil(duration/max_step) equal RK4 steps.
void rk4_advance(Matrix& rho, const LindbladGenerator& gen, double duration, double max_step, Rk4Workspace& w) {
  if (duration <= 0.0) return;
  const std::size_t n = steps_for(duration, max_step);
  const double h = duration / static_cast<double>(n);
  for (std::size_t s = 0; s < n; ++s) {
    gen.apply(rho, w.k1);
    axpy_into(w.tmp, rho, 0.5 * h, w.k1);
    gen.apply(w.tmp, w.k2);
    axpy_into(w.tmp, rho, 0.5 * h, w.k2);
    gen.apply(w.tmp, w.k3);
    axpy_into(w.tmp, rho, h, w.k3);
    gen.apply(w.tmp, w.k4);
    auto r = rho.data();
    auto a = w.k1.data();
    auto b = w.k2.data();
    auto c = w.k3.data();
    auto d = w.k4.data();
    const double h6 = h / 6.0;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += h6 * (a[i] + 2.0 * (b[i] + c[i]) + d[i]);
  }
}

std::vector<LindbladGenerator> compile(const Schedule& schedule, const DecoherenceParams& d) {
  const std::size_t dim = schedule.dim();
  std::vector<Matrix> ops;
  std::vector<double> rates;
  if (!d.is_zero()) {
    for (auto& lo : collapse_operators(d.operator_set, dim)) ops.push_back(std::move(lo.op));
    rates = d.resolve(ops.size());
  }
  std::vector<LindbladGenerator> gens;
  gens.reserve(schedule.segments.size());
  for (const auto& seg : schedule.segments) gens.emplace_back(seg.hamiltonian, ops, rates);
  return gens;
}

void check_trace(const Matrix& rho, const char* where) {
  const double drift = std::abs(rho.trace() - Complex{1.0});
  if (drift > kTraceTol) {
    throw NumericalError(std::string(where) + ": trace drift " + std::to_string(drift) + " exceeds tolerance");
  }
}

Matrix rehermitize(const Matrix& rho) { return (rho + rho.adjoint()) * Complex{0.5}; }

void require_density(const Matrix& rho, const char* where) {
  if (!rho.square()) throw ShapeError(std::string(where) + ": density matrix must be square");
  if (!is_density(rho)) throw ValidationError(std::string(where) + ": initial state is not a density matrix");
}

}  // namespace

std::string_view operator_set_name(OperatorSet set) {
  switch (set) {
    case OperatorSet::lambda_three_level:
      return "lambda";
    case OperatorSet::qubit_decay_dephasing:
      return "decay_dephasing";
    case OperatorSet::qubit_decay:
      return "decay";
  }
  throw ValidationError("operator_set_name: unknown set");
}

OperatorSet parse_operator_set(std::string_view name) {
  for (auto set : {OperatorSet::lambda_three_level, OperatorSet::qubit_decay_dephasing, OperatorSet::qubit_decay})
    if (operator_set_name(set) == name) return set;
  throw ConfigError("unknown decoherence model '" + std::string(name) +
                    "' (expected lambda, decay_dephasing or decay)");
}

std::string describe_operator_set(OperatorSet set) {
  switch (set) {
    case OperatorSet::lambda_three_level:
      return "three-level: s1=|e><0|, s2=|e><1|, s3=(|0><0|-|e><e|)/2, s4=(|1><1|-|e><e|)/2, uniform rate";
    case OperatorSet::qubit_decay_dephasing:
      return "full physical space: per-qubit decay S- and dephasing (|1><1|-|0><0|)/2, each at rate Gamma";
    case OperatorSet::qubit_decay:
      return "full physical space: per-qubit decay S- at rate Gamma";
  }
  throw ValidationError("describe_operator_set: unknown set");
}

DecoherenceParams DecoherenceParams::uniform(double gamma, OperatorSet set) {
  DecoherenceParams d{{gamma}, set};
  d.validate();
  return d;
}

void DecoherenceParams::validate() const {
  for (double r : rates)
    if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("DecoherenceParams: rates must be finite and >= 0");
}

std::vector<double> DecoherenceParams::resolve(std::size_t count) const {
  validate();
  if (rates.empty()) return std::vector<double>(count, 0.0);
  if (rates.size() == 1) return std::vector<double>(count, rates.front());
  if (rates.size() != count) {
    throw ConfigError("DecoherenceParams: " + std::to_string(rates.size()) + " rates for " + std::to_string(count) +
                      " operators");
  }
  return rates;
}

bool DecoherenceParams::is_zero() const {
  return std::all_of(rates.begin(), rates.end(), [](double r) { return r == 0.0; });
}

std::vector<LabeledOperator> decoherence_ops_3level() {
  const Matrix k0 = Matrix::basis(3, 0);
  const Matrix k1 = Matrix::basis(3, 1);
  const Matrix ke = Matrix::basis(3, kLevelE);
  return {
      {outer(ke, k0), "sigma1=|e><0|"},
      {outer(ke, k1), "sigma2=|e><1|"},
      {(outer(k0, k0) - outer(ke, ke)) * Complex{0.5}, "sigma3=(|0><0|-|e><e|)/2"},
      {(outer(k1, k1) - outer(ke, ke)) * Complex{0.5}, "sigma4=(|1><1|-|e><e|)/2"},
  };
}

std::vector<LabeledOperator> qubit_collapse_ops(std::size_t qubits, bool with_dephasing) {
  const Matrix lower{{0.0, 1.0}, {0.0, 0.0}};
  const Matrix dephase{{-0.5, 0.0}, {0.0, 0.5}};
  std::vector<LabeledOperator> out;
  for (std::size_t q = 0; q < qubits; ++q)
    out.push_back({single_qubit_op(lower, q, qubits), "decay[" + std::to_string(q) + "]"});
  if (with_dephasing) {
    for (std::size_t q = 0; q < qubits; ++q)
      out.push_back({single_qubit_op(dephase, q, qubits), "dephasing[" + std::to_string(q) + "]"});
  }
  return out;
}

std::vector<LabeledOperator> collapse_operators(OperatorSet set, std::size_t dim) {
  switch (set) {
    case OperatorSet::lambda_three_level:
      if (dim != 3) throw ShapeError("three-level operator set needs dimension 3");
      return decoherence_ops_3level();
    case OperatorSet::qubit_decay_dephasing:
      return qubit_collapse_ops(qubit_count(dim), true);
    case OperatorSet::qubit_decay:
      return qubit_collapse_ops(qubit_count(dim), false);
  }
  throw ValidationError("collapse_operators: unknown set");
}

std::size_t Schedule::dim() const {
  if (segments.empty()) throw ConfigError("Schedule: no segments");
  return segments.front().hamiltonian.rows();
}

double Schedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

double Schedule::shortest_duration() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : segments) m = std::min(m, s.duration);
  return m;
}

void Schedule::validate() const {
  const std::size_t n = dim();
  for (const auto& s : segments) {
    if (!(s.duration > 0.0)) throw ConfigError("Schedule: segment durations must be positive");
    if (s.hamiltonian.rows() != n || s.hamiltonian.cols() != n)
      throw ShapeError("Schedule: segment Hamiltonians differ in dimension");
    if (!is_hermitian(s.hamiltonian, tol::hermitian * std::max(1.0, s.hamiltonian.max_abs())))
      throw ValidationError("Schedule: segment Hamiltonian is not Hermitian");
  }
}

Schedule make_schedule(std::span<const PulseSegment> segments, const GateParams& g, const NoiseParams& n) {
  Schedule s;
  for (const auto& seg : segments) s.segments.push_back({hamiltonian_3level(g, seg.phi0, 1.0, n), seg.duration()});
  s.validate();
  return s;
}

Matrix lindblad_rhs(const Matrix& rho, const Matrix& h, std::span<const Matrix> ops, std::span<const double> rates) {
  if (!rho.square() || !h.square() || rho.rows() != h.rows()) throw ShapeError("lindblad_rhs: rho and H differ in shape");
  if (ops.size() != rates.size()) throw ShapeError("lindblad_rhs: operator and rate counts differ");
  Matrix out = kI * (rho * h - h * rho);
  for (std::size_t j = 0; j < ops.size(); ++j) {
    const Matrix& s = ops[j];
    if (s.rows() != rho.rows() || s.cols() != rho.cols()) throw ShapeError("lindblad_rhs: operator shape mismatch");
    const Matrix sd = s.adjoint();
    const Matrix sds = sd * s;
    const Matrix diss = Complex{2.0} * (s * rho * sd) - sds * rho - rho * sds;
    out += diss * Complex{0.5 * rates[j]};
  }
  return out;
}

std::vector<LindbladGenerator::Entry> LindbladGenerator::nonzeros(const Matrix& m) {
  std::vector<Entry> e;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != Complex{}) e.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), m(r, c)});
  return e;
}

LindbladGenerator::LindbladGenerator(const Matrix& h, std::span<const Matrix> ops, std::span<const double> rates)
    : dim_(h.rows()) {
  if (!h.square()) throw ShapeError("LindbladGenerator: Hamiltonian must be square");
  if (ops.size() != rates.size()) throw ShapeError("LindbladGenerator: operator and rate counts differ");
  Matrix drift = kI * h;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    if (ops[j].rows() != dim_ || ops[j].cols() != dim_) throw ShapeError("LindbladGenerator: operator shape mismatch");
    if (rates[j] < 0.0) throw ValidationError("LindbladGenerator: negative rate");
    if (rates[j] == 0.0) continue;
    drift += (ops[j].adjoint() * ops[j]) * Complex{0.5 * rates[j]};
    jumps_.push_back({rates[j], nonzeros(ops[j])});
  }
  drift_ = nonzeros(drift);
}

void LindbladGenerator::apply(const Matrix& rho, Matrix& out) const {
  const std::size_t n = dim_;
  if (rho.rows() != n || rho.cols() != n) throw ShapeError("LindbladGenerator::apply: rho shape mismatch");
  if (out.rows() != n || out.cols() != n) out = Matrix(n, n);
  const Complex* r = rho.data().data();
  Complex* o = out.data().data();
  std::fill(o, o + n * n, Complex{});

  for (const Entry& e : drift_) {
    // -A rho: row e.row -= a * row e.col
    const Complex a = e.value;
    const Complex* src = r + e.col * n;
    Complex* dst = o + e.row * n;
    for (std::size_t j = 0; j < n; ++j) dst[j] -= a * src[j];
    // -rho A^dag: column e.row -= column e.col * conj(a)
    const Complex ac = std::conj(a);
    for (std::size_t i = 0; i < n; ++i) o[i * n + e.row] -= r[i * n + e.col] * ac;
  }

  for (const Jump& jump : jumps_) {
    for (const Entry& x : jump.entries) {
      const Complex left = jump.rate * x.value;
      const Complex* row = r + x.col * n;
      Complex* dst = o + x.row * n;
      for (const Entry& y : jump.entries) dst[y.row] += left * row[y.col] * std::conj(y.value);
    }
  }
}

Matrix LindbladGenerator::operator()(const Matrix& rho) const {
  Matrix out(dim_, dim_);
  apply(rho, out);
  return out;
}

Matrix as_density(const Matrix& state_or_density) {
  if (state_or_density.cols() == 1) return outer(state_or_density, state_or_density);
  return state_or_density;
}

Matrix integrate(const Matrix& rho0, const Schedule& schedule, const DecoherenceParams& d, double step) {
  schedule.validate();
  if (!(step > 0.0)) throw ConfigError("integrate: step must be positive");
  if (step > schedule.shortest_duration() * (1.0 + 1e-12))
    throw ConfigError("integrate: step exceeds the shortest segment duration");
  if (rho0.rows() != schedule.dim()) throw ShapeError("integrate: rho0 and schedule differ in dimension");
  require_density(rho0, "integrate");

  const auto gens = compile(schedule, d);
  Rk4Workspace w(schedule.dim());
  Matrix rho = rho0;
  for (std::size_t k = 0; k < gens.size(); ++k) rk4_advance(rho, gens[k], schedule.segments[k].duration, step, w);
  check_trace(rho, "integrate");
  return rehermitize(rho);
}

double state_fidelity(const Matrix& rho, const Matrix& psi_target) {
  if (!rho.square()) throw ShapeError("state_fidelity: rho must be square");
  if (psi_target.cols() != 1) throw ShapeError("state_fidelity: target must be a column vector");
  Matrix psi = psi_target;
  if (psi.rows() == 2 && rho.rows() == 3) psi = embed_qubit_state(psi);
  if (psi.rows() != rho.rows()) throw ShapeError("state_fidelity: target and rho differ in dimension");
  return inner(psi, rho * psi).real();
}

std::array<Matrix, 6> cardinal_states() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Matrix::column({1.0, 0.0}),      Matrix::column({0.0, 1.0}),     Matrix::column({r, -r}),
          Matrix::column({r, r}),          Matrix::column({r, -kI * r}),   Matrix::column({r, kI * r})};
}

double avg_gate_fidelity(SchemeId scheme, const GateParams& g, const NoiseParams& n, const DecoherenceParams& d,
                         double step) {
  const auto segments = build_sequence(scheme, g);
  const Schedule schedule = make_schedule(segments, g, n);
  const Matrix ideal = target_gate(g);
  double sum = 0.0;
  for (const Matrix& psi : cardinal_states()) {
    const Matrix rho = integrate(outer(embed_qubit_state(psi), embed_qubit_state(psi)), schedule, d, step);
    sum += state_fidelity(rho, ideal * psi);
  }
  return sum / 6.0;
}

std::vector<TraceSample> population_trace(const Matrix& initial, const Schedule& schedule,
                                          const DecoherenceParams& d, std::size_t samples, const Matrix& target,
                                          double step) {
  if (samples < 2) throw ValidationError("population_trace: need at least 2 samples");
  schedule.validate();
  if (!(step > 0.0)) throw ConfigError("population_trace: step must be positive");
  if (step > schedule.shortest_duration() * (1.0 + 1e-12))
    throw ConfigError("population_trace: step exceeds the shortest segment duration");

  Matrix rho = as_density(initial);
  if (rho.rows() != schedule.dim()) throw ShapeError("population_trace: initial state and schedule differ in dimension");
  require_density(rho, "population_trace");

  const auto gens = compile(schedule, d);
  Rk4Workspace w(schedule.dim());
  const double total = schedule.total_duration();

  std::vector<TraceSample> out;
  out.reserve(samples);
  auto record = [&](double t) {
    TraceSample s;
    s.t = t;
    s.populations.resize(rho.rows());
    for (std::size_t i = 0; i < rho.rows(); ++i) s.populations[i] = rho(i, i).real();
    s.fidelity = state_fidelity(rho, target);
    s.trace = rho.trace().real();
    check_trace(rho, "population_trace");
    out.push_back(std::move(s));
  };

  std::vector<double> ends;
  double acc = 0.0;
  for (const auto& s : schedule.segments) ends.push_back(acc += s.duration);
  ends.back() = total;

  // Pieces shorter than this are rounding residue at segment boundaries.
  const double slack = 1e-12 * std::max(1.0, total);
  std::size_t seg = 0;
  double now = 0.0;
  record(0.0);
  for (std::size_t k = 1; k < samples; ++k) {
    const double t_k = k + 1 == samples ? total : total * static_cast<double>(k) / static_cast<double>(samples - 1);
    while (now < t_k - slack) {
      const double until = std::min(t_k, ends[seg]);
      rk4_advance(rho, gens[seg], until - now, step, w);
      now = until;
      if (now >= ends[seg] - slack && seg + 1 < gens.size()) ++seg;
    }
    if (k + 1 == samples) rho = rehermitize(rho);
    record(t_k);
  }
  return out;
}

}  // namespace nhqc
