#include <gtest/gtest.h>

#include "nhqc/errors.hpp"
#include "nhqc/lindblad.hpp"
#include "oracles.hpp"

using namespace nhqc;

namespace {

Schedule constant(const Matrix& h, double duration) { return Schedule{{ScheduleSegment{h, duration}}}; }

std::vector<Matrix> ops_of(const std::vector<LabeledOperator>& l) {
  std::vector<Matrix> out;
  for (const auto& x : l) out.push_back(x.op);
  return out;
}

}  // namespace

TEST(Lindblad, ThreeLevelOperatorSet) {
  const auto ops = decoherence_ops_3level();
  ASSERT_EQ(ops.size(), 4u);
  EXPECT_EQ(ops[0].op(2, 0), Complex(1.0));
  EXPECT_EQ(ops[1].op(2, 1), Complex(1.0));
  EXPECT_EQ(ops[2].op(0, 0), Complex(0.5));
  EXPECT_EQ(ops[2].op(2, 2), Complex(-0.5));
  EXPECT_EQ(ops[3].op(1, 1), Complex(0.5));
  EXPECT_EQ(ops[3].op(2, 2), Complex(-0.5));
}

TEST(Lindblad, QubitOperatorSetSizes) {
  EXPECT_EQ(qubit_collapse_ops(3, true).size(), 6u);
  EXPECT_EQ(qubit_collapse_ops(3, false).size(), 3u);
  EXPECT_EQ(collapse_operators(OperatorSet::qubit_decay_dephasing, 64).size(), 12u);
  EXPECT_THROW(collapse_operators(OperatorSet::lambda_three_level, 8), ShapeError);
  EXPECT_THROW(collapse_operators(OperatorSet::qubit_decay, 6), ShapeError);
  // S- on the most significant qubit of two: |0x><1x|.
  const Matrix s = qubit_collapse_ops(2, false)[0].op;
  EXPECT_EQ(s(0b00, 0b10), Complex(1.0));
  EXPECT_EQ(s(0b01, 0b11), Complex(1.0));
}

TEST(Lindblad, DenseRhsMatchesOracle) {
  oracle::Rng rng(41);
  for (std::size_t n : {2u, 3u, 4u}) {
    const Matrix rho = rng.density(n), h = rng.hermitian(n);
    std::vector<Matrix> ops{rng.matrix(n, n), rng.matrix(n, n)};
    std::vector<double> rates{rng.uniform(0, 1), rng.uniform(0, 1)};
    EXPECT_LT(max_abs_diff(lindblad_rhs(rho, h, ops, rates), oracle::lindblad_rhs(rho, h, ops, rates)), 1e-13);
  }
}

TEST(Lindblad, GeneratorMatchesOracle) {
  oracle::Rng rng(42);
  for (std::size_t n : {3u, 8u}) {
    const Matrix rho = rng.density(n), h = rng.hermitian(n);
    const auto ops = n == 3 ? ops_of(decoherence_ops_3level()) : ops_of(qubit_collapse_ops(3, true));
    std::vector<double> rates;
    for (std::size_t j = 0; j < ops.size(); ++j) rates.push_back(rng.uniform(0, 0.5));
    const LindbladGenerator gen(h, ops, rates);
    EXPECT_LT(max_abs_diff(gen(rho), oracle::lindblad_rhs(rho, h, ops, rates)), 1e-13) << n;
  }
}

TEST(Lindblad, GeneratorIsTraceless) {
  oracle::Rng rng(43);
  const auto ops = ops_of(decoherence_ops_3level());
  const LindbladGenerator gen(rng.hermitian(3), ops, std::vector<double>(4, 0.3));
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix d = gen(rng.density(3));
    EXPECT_LT(std::abs(d.trace()), 1e-14);
    EXPECT_TRUE(is_hermitian(d, 1e-14));
  }
}

TEST(Lindblad, AmplitudeDecayAnalytic) {
  // S- = |0><1| at rate Γ: P1(t) = e^{-Γt}, coherence e^{-Γt/2}.
  const double gamma = 0.3, t = 2.0;
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix rho0 = as_density(Matrix::column({r, r}));
  const Matrix rho =
      integrate(rho0, constant(Matrix::zeros(2, 2), t), DecoherenceParams::uniform(gamma, OperatorSet::qubit_decay));
  EXPECT_NEAR(rho(1, 1).real(), 0.5 * std::exp(-gamma * t), 1e-12);
  EXPECT_NEAR(rho(0, 0).real(), 1.0 - 0.5 * std::exp(-gamma * t), 1e-12);
  EXPECT_NEAR(std::abs(rho(0, 1)), 0.5 * std::exp(-gamma * t / 2), 1e-12);
}

TEST(Lindblad, DephasingAnalytic) {
  // (|1><1| - |0><0|)/2 at rate Γ: coherence e^{-Γt/2}, populations fixed.
  const double gamma = 0.4, t = 1.5;
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix rho0 = as_density(Matrix::column({r, r}));
  DecoherenceParams d{{0.0, gamma}, OperatorSet::qubit_decay_dephasing};
  const Matrix rho = integrate(rho0, constant(Matrix::zeros(2, 2), t), d);
  EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-13);
  EXPECT_NEAR(std::abs(rho(0, 1)), 0.5 * std::exp(-gamma * t / 2), 1e-12);
}

TEST(Lindblad, ClosedSystemMatchesUnitary) {
  for (auto s : kAllSchemes) {
    const auto g = GateParams::x_half();
    const NoiseParams n{0.05, 0.03};
    const auto segs = build_sequence(s, g);
    const Matrix u = oracle::propagate(s, g.theta, g.phi, g.gamma_g, n.epsilon, n.delta);
    oracle::Rng rng(44);
    const Matrix rho0 = rng.density(3);
    const Matrix expected = oracle::naive_matmul(oracle::naive_matmul(u, rho0), oracle::dagger(u));
    const Matrix rho = integrate(rho0, make_schedule(segs, g, n), DecoherenceParams::uniform(0.0));
    EXPECT_LT(max_abs_diff(rho, expected), 1e-9) << scheme_name(s);
  }
}

TEST(Lindblad, TracePreservedAndDensityKept) {
  const auto g = GateParams::x_half();
  oracle::Rng rng(45);
  for (auto s : kAllSchemes) {
    const Matrix rho0 = rng.density(3);
    const Matrix rho = integrate(rho0, make_schedule(build_sequence(s, g), g, {0.1, 0.0}),
                                 DecoherenceParams::uniform(5e-3));
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
    EXPECT_TRUE(is_density(rho));
  }
}

TEST(Lindblad, StepHalvingIsStable) {
  const auto g = GateParams::x_half();
  const auto sched = make_schedule(build_sequence(SchemeId::opnhqc, g), g, {0.05, 0.0});
  const Matrix rho0 = as_density(Matrix::column({1.0, 0.0, 0.0}));
  const auto d = DecoherenceParams::uniform(2e-4);
  const Matrix a = integrate(rho0, sched, d, 1e-2);
  const Matrix b = integrate(rho0, sched, d, 5e-3);
  const Matrix c = integrate(rho0, sched, d, 2.5e-3);
  EXPECT_LT(max_abs_diff(b, c), 1e-9);
  // Fourth order: halving the step shrinks the change roughly sixteenfold.
  EXPECT_GT(max_abs_diff(a, b) / max_abs_diff(b, c), 10.0);
}

TEST(Lindblad, IntegrateErrorPaths) {
  const auto sched = constant(pauli_x(), 0.5);
  const Matrix rho0 = as_density(Matrix::column({1.0, 0.0}));
  EXPECT_THROW(integrate(rho0, sched, {}, 0.6), ConfigError);
  EXPECT_THROW(integrate(rho0, sched, {}, 0.0), ConfigError);
  EXPECT_THROW(integrate(Matrix{{1.0, 0.0}, {0.0, 1.0}}, sched, {}), ValidationError);
  EXPECT_THROW(integrate(as_density(Matrix::column({1.0, 0.0, 0.0})), sched, {}), ShapeError);
  EXPECT_THROW(integrate(rho0, Schedule{}, {}), ConfigError);
}

TEST(Lindblad, DecoherenceParamsValidation) {
  EXPECT_THROW((DecoherenceParams{{-1e-4}, OperatorSet::lambda_three_level}.validate()), ValidationError);
  EXPECT_THROW((DecoherenceParams{{1e-4, 1e-4}, OperatorSet::lambda_three_level}.resolve(4)), ConfigError);
  EXPECT_EQ(DecoherenceParams::uniform(2e-4).resolve(4), std::vector<double>(4, 2e-4));
  EXPECT_TRUE(DecoherenceParams::uniform(0.0).is_zero());
  EXPECT_EQ(parse_operator_set("decay"), OperatorSet::qubit_decay);
  EXPECT_EQ(parse_operator_set(operator_set_name(OperatorSet::qubit_decay_dephasing)),
            OperatorSet::qubit_decay_dephasing);
  EXPECT_THROW(parse_operator_set("amplitude"), ConfigError);
}

TEST(Lindblad, CardinalStates) {
  const auto states = cardinal_states();
  for (const auto& s : states) EXPECT_NEAR(norm(s), 1.0, 1e-15);
  EXPECT_LT(std::abs(inner(states[4], states[5])), 1e-15);
  EXPECT_LT(std::abs(inner(states[2], states[3])), 1e-15);
}

TEST(Lindblad, AverageFidelityPerfectWithoutNoise) {
  for (auto s : kAllSchemes)
    EXPECT_NEAR(avg_gate_fidelity(s, GateParams::x_half(), {}, DecoherenceParams::uniform(0.0)), 1.0, 1e-9);
}

TEST(Lindblad, AverageFidelityDropsWithRate) {
  const auto g = GateParams::x_half();
  const double f1 = avg_gate_fidelity(SchemeId::opnhqc, g, {}, DecoherenceParams::uniform(1e-4));
  const double f2 = avg_gate_fidelity(SchemeId::opnhqc, g, {}, DecoherenceParams::uniform(3e-4));
  EXPECT_LT(f1, 1.0);
  EXPECT_LT(f2, f1);
}

TEST(Lindblad, PopulationTraceSampling) {
  const auto g = GateParams::x_half();
  const auto sched = make_schedule(build_sequence(SchemeId::opnhqc, g), g, {});
  const Matrix psi0 = embed_qubit_state(Matrix::column({1.0, 0.0}));
  const Matrix target = embed_qubit_state(target_gate(g) * Matrix::column({1.0, 0.0}));
  const auto d = DecoherenceParams::uniform(2e-4);
  const auto samples = population_trace(psi0, sched, d, 41, target);
  ASSERT_EQ(samples.size(), 41u);
  EXPECT_DOUBLE_EQ(samples.front().t, 0.0);
  EXPECT_NEAR(samples.back().t, sched.total_duration(), 1e-12);
  for (std::size_t i = 1; i < samples.size(); ++i) EXPECT_GT(samples[i].t, samples[i - 1].t);
  for (const auto& s : samples) EXPECT_NEAR(s.trace, 1.0, kTraceTol);
  const Matrix rho = integrate(as_density(psi0), sched, d);
  EXPECT_NEAR(samples.back().fidelity, state_fidelity(rho, target), 1e-12);
  EXPECT_THROW(population_trace(psi0, sched, d, 1, target), ValidationError);
}

TEST(Lindblad, StateFidelityEmbedsQubitTarget) {
  const Matrix rho = as_density(Matrix::column({0.0, 1.0, 0.0}));
  EXPECT_NEAR(state_fidelity(rho, Matrix::column({0.0, 1.0})), 1.0, 1e-15);
  EXPECT_NEAR(state_fidelity(rho, Matrix::column({1.0, 0.0})), 0.0, 1e-15);
}
