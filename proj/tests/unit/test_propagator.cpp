#include <gtest/gtest.h>

#include "nhqc/errors.hpp"
#include "nhqc/propagator.hpp"
#include "oracles.hpp"

using namespace nhqc;

namespace {

std::vector<double> epsilon_grid() {
  std::vector<double> out;
  for (int i = -5; i <= 5; ++i) out.push_back(0.02 * i);
  return out;
}

}  // namespace

TEST(Propagator, HamiltonianMatchesReference) {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const GateParams g{rng.uniform(0, kPi), rng.uniform(0, 2 * kPi), 0.0};
    const double phi0 = rng.uniform(-4, 4), eps = rng.uniform(-0.2, 0.2), delta = rng.uniform(-0.2, 0.2);
    const Matrix h = hamiltonian_3level(g, phi0, 1.0, {eps, delta});
    EXPECT_TRUE(is_hermitian(h));
    EXPECT_LT(max_abs_diff(h, oracle::hamiltonian(g.theta, g.phi, phi0, eps, delta)), 1e-15);
  }
}

TEST(Propagator, PropagationMatchesTaylorOracle) {
  oracle::Rng rng(32);
  for (auto s : kAllSchemes) {
    for (int trial = 0; trial < 4; ++trial) {
      const GateParams g{rng.uniform(0, kPi), rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)};
      const NoiseParams n{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
      const Matrix u = evolve_sequence(build_sequence(s, g), g, n);
      const Matrix ref = oracle::propagate(s, g.theta, g.phi, g.gamma_g, n.epsilon, n.delta);
      EXPECT_LT(max_abs_diff(u, ref), 1e-11) << scheme_name(s);
    }
  }
}

TEST(Propagator, ClosedFormMatchesPropagation) {
  for (auto s : kAllSchemes)
    for (double gamma : {kPi / 4, kPi / 2, 3 * kPi / 4, kPi})
      for (double eps : epsilon_grid()) {
        const GateParams g{kPi / 2, 0.0, gamma};
        const double exact = scheme_fidelity(s, gamma, eps, FidelityMode::exact);
        EXPECT_NEAR(exact, propagated_gate_fidelity(s, g, {eps, 0.0}), 1e-9) << scheme_name(s) << " " << eps;
        EXPECT_NEAR(exact, oracle::scheme_fidelity(s, g.theta, g.phi, gamma, eps), 1e-9);
      }
}

TEST(Propagator, ErrorAmplitudeIsBrightBlockElement) {
  oracle::Rng rng(33);
  for (auto s : kAllSchemes)
    for (int trial = 0; trial < 5; ++trial) {
      const GateParams g{rng.uniform(0, kPi), rng.uniform(0, 2 * kPi), rng.uniform(0.1, 2 * kPi)};
      const double eps = rng.uniform(-0.1, 0.1);
      const auto block = dressed_projection(evolve_sequence(build_sequence(s, g), g, {eps, 0.0}), g);
      EXPECT_LT(std::abs(block.bb - dressed_error_amplitude(s, g.gamma_g, eps)), 1e-12) << scheme_name(s);
      EXPECT_LT(std::abs(block.dd - 1.0), 1e-12);
      EXPECT_LT(std::abs(block.bd), 1e-12);
      EXPECT_LT(std::abs(block.db), 1e-12);
    }
}

TEST(Propagator, PerfectControlGivesTargetGate) {
  oracle::Rng rng(34);
  for (auto s : kAllSchemes)
    for (int trial = 0; trial < 5; ++trial) {
      const GateParams g{rng.uniform(0, kPi), rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)};
      const Matrix u = evolve_sequence(build_sequence(s, g), g, {});
      EXPECT_LT(max_abs_diff(computational_block(u), target_gate(g)), 1e-12) << scheme_name(s);
      EXPECT_NEAR(std::abs(u(kLevelE, kLevelE)), 1.0, 1e-12);
    }
}

TEST(Propagator, UnitaryUnderAnyNoise) {
  oracle::Rng rng(35);
  for (auto s : kAllSchemes)
    for (int trial = 0; trial < 10; ++trial) {
      const GateParams g{rng.uniform(0, kPi), rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)};
      const NoiseParams n{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
      EXPECT_TRUE(is_unitary(evolve_sequence(build_sequence(s, g), g, n)));
    }
}

TEST(Propagator, DarkStateIsUntouched) {
  oracle::Rng rng(36);
  for (auto s : kAllSchemes)
    for (int trial = 0; trial < 10; ++trial) {
      const GateParams g{rng.uniform(0, kPi), rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)};
      const NoiseParams n{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
      const Matrix dark = embed_qubit_state(bright_dark_basis(g).dark);
      const Matrix out = evolve_sequence(build_sequence(s, g), g, n) * dark;
      EXPECT_LT(max_abs_diff(out, dark), 1e-12);
    }
}

TEST(Propagator, PerfectControlAtZeroError) {
  for (auto s : kAllSchemes) {
    EXPECT_NEAR(scheme_fidelity(s, kPi / 2, 0.0, FidelityMode::exact), 1.0, 1e-15);
    EXPECT_NEAR(scheme_fidelity(s, kPi / 2, 0.0, FidelityMode::series), 1.0, 1e-15);
  }
}

TEST(Propagator, NhqcReferenceValue) {
  // Frozen from the Taylor-oracle propagation.
  const double ref = oracle::scheme_fidelity(SchemeId::nhqc, kPi / 2, 0.0, kPi / 2, 0.1);
  EXPECT_NEAR(ref, 0.987840, 5e-7);
  EXPECT_NEAR(scheme_fidelity(SchemeId::nhqc, kPi / 2, 0.1, FidelityMode::exact), ref, 1e-12);
}

TEST(Propagator, SeriesTracksExactAtSmallError) {
  for (auto s : kAllSchemes)
    for (double gamma : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
      const double eps = 1e-2;
      const double exact = 1.0 - scheme_fidelity(s, gamma, eps, FidelityMode::exact);
      const double series = 1.0 - scheme_fidelity(s, gamma, eps, FidelityMode::series);
      EXPECT_NEAR(series / exact, 1.0, 0.02) << scheme_name(s) << " " << gamma;
    }
}

TEST(Propagator, ErrorOrders) {
  EXPECT_EQ(error_order(SchemeId::nhqc), 2);
  EXPECT_EQ(error_order(SchemeId::tlnhqc), 2);
  EXPECT_EQ(error_order(SchemeId::opnhqc), 4);
  EXPECT_EQ(error_order(SchemeId::dcnhqc), 4);
}

TEST(Propagator, OrderingAtLargeError) {
  const double op = scheme_fidelity(SchemeId::opnhqc, kPi / 2, 0.1, FidelityMode::exact);
  const double dc = scheme_fidelity(SchemeId::dcnhqc, kPi / 2, 0.1, FidelityMode::exact);
  const double tl = scheme_fidelity(SchemeId::tlnhqc, kPi / 2, 0.1, FidelityMode::exact);
  const double nh = scheme_fidelity(SchemeId::nhqc, kPi / 2, 0.1, FidelityMode::exact);
  EXPECT_GE(op, dc);
  EXPECT_GE(dc, tl);
  EXPECT_GE(tl, nh);
}

TEST(Propagator, FidelityEvenInEpsilonSign) {
  for (auto s : kAllSchemes)
    for (double e : {0.01, 0.05, 0.1})
      EXPECT_NEAR(scheme_fidelity(s, kPi / 2, e, FidelityMode::exact),
                  scheme_fidelity(s, kPi / 2, -e, FidelityMode::exact), 1e-14);
}

TEST(Propagator, BasePhaseDoesNotChangeFidelity) {
  for (auto s : kAllSchemes)
    EXPECT_NEAR(propagated_gate_fidelity(s, GateParams::x_half(), {0.07, 0.0}, 1.3),
                propagated_gate_fidelity(s, GateParams::x_half(), {0.07, 0.0}, 0.0), 1e-12);
}

TEST(Propagator, NoiseValidation) {
  EXPECT_THROW((NoiseParams{0.6, 0.0}.validate()), ValidationError);
  EXPECT_THROW((NoiseParams{0.0, -0.6}.validate()), ValidationError);
  EXPECT_THROW(evolve_sequence(build_sequence(SchemeId::nhqc, GateParams::x_half()), GateParams::x_half(), {0.7, 0}),
               ValidationError);
}

TEST(Propagator, BlochTrajectoryLoop) {
  const auto g = GateParams::x_half();
  const auto segs = build_sequence(SchemeId::nhqc, g);
  const auto pts = bloch_trajectory(segs, g, {}, 101);
  ASSERT_EQ(pts.size(), 101u);
  EXPECT_DOUBLE_EQ(pts.front().t, 0.0);
  EXPECT_NEAR(pts.back().t, kPi, 1e-14);
  EXPECT_NEAR(pts.front().z, 1.0, 1e-15);
  EXPECT_NEAR(pts[50].z, -1.0, 1e-12);  // |e> at the midpoint
  EXPECT_NEAR(pts.back().z, 1.0, 1e-12);
  for (const auto& p : pts) EXPECT_NEAR(p.x * p.x + p.y * p.y + p.z * p.z, 1.0, 1e-12);
  EXPECT_THROW(bloch_trajectory(segs, g, {}, 1), ValidationError);
}

TEST(Propagator, BlochTrajectoryOverRotationMissesPole) {
  const auto g = GateParams::x_half();
  const auto pts = bloch_trajectory(build_sequence(SchemeId::nhqc, g), g, {0.1, 0.0}, 11);
  EXPECT_LT(pts.back().z, 1.0 - 1e-3);
}
