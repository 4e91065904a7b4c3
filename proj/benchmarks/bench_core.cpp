#include <benchmark/benchmark.h>

#include "nhqc/dfs.hpp"
#include "nhqc/lindblad.hpp"
#include "nhqc/propagator.hpp"

using namespace nhqc;

namespace {

void BM_Expm3(benchmark::State& state) {
  const Matrix h = hamiltonian_3level(GateParams::x_half(), 0.3, 1.0, {0.05, 0.02});
  for (auto _ : state) benchmark::DoNotOptimize(expm_generator(h, kPi / 2));
}
BENCHMARK(BM_Expm3);

void BM_EvolveSequence(benchmark::State& state) {
  const auto g = GateParams::x_half();
  const auto segs = build_sequence(SchemeId::dcnhqc, g);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_sequence(segs, g, {0.05, 0.0}));
}
BENCHMARK(BM_EvolveSequence);

void BM_GeneratorApply(benchmark::State& state) {
  const std::size_t qubits = static_cast<std::size_t>(state.range(0));
  const std::size_t dim = std::size_t{1} << qubits;
  Matrix h = qubits == 3 ? physical_hamiltonian_1q(0.7, 0.7, 0.1, 0.4, {})
                         : physical_hamiltonian_2q(0.7, 0.7, 0.1, 0.4, {});
  std::vector<Matrix> ops;
  for (auto& o : qubit_collapse_ops(qubits, true)) ops.push_back(o.op);
  const LindbladGenerator gen(h, ops, std::vector<double>(ops.size(), 2e-4));
  Matrix rho = Matrix::zeros(dim, dim);
  rho(DfsSingleBasis::indices[0], DfsSingleBasis::indices[0]) = 1.0;
  Matrix out(dim, dim);
  for (auto _ : state) {
    gen.apply(rho, out);
    benchmark::DoNotOptimize(out.data().data());
  }
}
BENCHMARK(BM_GeneratorApply)->Arg(3)->Arg(6);

void BM_AvgGateFidelity(benchmark::State& state) {
  const auto d = DecoherenceParams::uniform(2e-4);
  for (auto _ : state)
    benchmark::DoNotOptimize(avg_gate_fidelity(SchemeId::opnhqc, GateParams::x_half(), {0.05, 0.0}, d));
}
BENCHMARK(BM_AvgGateFidelity)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
