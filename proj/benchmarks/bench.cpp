/*
 * This code is part of shadowlab.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <benchmark/benchmark.h>

#include "shadow/commutant.hpp"
#include "shadow/simulate.hpp"

using namespace shadow;

namespace {

void BM_RandomClifford(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(random_clifford(n, rng));
}
BENCHMARK(BM_RandomClifford)->Arg(2)->Arg(8)->Arg(16);

void BM_ConjugatePauli(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const CliffordElement c = random_clifford(n, rng);
  const PauliString p(n, 0b11, 0b01);
  for (auto _ : state) benchmark::DoNotOptimize(c.conjugate(p));
}
BENCHMARK(BM_ConjugatePauli)->Arg(2)->Arg(8)->Arg(16);

void BM_ApplySequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  const GateSequence seq = clifford_to_circuit(random_clifford(n, rng));
  const DenseState s = snk_state(n, 0, 0);
  for (auto _ : state) {
    Vector amps = s.amps;
    apply_sequence(amps, seq);
    benchmark::DoNotOptimize(amps);
  }
}
BENCHMARK(BM_ApplySequence)->Arg(4)->Arg(8)->Arg(12);

void BM_CharVector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseState s = w_state(n);
  for (auto _ : state) benchmark::DoNotOptimize(char_vector(s));
}
BENCHMARK(BM_CharVector)->Arg(2)->Arg(4)->Arg(6);

void BM_PauliFormTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::VectorXd v = Eigen::VectorXd::Random(1 << (2 * n));
  for (auto _ : state) benchmark::DoNotOptimize(pauli_form_transform(n, v));
}
BENCHMARK(BM_PauliFormTransform)->Arg(2)->Arg(4)->Arg(6);

void BM_XiTraces(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const Matrix O = random_traceless_hermitian(n, rng);
  const Matrix rho = random_density(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(xi_traces(O, rho));
}
BENCHMARK(BM_XiTraces)->Arg(2)->Arg(4)->Arg(5);

void BM_OmegaClosed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  EnsembleSpec spec;
  spec.kind = EnsembleSpec::Kind::Clifford;
  spec.n = n;
  for (auto _ : state) benchmark::DoNotOptimize(omega_closed(spec));
}
BENCHMARK(BM_OmegaClosed)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
