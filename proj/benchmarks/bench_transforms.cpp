/* Copyright 2026 The spatialcv Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include <vector>

#include <benchmark/benchmark.h>

#include "spatialcv/entangle.hpp"
#include "spatialcv/gates.hpp"
#include "spatialcv/oracle.hpp"

namespace {

using namespace spatialcv;

SampledWaveFunction1D probe(std::size_t n) {
  const std::vector<Complex> c = {{1.0, 0.0}, {0.0, 0.5}, {0.3, 0.0}};
  return make_hermite_superposition(Grid1D::self_dual(n), c);
}

void BM_FastFrft(benchmark::State& state) {
  const auto psi = probe(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(frft(psi, 0.7));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FastFrft)->RangeMultiplier(2)->Range(256, 8192)->Complexity();

void BM_DenseFrft(benchmark::State& state) {
  const auto psi = probe(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::frft_dense(psi, 0.7));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseFrft)->RangeMultiplier(2)->Range(256, 1024)->Complexity();

void BM_Propagate(benchmark::State& state) {
  const auto psi = probe(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(psi, 0.5));
}
BENCHMARK(BM_Propagate)->RangeMultiplier(4)->Range(256, 16384);

void BM_DenseFresnel(benchmark::State& state) {
  const auto psi = probe(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::fresnel_dense(psi, 0.5));
}
BENCHMARK(BM_DenseFresnel)->Arg(256)->Arg(512);

void BM_PauliX(benchmark::State& state) {
  const auto psi = probe(1024);
  const auto method = state.range(0) == 0 ? PauliXMethod::direct : PauliXMethod::composed;
  for (auto _ : state) benchmark::DoNotOptimize(pauli_x(psi, 1.5, method));
}
BENCHMARK(BM_PauliX)->Arg(0)->Arg(1);

void BM_BuildLinearCluster(benchmark::State& state) {
  const Grid1D g = Grid1D::self_dual(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_cluster(linear_cluster_spec(0.1), g));
}
BENCHMARK(BM_BuildLinearCluster)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
