// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "simbeam/experiment.hpp"

namespace {

using namespace simbeam;

void BM_ComposeBeamformer(benchmark::State& state) {
  SimConfig c;
  c.N_x = c.N_y = static_cast<int>(state.range(0));
  const SimSystem sys = build_system(c);
  const PhaseState th = random_phases(c.L, c.N(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(compose_beamformer(th, sys.stack));
}
BENCHMARK(BM_ComposeBeamformer)->Arg(7)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_PropagateAntennaColumns(benchmark::State& state) {
  SimConfig c;
  c.N_x = c.N_y = static_cast<int>(state.range(0));
  const SimSystem sys = build_system(c);
  const PhaseState th = random_phases(c.L, c.N(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(th, sys.stack, sys.stack.W1()));
}
BENCHMARK(BM_PropagateAntennaColumns)->Arg(7)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_BuildSystem(benchmark::State& state) {
  SimConfig c;
  c.N_x = c.N_y = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_system(c));
}
BENCHMARK(BM_BuildSystem)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
