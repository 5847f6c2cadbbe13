#include <benchmark/benchmark.h>

#include "stalab/catalog.hpp"
#include "stalab/phase.hpp"

namespace {

using namespace stalab;

void BM_TotalPhaseMZ(benchmark::State& state) {
  const auto seq = build_mach_zehnder(PhysicalParams::rubidium87(1), milliseconds(100), {Vec3(0, 0, 9.8)});
  for (auto _ : state) benchmark::DoNotOptimize(total_phase(seq).total);
}
BENCHMARK(BM_TotalPhaseMZ);

void BM_TotalPhaseCAB(benchmark::State& state) {
  const Time T = milliseconds(100);
  CabOptions cab;
  cab.n_b = static_cast<double>(state.range(0));
  cab.tau_b = T / (2 * state.range(0));
  cab.kick_train = true;
  const auto seq = build_cab(PhysicalParams::rubidium87(1), T, cab, {Vec3(0, 0, 9.8)});
  for (auto _ : state) benchmark::DoNotOptimize(total_phase(seq).total);
}
BENCHMARK(BM_TotalPhaseCAB)->Arg(1)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
