#include <random>

#include <benchmark/benchmark.h>

#include "stalab/catalog.hpp"
#include "stalab/generators.hpp"
#include "stalab/oracle.hpp"

namespace {

using namespace stalab;

void BM_ActionOracleMZ(benchmark::State& state) {
  const auto seq = build_mach_zehnder(PhysicalParams::rubidium87(1), milliseconds(100), {Vec3(0, 0, 9.8)});
  for (auto _ : state) benchmark::DoNotOptimize(action_phase(seq));
}
BENCHMARK(BM_ActionOracleMZ);

void BM_ActionOracleRandom(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto seq = random_closed_sequence(rng);
  for (auto _ : state) benchmark::DoNotOptimize(action_phase(seq));
}
BENCHMARK(BM_ActionOracleRandom);

void BM_QuadratureTransfer(benchmark::State& state) {
  const auto seq = build_butterfly(PhysicalParams::rubidium87(1), milliseconds(100));
  for (auto _ : state) benchmark::DoNotOptimize(quadrature_transfer(seq, 300.0));
}
BENCHMARK(BM_QuadratureTransfer);

}  // namespace
