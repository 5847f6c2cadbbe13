#include <benchmark/benchmark.h>

#include "stalab/catalog.hpp"
#include "stalab/response.hpp"

namespace {

using namespace stalab;

void BM_TransferPoint(benchmark::State& state) {
  const TransferEvaluator ev(build_butterfly(PhysicalParams::rubidium87(1), milliseconds(100)));
  double w = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.at(w));
    w += 0.1;
  }
}
BENCHMARK(BM_TransferPoint);

void BM_ResponseCurve(benchmark::State& state) {
  const Time T = milliseconds(100);
  CabOptions cab;
  cab.n_b = 8;
  cab.tau_b = T / 16;
  const auto seq = build_cab(PhysicalParams::rubidium87(1), T, cab);
  for (auto _ : state)
    benchmark::DoNotOptimize(response_curve(seq, 1.0, 1e4, static_cast<int>(state.range(0)), GridScale::Log));
}
BENCHMARK(BM_ResponseCurve)->Arg(200)->Arg(10000);

}  // namespace
