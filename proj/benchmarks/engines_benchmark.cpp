#include <benchmark/benchmark.h>

#include "nwalign/bench.hpp"
#include "nwalign/center_star.hpp"
#include "nwalign/distributor.hpp"
#include "nwalign/serial.hpp"
#include "nwalign/wavefront.hpp"

namespace {

nwalign::AlignmentProblem square_problem(std::size_t side) {
  auto [a, b] = nwalign::synthetic_pair(side, side, nwalign::kDefaultSeed);
  return {std::move(a), std::move(b), nwalign::ScoringScheme{}};
}

void BM_Serial(benchmark::State& state) {
  const auto problem = square_problem(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nwalign::align_serial(problem));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Serial)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

void BM_Wavefront(benchmark::State& state) {
  const auto problem = square_problem(static_cast<std::size_t>(state.range(0)));
  const nwalign::WavefrontConfig cfg{static_cast<std::size_t>(state.range(1)), static_cast<std::size_t>(state.range(2))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(nwalign::align_wavefront(problem, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Wavefront)
    ->ArgsProduct({{512, 2048}, {1, 2, 4}, {16, 64, 256}})
    ->ArgNames({"side", "workers", "grain"})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_ScheduleAntidiagonals(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nwalign::schedule_antidiagonals(side, side, 64));
  }
}
BENCHMARK(BM_ScheduleAntidiagonals)->Arg(1000)->Arg(4000);

void BM_ScatterGather(benchmark::State& state) {
  nwalign::MsaJob job;
  for (std::size_t k = 0; k < 8; ++k) {
    job.sequences.push_back(nwalign::synthetic_pair(200 + k, 1, k).first);
  }
  nwalign::DistributorOptions dist;
  dist.ranks = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nwalign::scatter_gather(job, dist, {}));
  }
}
BENCHMARK(BM_ScatterGather)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
