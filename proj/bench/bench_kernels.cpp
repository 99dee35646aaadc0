#include <benchmark/benchmark.h>

#include "pairemit/oracle.hpp"
#include "pairemit/scenario.hpp"
#include "pairemit/wavepacket.hpp"

using namespace pairemit;

namespace {

void BM_ScanSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_serial(0.0, 0.99, n));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan(0.0, 0.99, n));
}

void BM_CampaignSerial(benchmark::State& state) {
  const oracle::CampaignConfig cfg{.seeds = static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(oracle::run_campaign_serial(cfg));
}

void BM_CampaignParallel(benchmark::State& state) {
  const oracle::CampaignConfig cfg{.seeds = static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(oracle::run_campaign(cfg));
}

struct QuadratureCase {
  GaussianPacket a{{-0.4, 0.3, 0.1}, {0.5, -0.2, 0.3}, 0.8, 0.3, 0.1};
  GaussianPacket b{{0.6, -0.2, 0.0}, {-0.3, 0.4, 0.1}, 0.8, -0.1, -0.4};
  GridSpec grid = auto_grid(a, b);
};

void BM_QuadratureSerial(benchmark::State& state) {
  const QuadratureCase c;
  for (auto _ : state) benchmark::DoNotOptimize(overlap_quadrature_serial(c.a, c.b, c.grid));
}

void BM_QuadratureParallel(benchmark::State& state) {
  const QuadratureCase c;
  for (auto _ : state) benchmark::DoNotOptimize(overlap_quadrature(c.a, c.b, c.grid));
}

void BM_OverlapClosedForm(benchmark::State& state) {
  const QuadratureCase c;
  for (auto _ : state) benchmark::DoNotOptimize(overlap(c.a, c.b));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignSerial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignParallel)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OverlapClosedForm);

BENCHMARK_MAIN();
