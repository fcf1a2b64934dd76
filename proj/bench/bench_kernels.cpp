// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "vpstealth/kernels.hpp"
#include "vpstealth/rng.hpp"
#include "vpstealth/simulator.hpp"

using namespace vpstealth;

namespace {

std::vector<std::uint32_t> words(std::size_t count, unsigned n) {
  Rng rng(1);
  std::vector<std::uint32_t> out(count);
  for (auto& w : out) w = static_cast<std::uint32_t>(rng.uniform_index(std::uint64_t{1} << n));
  return out;
}

template <bool Parallel>
void BM_mixture_output(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto code = words(64, n);
  for (auto _ : state) {
    auto p = Parallel ? kernels::mixture_output(code, n, 0.1) : kernels::serial::mixture_output(code, n, 0.1);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n) * 64);
}

template <bool Parallel>
void BM_divergence(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto p = kernels::mixture_output(words(16, n), n, 0.1);
  const auto q = kernels::product_output(0.1, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::divergence(p, q) : kernels::serial::divergence(p, q));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

template <bool Parallel>
void BM_decode_error_mass(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto code = words(8, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::decode_error_mass(code, n, 0.1)
                                      : kernels::serial::decode_error_mass(code, n, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n) * 8);
}

template <Execution Exec>
void BM_reliability_trials(benchmark::State& state) {
  TrialConfig cfg{StealthScenario{VpProfile(1.0, 0.5), std::nullopt, BscChannel(0.1), BscChannel(0.1),
                                  StealthBudget{}}};
  cfg.n = 4096;
  cfg.m = 64;
  cfg.trials = 256;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_reliability_trials(cfg, Exec).error->events);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}

}  // namespace

BENCHMARK(BM_mixture_output<false>)->Name("mixture_output/serial")->Arg(12)->Arg(16);
BENCHMARK(BM_mixture_output<true>)->Name("mixture_output/omp")->Arg(12)->Arg(16);
BENCHMARK(BM_divergence<false>)->Name("divergence/serial")->Arg(16)->Arg(20);
BENCHMARK(BM_divergence<true>)->Name("divergence/omp")->Arg(16)->Arg(20);
BENCHMARK(BM_decode_error_mass<false>)->Name("decode_error_mass/serial")->Arg(12)->Arg(16);
BENCHMARK(BM_decode_error_mass<true>)->Name("decode_error_mass/omp")->Arg(12)->Arg(16);
BENCHMARK(BM_reliability_trials<Execution::Serial>)->Name("reliability_trials/serial");
BENCHMARK(BM_reliability_trials<Execution::Parallel>)->Name("reliability_trials/omp");

BENCHMARK_MAIN();
