#include <benchmark/benchmark.h>

#include "qbs/attacks.hpp"

namespace {

void bm_honest_original(benchmark::State& state) {
  qbs::attacks::AttackParams params;
  params.n = static_cast<int>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    auto res = qbs::attacks::honest_trial(qbs::attacks::Scheme::original, params,
                                          1234, trial++);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(bm_honest_original)->Arg(4)->Arg(8)->Arg(12);

void bm_honest_improved(benchmark::State& state) {
  qbs::attacks::AttackParams params;
  params.n = static_cast<int>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    auto res = qbs::attacks::honest_trial(qbs::attacks::Scheme::improved, params,
                                          1234, trial++);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(bm_honest_improved)->Arg(4)->Arg(8);

void bm_bell_measure(benchmark::State& state) {
  qbs::Rng rng(7);
  for (auto _ : state) {
    qbs::Arena arena;
    auto ids = arena.add(qbs::prepare_epr().tensor(qbs::prepare_epr()));
    auto out = arena.bell_measure(ids[1], ids[2], rng);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_bell_measure);

}  // namespace

BENCHMARK_MAIN();
