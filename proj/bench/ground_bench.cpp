// Serial and OpenMP grounding over generated knowledge bases.

#include <benchmark/benchmark.h>

#include "hmknf/bench.hpp"
#include "hmknf/transform.hpp"
#include "hmknf/wfs.hpp"

namespace {

hmknf::DoubledProgram program(std::size_t rules, std::size_t constants) {
    hmknf::BenchConfig c;
    c.n_rules = rules;
    c.n_constants = constants;
    return hmknf::compile(hmknf::generate_bench(c));
}

void ground(benchmark::State& state, bool parallel) {
    const hmknf::DoubledProgram p = program(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    hmknf::GroundOptions opts;
    opts.parallel = parallel;
    std::size_t rules = 0;
    for (auto _ : state) {
        hmknf::GroundProgram g = hmknf::ground(p, opts);
        rules = g.rule_count();
        benchmark::DoNotOptimize(rules);
    }
    state.counters["ground_rules"] = static_cast<double>(rules);
}

void BM_GroundSerial(benchmark::State& state) { ground(state, false); }
void BM_GroundParallel(benchmark::State& state) { ground(state, true); }

void BM_Afp(benchmark::State& state) {
    const hmknf::GroundProgram g =
        hmknf::ground(program(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1))));
    for (auto _ : state) benchmark::DoNotOptimize(hmknf::alternating_fixed_point(g));
}

#define SIZES ->Args({1000, 50})->Args({5000, 100})->Args({10000, 200})->Unit(benchmark::kMillisecond)

BENCHMARK(BM_GroundSerial) SIZES;
BENCHMARK(BM_GroundParallel) SIZES;
BENCHMARK(BM_Afp) SIZES;

}  // namespace

BENCHMARK_MAIN();
