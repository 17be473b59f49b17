#include <benchmark/benchmark.h>

#include <random>

#include "cnc/capacity.hpp"
#include "cnc/decode.hpp"
#include "cnc/init.hpp"

using namespace cnc;

namespace {

NetworkSpec fig3() { return load_network(std::string(CNC_FIXTURE_DIR) + "/fig3.json"); }

void BM_SimulateStep(benchmark::State& state) {
    const auto spec = fig3();
    Simulator sim(build_state_space(spec));
    const std::vector<uint16_t> u{12, 34, 56};
    for (auto _ : state) benchmark::DoNotOptimize(sim.step_values(u));
}
BENCHMARK(BM_SimulateStep);

void BM_InitWithReset(benchmark::State& state) {
    const auto spec = fig3();
    for (auto _ : state) benchmark::DoNotOptimize(initialize_with_reset(spec));
}
BENCHMARK(BM_InitWithReset);

void BM_InitWithoutReset(benchmark::State& state) {
    const auto spec = fig3();
    const std::vector<uint16_t> x0{50, 64, 157, 121, 90, 212, 149, 140};
    for (auto _ : state) benchmark::DoNotOptimize(initialize_without_reset(spec, x0));
}
BENCHMARK(BM_InitWithoutReset);

void BM_BuildPlan(benchmark::State& state) {
    const auto spec = fig3();
    auto eq = initialize_with_reset(spec).equations[0];
    const DifferenceEquation reduced{eq.sink, eq.P, eq.G.select_cols({0, 2}), eq.N, 1};
    for (auto _ : state) benchmark::DoNotOptimize(build_plan(reduced));
}
BENCHMARK(BM_BuildPlan);

void BM_DecodeStream(benchmark::State& state) {
    const auto spec = fig3();
    const auto ss = build_state_space(spec);
    auto eq = initialize_with_reset(spec).equations[0];
    const DifferenceEquation reduced{eq.sink, eq.P, eq.G.select_cols({0, 2}), eq.N, 1};
    const auto plan = build_plan(reduced);

    Simulator sim(ss);
    SymbolSequence y(spec.ctx(), 2, 0);
    std::mt19937_64 g(7);
    for (int n = 0; n < 256; ++n) {
        const uint16_t u1 = static_cast<uint16_t>(g() & 0xFF);
        const uint16_t u2 = static_cast<uint16_t>(g() & 0xFF);
        y.append(sim.step_values({u1, 0, u2})[0]);
    }
    for (auto _ : state) benchmark::DoNotOptimize(decode_stream(plan, y, 255));
}
BENCHMARK(BM_DecodeStream);

void BM_RateRegion(benchmark::State& state) {
    const auto spec = fig3();
    const auto eq = initialize_with_reset(spec).equations[0];
    const auto blocks = split_by_source(eq.G, {2, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_region({{"d", blocks}}, {"s1", "s2"}, {2, 1}));
}
BENCHMARK(BM_RateRegion);

}  // namespace

BENCHMARK_MAIN();
