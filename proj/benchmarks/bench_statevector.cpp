#include <benchmark/benchmark.h>

#include "dqc/statevector.hpp"

using namespace dqc;

static void BM_hadamard_layer(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    StateVector s(n);
    for (auto _ : state) {
        for (QubitId q = 0; q < n; ++q) s.apply_h(q);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_hadamard_layer)->DenseRange(10, 20, 2)->Complexity(benchmark::oNLogN);

static void BM_cnot_chain(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    StateVector s(n);
    s.apply_h(0);
    for (auto _ : state) {
        for (QubitId q = 0; q + 1 < n; ++q) s.apply_cnot(q, q + 1);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_cnot_chain)->DenseRange(10, 20, 2);

// Branch-exhaustive teleportation: 2 measurements, 4 trajectories.
static void BM_exhaustive_teleport(benchmark::State& state) {
    Circuit c(3, 2);
    c.append(Gate::h(1));
    c.append(Gate::cnot(1, 2));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::h(0));
    c.append(Gate::measure(0, 0));
    c.append(Gate::measure(1, 1));
    c.append(Gate::if_x(1, 2));
    c.append(Gate::if_z(0, 2));
    std::mt19937_64 rng(1);
    const StateVector initial = random_product_state(3, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_exhaustive(c, initial));
    }
}
BENCHMARK(BM_exhaustive_teleport);

static void BM_sampled_run(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    Circuit c(n, n);
    for (QubitId q = 0; q < n; ++q) c.append(Gate::h(q));
    for (QubitId q = 0; q + 1 < n; ++q) c.append(Gate::cnot(q, q + 1));
    for (QubitId q = 0; q < n; ++q) c.append(Gate::measure(q, q));
    const StateVector initial(n);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sampled(c, initial, seed++));
    }
}
BENCHMARK(BM_sampled_run)->DenseRange(8, 16, 4);

BENCHMARK_MAIN();
