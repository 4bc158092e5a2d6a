#include <benchmark/benchmark.h>

#include <random>

#include "dqc/router.hpp"

using namespace dqc;

namespace {

Circuit random_circuit(const CouplingMap& coupling, int n_gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Circuit c(coupling.n_qubits);
    for (int i = 0; i < n_gates; ++i) {
        const auto a = static_cast<QubitId>(rng() % coupling.n_qubits);
        auto b = static_cast<QubitId>(rng() % coupling.n_qubits);
        while (b == a) b = static_cast<QubitId>(rng() % coupling.n_qubits);
        if (rng() % 3 == 0) {
            c.append(Gate::h(a));
        } else {
            c.append(Gate::cnot(a, b));
        }
    }
    return c;
}

}  // namespace

static void BM_route_ibmqx3(benchmark::State& state) {
    const CouplingMap coupling = ibmqx3_coupling();
    const Circuit c = random_circuit(coupling, static_cast<int>(state.range(0)), 42);
    const RoutingMode mode = state.range(1) ? RoutingMode::Permute : RoutingMode::Restore;
    std::size_t swaps = 0;
    for (auto _ : state) {
        const RouteResult r = route(c, coupling, Layout::identity(coupling.n_qubits), mode);
        swaps = r.inserted_swaps;
        benchmark::DoNotOptimize(r.circuit.size());
    }
    state.counters["swaps"] = static_cast<double>(swaps);
}
BENCHMARK(BM_route_ibmqx3)
    ->ArgsProduct({{30, 100, 300}, {0, 1}})
    ->ArgNames({"gates", "permute"});

static void BM_shortest_path_all_pairs(benchmark::State& state) {
    const CouplingMap coupling = ibmqx3_coupling();
    for (auto _ : state) {
        std::size_t total = 0;
        for (QubitId a = 0; a < coupling.n_qubits; ++a) {
            for (QubitId b = 0; b < coupling.n_qubits; ++b) {
                if (a != b) total += shortest_path(coupling, a, b).size();
            }
        }
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_shortest_path_all_pairs);

BENCHMARK_MAIN();
