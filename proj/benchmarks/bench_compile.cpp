#include <benchmark/benchmark.h>

#include "dqc/compiler.hpp"

using namespace dqc;

namespace {

// Remote CNOT across the linked ibmqx2 pair.
Circuit remote_cnot() {
    Circuit c(5);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 4));
    return c;
}

CompileOptions pinned_options() {
    CompileOptions opt;
    opt.pins = {{0, "A"}, {4, "B"}};
    return opt;
}

}  // namespace

static void BM_compile_remote_cnot(benchmark::State& state) {
    const Circuit c = remote_cnot();
    const NetworkTopology net = preset_network("2x-ibmqx2-linked");
    const CompileOptions opt = pinned_options();
    for (auto _ : state) {
        benchmark::DoNotOptimize(compile(c, net, opt).metrics.total_cost);
    }
}
BENCHMARK(BM_compile_remote_cnot);

static void BM_verify_remote_cnot(benchmark::State& state) {
    const DistributedPlan plan =
        compile(remote_cnot(), preset_network("2x-ibmqx2-linked"), pinned_options());
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify(plan).max_infidelity);
    }
}
BENCHMARK(BM_verify_remote_cnot);

// Teledata burst: one migration amortized over `gates` remote CNOTs.
static void BM_compile_burst(benchmark::State& state) {
    const auto burst = static_cast<int>(state.range(0));
    Circuit c(7);
    for (int i = 0; i < burst; ++i) {
        c.append(Gate::cnot(0, static_cast<QubitId>(4 + i % 3)));
    }
    CompileOptions opt;
    opt.pins = {{0, "A"}, {4, "B"}, {5, "B"}, {6, "B"}};
    const NetworkTopology net = preset_network("2x-ibmqx2-linked");
    for (auto _ : state) {
        benchmark::DoNotOptimize(compile(c, net, opt).metrics.epr_pairs_consumed);
    }
}
BENCHMARK(BM_compile_burst)->Arg(3)->Arg(10)->Arg(30)->ArgName("gates");

BENCHMARK_MAIN();
