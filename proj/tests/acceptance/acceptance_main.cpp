// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Tolerances here are frozen contract values, not tunables.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dqc/compiler.hpp"
#include "dqc/report.hpp"
#include "dqc/statevector.hpp"

using namespace dqc;

namespace {

constexpr double kFidelityTol = 1e-10;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (detail.empty()) detail = why;
    }
};

// Two devices, one data qubit (0) and one comm qubit (1) each.
NetworkTopology pair_network() {
    NetworkTopology net;
    for (const char* id : {"A", "B"}) {
        DeviceSpec d;
        d.id = id;
        d.coupling.n_qubits = 2;
        d.coupling.edges = {{0, 1}};
        d.comm_qubits = {1};
        net.devices.push_back(d);
    }
    net.links.push_back({"A", 1, "B", 1, 1.0});
    return net;
}

// A.2 -- B.0 and B.2 -- C.0: the relay owns one comm qubit per link.
NetworkTopology line_network() {
    NetworkTopology net;
    for (const char* id : {"A", "B", "C"}) {
        DeviceSpec d;
        d.id = id;
        d.coupling.n_qubits = 3;
        d.coupling.edges = {{0, 1}, {1, 2}};
        if (id[0] == 'A') d.comm_qubits = {2};
        if (id[0] == 'B') d.comm_qubits = {0, 2};
        if (id[0] == 'C') d.comm_qubits = {0};
        net.devices.push_back(d);
    }
    net.links.push_back({"A", 2, "B", 0, 1.0});
    net.links.push_back({"B", 2, "C", 0, 1.0});
    return net;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. Teleportation: random states arrive intact in all 4 branches, with the
// source and the near comm qubit reset.
Outcome criterion_teleportation() {
    Outcome out;
    const NetworkTopology net = pair_network();
    const GlobalIndex gi(net);
    const QubitId src = gi.global("A", 0);
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        RemoteLowerer lowerer(net, gi, 0);
        std::vector<Gate> gates;
        const std::uint64_t pair = lowerer.establish_pair("A", "B", gates);
        const QubitId dest = lowerer.lower_teledata(src, pair, gates);
        Circuit c(gi.total_qubits(), lowerer.next_clbit());
        c.extend(gates);

        const Matrix2 prep = random_unitary2(rng);
        StateVector initial(gi.total_qubits());
        initial.apply_u1q(prep, src);
        StateVector expected(gi.total_qubits());
        expected.apply_u1q(prep, dest);  // everything else |0>

        std::size_t branches = 0;
        run_exhaustive_visit(c, initial, [&](const Branch& b) {
            ++branches;
            worst = std::max(worst, 1.0 - state_overlap(expected, b.final_state));
        });
        if (branches != 4) out.fail("expected 4 branches, saw " + std::to_string(branches));
    }
    if (worst > kFidelityTol) out.fail("max infidelity " + fmt(worst));
    out.detail = "100 states x 4 branches, max infidelity " + fmt(worst);
    return out;
}

// 2. Telegate: equals an ideal CNOT on basis and random product inputs.
Outcome criterion_telegate() {
    Outcome out;
    const NetworkTopology net = pair_network();
    const GlobalIndex gi(net);
    const QubitId control = gi.global("A", 0);
    const QubitId target = gi.global("B", 0);
    std::mt19937_64 rng(2);
    double worst = 0.0;

    auto check_input = [&](const StateVector& input) {
        RemoteLowerer lowerer(net, gi, 0);
        std::vector<Gate> gates;
        const std::uint64_t pair = lowerer.establish_pair("A", "B", gates);
        lowerer.lower_telegate(control, target, pair, gates);
        Circuit c(gi.total_qubits(), lowerer.next_clbit());
        c.extend(gates);

        StateVector expected = input;
        expected.apply_cnot(control, target);
        std::size_t branches = 0;
        run_exhaustive_visit(c, input, [&](const Branch& b) {
            ++branches;
            worst = std::max(worst, 1.0 - state_overlap(expected, b.final_state));
        });
        if (branches != 4) out.fail("expected 4 branches");
    };

    for (int cv = 0; cv < 2; ++cv) {
        for (int tv = 0; tv < 2; ++tv) {
            StateVector basis(gi.total_qubits());
            if (cv) basis.apply_x(control);
            if (tv) basis.apply_x(target);
            check_input(basis);
        }
    }
    for (int trial = 0; trial < 100; ++trial) {
        StateVector input(gi.total_qubits());
        input.apply_u1q(random_unitary2(rng), control);
        input.apply_u1q(random_unitary2(rng), target);
        check_input(input);
    }
    if (worst > kFidelityTol) out.fail("max infidelity " + fmt(worst));
    out.detail = "4 basis + 100 random inputs, max infidelity " + fmt(worst);
    return out;
}

// Relabels amplitudes so that logical bit q moves to layout.physical(q).
StateVector relabel(const StateVector& s, const Layout& layout) {
    const std::uint32_t n = s.n_qubits();
    std::vector<Complex> amps(std::size_t{1} << n);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t j = 0;
        for (std::uint32_t q = 0; q < n; ++q) {
            if (i >> q & 1u) j |= std::size_t{1} << layout.physical(q);
        }
        amps[j] = s.amplitudes()[i];
    }
    return StateVector::from_amplitudes(n, std::move(amps));
}

// 3. Routing on the ibmqx3 coupling map: legal and equivalent.
Outcome criterion_routing() {
    Outcome out;
    const CouplingMap coupling = ibmqx3_coupling();
    std::mt19937_64 rng(3);
    double worst = 0.0;

    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t span = 2 + static_cast<std::uint32_t>(rng() % 9);  // 2..10 qubits
        const int n_gates = 1 + static_cast<int>(rng() % 30);
        Circuit c(coupling.n_qubits);
        for (int i = 0; i < n_gates; ++i) {
            const QubitId a = static_cast<QubitId>(rng() % span);
            QubitId b = static_cast<QubitId>(rng() % span);
            while (b == a) b = static_cast<QubitId>(rng() % span);
            switch (rng() % 5) {
                case 0: c.append(Gate::h(a)); break;
                case 1: c.append(Gate::x(a)); break;
                case 2: c.append(Gate::z(a)); break;
                case 3: c.append(Gate::cnot(a, b)); break;
                default: c.append(Gate::swap(a, b)); break;
            }
        }

        const RoutingMode mode = trial % 2 ? RoutingMode::Permute : RoutingMode::Restore;
        const RouteResult routed =
            route(c, coupling, Layout::identity(coupling.n_qubits), mode);

        for (const Gate& g : routed.circuit.gates()) {
            if (g.kind == GateKind::Swap) out.fail("router left a SWAP unexpanded");
            if (g.kind == GateKind::Cnot && !coupling.has_edge(g.q0, g.q1)) {
                out.fail("illegal CNOT " + std::to_string(g.q0) + "->" + std::to_string(g.q1));
            }
        }
        if (mode == RoutingMode::Restore && !routed.final_layout.is_identity()) {
            out.fail("restore mode did not restore the layout");
        }

        const StateVector initial = random_product_state(coupling.n_qubits, rng);
        StateVector ideal = initial;
        for (const Gate& g : c.gates()) ideal = apply(ideal, g);
        StateVector actual = initial;
        for (const Gate& g : routed.circuit.gates()) actual = apply(actual, g);
        const double inf = 1.0 - state_overlap(relabel(ideal, routed.final_layout), actual);
        worst = std::max(worst, inf);
    }
    if (worst > kFidelityTol) out.fail("max infidelity " + fmt(worst));
    out.detail = "200 circuits, both modes, max infidelity " + fmt(worst);
    return out;
}

// 4. Dimension accounting for two 10-qubit devices with one comm qubit each.
Outcome criterion_dimensions() {
    Outcome out;
    NetworkTopology net;
    for (const char* id : {"A", "B"}) {
        DeviceSpec d;
        d.id = id;
        d.coupling.n_qubits = 10;
        for (QubitId q = 0; q < 9; ++q) d.coupling.edges.insert({q, q + 1});
        d.comm_qubits = {9};
        net.devices.push_back(d);
    }
    net.links.push_back({"A", 9, "B", 9, 1.0});
    net.check();

    const double iso = isolated_dimension(net);
    const double clu = clustered_dimension(net);
    if (iso != std::exp2(11)) out.fail("isolated_dimension " + std::to_string(iso));
    if (clu != std::exp2(18)) out.fail("clustered_dimension " + std::to_string(clu));
    out.detail = "isolated 2^11 = 2048, clustered 2^18 = 262144, both exact";
    return out;
}

// 5. Partition quality: optimal on the bridge instance, competitive with a
// round-robin baseline on random circuits.
Outcome criterion_partition() {
    Outcome out;
    NetworkTopology net;
    for (const char* id : {"A", "B"}) {
        DeviceSpec d;
        d.id = id;
        d.coupling.n_qubits = 5;
        for (QubitId q = 0; q < 4; ++q) d.coupling.edges.insert({q, q + 1});
        d.comm_qubits = {4};
        net.devices.push_back(d);
    }
    net.links.push_back({"A", 4, "B", 4, 1.0});

    // two 4-cliques joined by a single bridge edge
    InteractionGraph bridge;
    bridge.n_qubits = 8;
    for (QubitId a = 0; a < 4; ++a)
        for (QubitId b = a + 1; b < 4; ++b) bridge.edges[{a, b}] = 1;
    for (QubitId a = 4; a < 8; ++a)
        for (QubitId b = a + 1; b < 8; ++b) bridge.edges[{a, b}] = 1;
    bridge.edges[{3, 4}] = 1;

    const std::uint64_t heuristic_bridge = cut_weight(bridge, assign_devices(bridge, net));

    std::uint64_t optimum = UINT64_MAX;
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) != 4) continue;  // 4 data qubits per device
        std::map<QubitId, std::string> device_of;
        for (QubitId q = 0; q < 8; ++q) device_of[q] = (mask >> q & 1u) ? "B" : "A";
        optimum = std::min(optimum, cut_weight(bridge, device_of));
    }
    if (optimum != 1) out.fail("bridge optimum is " + std::to_string(optimum));
    if (heuristic_bridge != optimum) {
        out.fail("bridge cut " + std::to_string(heuristic_bridge) + " vs optimum " +
                 std::to_string(optimum));
    }

    std::mt19937_64 rng(5);
    int within_baseline = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c(8);
        const int n_gates = 10 + static_cast<int>(rng() % 21);
        for (int i = 0; i < n_gates; ++i) {
            const QubitId a = static_cast<QubitId>(rng() % 8);
            QubitId b = static_cast<QubitId>(rng() % 8);
            while (b == a) b = static_cast<QubitId>(rng() % 8);
            switch (rng() % 3) {
                case 0: c.append(Gate::h(a)); break;
                case 1: c.append(Gate::cnot(a, b)); break;
                default: c.append(Gate::swap(a, b)); break;
            }
        }
        const InteractionGraph g = interaction_graph(c);
        const std::uint64_t cut = cut_weight(g, assign_devices(g, net));
        std::map<QubitId, std::string> rr;
        for (QubitId q = 0; q < 8; ++q) rr[q] = q % 2 ? "B" : "A";
        const std::uint64_t baseline = cut_weight(g, rr);
        if (cut <= baseline) ++within_baseline;
        if (cut > 2 * baseline) {
            out.fail("cut " + std::to_string(cut) + " more than doubles baseline " +
                     std::to_string(baseline));
        }
    }
    if (within_baseline < 48) {  // >= 95% of 50
        out.fail("beat round robin only " + std::to_string(within_baseline) + "/50 times");
    }
    out.detail = "bridge cut 1 = optimum; <= round robin in " +
                 std::to_string(within_baseline) + "/50 runs";
    return out;
}

// 6. Entanglement swapping across the 3-device line delivers Phi+ between
// the end comm qubits in every branch, two pairs per delivery.
Outcome criterion_swapping() {
    Outcome out;
    const NetworkTopology net = line_network();
    const GlobalIndex gi(net);
    RemoteLowerer lowerer(net, gi, 0);
    std::vector<Gate> gates;
    const std::uint64_t pair = lowerer.establish_pair("A", "C", gates);
    Circuit c(gi.total_qubits(), lowerer.next_clbit());
    c.extend(gates);

    std::vector<Complex> want(std::size_t{1} << gi.total_qubits());
    const double r = 1.0 / std::sqrt(2.0);
    want[0] = r;
    want[(std::size_t{1} << gi.global("A", 2)) | (std::size_t{1} << gi.global("C", 0))] = r;
    const StateVector expected =
        StateVector::from_amplitudes(gi.total_qubits(), std::move(want));

    double worst = 0.0;
    std::size_t branches = 0;
    run_exhaustive_visit(c, StateVector(gi.total_qubits()), [&](const Branch& b) {
        ++branches;
        worst = std::max(worst, 1.0 - state_overlap(expected, b.final_state));
    });
    if (branches != 4) out.fail("expected 4 branches, saw " + std::to_string(branches));
    if (worst > kFidelityTol) out.fail("max infidelity " + fmt(worst));

    if (lowerer.ledger().total_generated() != 2) {
        out.fail("generated " + std::to_string(lowerer.ledger().total_generated()) + " pairs");
    }
    lowerer.ledger().consume(pair);  // spend the delivered end-to-end pair
    if (lowerer.ledger().total_consumed() != 2) {
        out.fail("consumed " + std::to_string(lowerer.ledger().total_consumed()) + " pairs");
    }
    out.detail = "Phi+ in all 4 branches, max infidelity " + fmt(worst) +
                 ", 2 pairs per delivery";
    return out;
}

// 7. Full pipeline on the remote-CNOT scenario, with a reproducible report.
Outcome criterion_pipeline() {
    Outcome out;
    Circuit c(5);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 4));
    CompileOptions opt;
    opt.pins = {{0, "A"}, {4, "B"}};
    const NetworkTopology net = preset_network("2x-ibmqx2-linked");

    const DistributedPlan plan = compile(c, net, opt);
    const VerificationReport rep = verify(plan, 13);
    if (!rep.ran || !rep.passed) out.fail("verification failed: " + rep.detail);
    if (rep.max_infidelity >= 1e-10) {
        out.fail("max infidelity " + fmt(rep.max_infidelity));
    }
    if (plan.metrics.remote_op_count != 1) {
        out.fail("remote_op_count " + std::to_string(plan.metrics.remote_op_count));
    }
    if (plan.metrics.epr_pairs_consumed != 1) {
        out.fail("epr_pairs_consumed " + std::to_string(plan.metrics.epr_pairs_consumed));
    }

    const DistributedPlan again = compile(c, net, opt);
    const VerificationReport rep2 = verify(again, 13);
    if (plan_to_json(plan) != plan_to_json(again)) out.fail("plan JSON not byte-identical");
    if (verification_to_json(rep) != verification_to_json(rep2)) {
        out.fail("verification JSON not byte-identical");
    }
    out.detail = "1 telegate, 1 pair, max infidelity " + fmt(rep.max_infidelity) +
                 ", reports byte-identical";
    return out;
}

// 8. The oracle notices every dropped classical correction.
Outcome criterion_mutation() {
    Outcome out;
    const NetworkTopology net = preset_network("2x-ibmqx2-linked");
    Circuit c(5);
    c.append(Gate::cnot(0, 4));
    int mutations = 0;

    for (const std::uint32_t threshold : {3u, 1u}) {  // telegate, then teledata
        CompileOptions opt;
        opt.pins = {{0, "A"}, {4, "B"}};
        opt.strategy_threshold = threshold;
        const DistributedPlan plan = compile(c, net, opt);
        if (!verify(plan).passed) {
            out.fail("unmutated plan failed verification");
            continue;
        }
        for (std::size_t i = 0; i < plan.lowered.size(); ++i) {
            if (plan.lowered.gates()[i].kind != GateKind::IfBit) continue;
            ++mutations;
            DistributedPlan mutated = plan;
            Circuit without(plan.lowered.n_qubits(), plan.lowered.n_clbits());
            for (std::size_t j = 0; j < plan.lowered.size(); ++j) {
                if (j != i) without.append(plan.lowered.gates()[j]);
            }
            mutated.lowered = without;
            const VerificationReport rep = verify(mutated);
            if (!rep.ran || rep.passed) {
                out.fail("dropping correction at gate " + std::to_string(i) +
                         " went unnoticed");
            }
        }
    }
    if (mutations != 6) out.fail("expected 6 corrections, found " + std::to_string(mutations));
    out.detail = "all " + std::to_string(mutations) + " dropped corrections caught";
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"teleportation correctness", 1.0, criterion_teleportation},
        {"telegate correctness", 1.0, criterion_telegate},
        {"routing correctness", 30.0, criterion_routing},
        {"state-space accounting", 30.0, criterion_dimensions},
        {"partition quality", 60.0, criterion_partition},
        {"entanglement swapping", 30.0, criterion_swapping},
        {"end-to-end pipeline", 30.0, criterion_pipeline},
        {"mutation sensitivity", 30.0, criterion_mutation},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criteria[i].budget_s) {
            out.ok = false;
            out.detail += " [over budget: " + std::to_string(elapsed) + " s > " +
                          std::to_string(criteria[i].budget_s) + " s]";
        }
        std::printf("[%s] %zu %s: %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, out.detail.c_str(), elapsed);
        if (!out.ok) ++failures;
    }
    if (failures) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
