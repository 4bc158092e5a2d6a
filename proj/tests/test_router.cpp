#include <random>
#include <vector>

#include "doctest.h"
#include "dqc/network.hpp"
#include "dqc/router.hpp"
#include "dqc/statevector.hpp"

using namespace dqc;

namespace {

CouplingMap line(QubitId n, bool bidirectional) {
    CouplingMap g;
    g.n_qubits = n;
    for (QubitId i = 0; i + 1 < n; ++i) {
        g.edges.insert({i, static_cast<QubitId>(i + 1)});
        if (bidirectional) g.edges.insert({static_cast<QubitId>(i + 1), i});
    }
    return g;
}

// Every emitted gate must be executable as-is: two-qubit gates only as
// CNOTs along a directed edge.
bool coupling_legal(const Circuit& c, const CouplingMap& g) {
    for (const Gate& gate : c.gates()) {
        if (gate.kind == GateKind::Swap) return false;
        if (gate.kind == GateKind::Cnot && !g.has_edge(gate.q0, gate.q1)) return false;
    }
    return true;
}

// Routed output must equal the source with qubits relabeled by the final
// layout: logical q ends at physical final_layout.physical(q).
bool equivalent_under_layout(const Circuit& source, const RouteResult& routed,
                             const CouplingMap& g, std::mt19937_64& rng) {
    const std::uint32_t n = g.n_qubits;
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Matrix2> prep;
        for (std::uint32_t q = 0; q < n; ++q) prep.push_back(random_unitary2(rng));

        StateVector expect(n);
        for (std::uint32_t q = 0; q < n; ++q) expect.apply_u1q(prep[q], q);
        for (const Gate& gate : source.gates()) expect.apply_unitary_gate(gate);
        // relabel: amplitude of logical pattern z moves to the physical slots
        std::vector<Complex> relabeled(expect.dim());
        for (std::size_t z = 0; z < expect.dim(); ++z) {
            std::size_t idx = 0;
            for (std::uint32_t b = 0; b < n; ++b) {
                if (z & (std::size_t{1} << b)) {
                    idx |= std::size_t{1} << routed.final_layout.physical(b);
                }
            }
            relabeled[idx] = expect.amplitude(z);
        }

        StateVector got(n);
        for (std::uint32_t q = 0; q < n; ++q) got.apply_u1q(prep[q], q);
        for (const Gate& gate : routed.circuit.gates()) got.apply_unitary_gate(gate);

        const StateVector want = StateVector::from_amplitudes(n, std::move(relabeled));
        if (state_overlap(want, got) < 1.0 - 1e-10) return false;
    }
    return true;
}

Circuit random_circuit(std::uint32_t n, std::size_t len, std::mt19937_64& rng) {
    Circuit c(n);
    for (std::size_t i = 0; i < len; ++i) {
        const QubitId a = static_cast<QubitId>(rng() % n);
        QubitId b = static_cast<QubitId>(rng() % n);
        while (b == a) b = static_cast<QubitId>(rng() % n);
        switch (rng() % 5) {
            case 0: c.append(Gate::h(a)); break;
            case 1: c.append(Gate::x(a)); break;
            case 2: c.append(Gate::z(a)); break;
            case 3: c.append(Gate::cnot(a, b)); break;
            default: c.append(Gate::swap(a, b)); break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("layout bookkeeping") {
    Layout l = Layout::identity(3);
    CHECK(l.is_identity());
    l.swap_physical(0, 2);
    CHECK(l.physical(0) == 2);
    CHECK(l.physical(2) == 0);
    CHECK(l.logical(2) == 0);
    CHECK_FALSE(l.is_identity());
    CHECK_THROWS_AS(Layout({0, 0, 1}), ValidationError);
}

TEST_CASE("reversed CNOT lowering is exact") {
    CouplingMap g;
    g.n_qubits = 2;
    g.edges = {{1, 0}};  // only 1 -> 0
    const auto gates = lower_reversed_cnot(g, 0, 1);
    CHECK(gates.size() == 5);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        StateVector in = random_product_state(2, rng);
        StateVector want = in;
        want.apply_cnot(0, 1);
        StateVector got = in;
        for (const Gate& gate : gates) got.apply_unitary_gate(gate);
        CHECK(state_overlap(want, got) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(lower_reversed_cnot(g, 1, 0), ValidationError);  // edge exists directly
}

TEST_CASE("swap lowering costs three or seven gates") {
    CHECK(lower_swap(line(2, true), 0, 1).size() == 3);
    const auto one_way = lower_swap(line(2, false), 0, 1);
    CHECK(one_way.size() == 7);
    std::mt19937_64 rng(4);
    StateVector in = random_product_state(2, rng);
    StateVector want = in;
    want.apply_swap(0, 1);
    StateVector got = in;
    for (const Gate& gate : one_way) got.apply_unitary_gate(gate);
    CHECK(state_overlap(want, got) == doctest::Approx(1.0));
}

TEST_CASE("restore vs permute on a bidirectional line") {
    Circuit c(3);
    c.append(Gate::cnot(0, 2));
    const CouplingMap g = line(3, true);

    const RouteResult restore = route(c, g, Layout::identity(3), RoutingMode::Restore);
    CHECK(restore.circuit.size() == 7);  // swap in, cnot, swap out
    CHECK(restore.inserted_swaps == 2);
    CHECK(restore.final_layout.is_identity());
    CHECK(coupling_legal(restore.circuit, g));

    const RouteResult permute = route(c, g, Layout::identity(3), RoutingMode::Permute);
    CHECK(permute.circuit.size() == 4);  // swap in, cnot
    CHECK(permute.inserted_swaps == 1);
    CHECK_FALSE(permute.final_layout.is_identity());
    CHECK(coupling_legal(permute.circuit, g));

    std::mt19937_64 rng(8);
    CHECK(equivalent_under_layout(c, restore, g, rng));
    CHECK(equivalent_under_layout(c, permute, g, rng));
}

TEST_CASE("adjacent gates route without swaps") {
    Circuit c(2);
    c.append(Gate::cnot(0, 1));
    c.append(Gate::cnot(1, 0));  // needs the reversed form
    const CouplingMap g = line(2, false);
    const RouteResult r = route(c, g, Layout::identity(2), RoutingMode::Restore);
    CHECK(r.inserted_swaps == 0);
    CHECK(r.circuit.size() == 1 + 5);
    CHECK(coupling_legal(r.circuit, g));
}

TEST_CASE("random circuits stay legal and equivalent on ibmqx2") {
    const CouplingMap g = ibmqx2_coupling();
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = random_circuit(5, 2 + rng() % 11, rng);
        for (RoutingMode mode : {RoutingMode::Restore, RoutingMode::Permute}) {
            const RouteResult r = route(c, g, Layout::identity(5), mode);
            CHECK(coupling_legal(r.circuit, g));
            if (mode == RoutingMode::Restore) CHECK(r.final_layout.is_identity());
            CHECK(equivalent_under_layout(c, r, g, rng));
        }
    }
}

TEST_CASE("routing is deterministic") {
    const CouplingMap g = ibmqx3_coupling();
    std::mt19937_64 rng(12);
    const Circuit c = random_circuit(10, 20, rng);
    const RouteResult a = route(c, g, Layout::identity(16), RoutingMode::Permute);
    const RouteResult b = route(c, g, Layout::identity(16), RoutingMode::Permute);
    REQUIRE(a.circuit.size() == b.circuit.size());
    for (std::size_t i = 0; i < a.circuit.size(); ++i) {
        CHECK(a.circuit.gates()[i] == b.circuit.gates()[i]);
    }
}

TEST_CASE("protected qubits never move") {
    // 0-1-2-3-4 line; qubit 2 is protected, so CNOT(0,4) must cross it by
    // forced-restore swapping, leaving 2 in place afterwards.
    const CouplingMap g = line(5, true);
    Circuit c(5);
    c.append(Gate::cnot(0, 4));
    DeviceRouter router(g, Layout::identity(5), RoutingMode::Permute, {2});
    std::vector<Gate> out;
    router.route_gate(Gate::cnot(0, 4), out);
    CHECK(router.layout().physical(2) == 2);
    Circuit routed(5);
    routed.extend(out);
    CHECK(coupling_legal(routed, g));

    RouteResult as_result{routed, router.layout(), router.inserted_swaps()};
    std::mt19937_64 rng(5);
    CHECK(equivalent_under_layout(c, as_result, g, rng));
}

TEST_CASE("protected operands force restore even in permute mode") {
    // CNOT(0, 3) with protected 3 on a line: the moving side is 0, and the
    // chain is undone so the protected operand keeps its slot.
    const CouplingMap g = line(4, true);
    DeviceRouter router(g, Layout::identity(4), RoutingMode::Permute, {3});
    std::vector<Gate> out;
    router.route_gate(Gate::cnot(0, 3), out);
    CHECK(router.layout().physical(3) == 3);
    Circuit routed(4);
    routed.extend(out);
    CHECK(coupling_legal(routed, g));
    Circuit c(4);
    c.append(Gate::cnot(0, 3));
    RouteResult as_result{routed, router.layout(), router.inserted_swaps()};
    std::mt19937_64 rng(6);
    CHECK(equivalent_under_layout(c, as_result, g, rng));
}
