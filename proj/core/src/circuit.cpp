#include "dqc/circuit.hpp"

#include <algorithm>

namespace dqc {

namespace {

void check_operands(const Gate& g, std::uint32_t n_qubits, std::uint32_t n_clbits) {
    if (g.q0 >= n_qubits) {
        throw ValidationError(std::string(gate_kind_name(g.kind)) + " references qubit " +
                              std::to_string(g.q0) + " outside register of size " +
                              std::to_string(n_qubits));
    }
    if (g.is_two_qubit()) {
        if (g.q1 >= n_qubits) {
            throw ValidationError(std::string(gate_kind_name(g.kind)) + " references qubit " +
                                  std::to_string(g.q1) + " outside register of size " +
                                  std::to_string(n_qubits));
        }
        if (g.q0 == g.q1) {
            throw ValidationError(std::string(gate_kind_name(g.kind)) +
                                  " has identical operands q[" + std::to_string(g.q0) + "]");
        }
    }
    if (g.uses_clbit() && g.clbit >= n_clbits) {
        throw ValidationError(std::string(gate_kind_name(g.kind)) + " references clbit " +
                              std::to_string(g.clbit) + " outside register of size " +
                              std::to_string(n_clbits));
    }
    if (g.kind == GateKind::IfBit && g.inner != GateKind::X && g.inner != GateKind::Z) {
        throw ValidationError("if-gate body must be x or z");
    }
    if (g.kind == GateKind::U1q && !g.matrix.is_unitary()) {
        throw ValidationError("u1q matrix is not unitary within tolerance");
    }
}

}  // namespace

void Circuit::append(Gate g) {
    check_operands(g, n_qubits_, n_clbits_);
    gates_.push_back(std::move(g));
}

void Circuit::extend(const std::vector<Gate>& more) {
    for (const Gate& g : more) append(g);
}

std::vector<Violation> validate(const Circuit& circuit) {
    std::vector<Violation> out;
    std::vector<bool> written(circuit.n_clbits(), false);

    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        const Gate& g = circuit.gates()[i];
        if (g.q0 >= circuit.n_qubits() || (g.is_two_qubit() && g.q1 >= circuit.n_qubits())) {
            out.push_back({i, "out-of-range qubit"});
            continue;
        }
        if (g.is_two_qubit() && g.q0 == g.q1) {
            out.push_back({i, "identical operands"});
        }
        if (g.uses_clbit() && g.clbit >= circuit.n_clbits()) {
            out.push_back({i, "out-of-range clbit"});
            continue;
        }
        if (g.kind == GateKind::U1q && !g.matrix.is_unitary()) {
            out.push_back({i, "non-unitary u1q matrix"});
        }
        if (g.kind == GateKind::IfBit) {
            if (g.inner != GateKind::X && g.inner != GateKind::Z) {
                out.push_back({i, "if-gate body must be x or z"});
            }
            if (!written[g.clbit]) {
                out.push_back({i, "read-before-write of clbit " + std::to_string(g.clbit)});
            }
        }
        if (g.kind == GateKind::Measure) {
            written[g.clbit] = true;
        }
    }
    return out;
}

std::size_t depth(const Circuit& circuit) {
    if (!validate(circuit).empty()) {
        throw ValidationError("depth requires a valid circuit");
    }
    std::vector<std::size_t> qubit_layer(circuit.n_qubits(), 0);
    std::vector<std::size_t> clbit_layer(circuit.n_clbits(), 0);

    std::size_t max_layer = 0;
    for (const Gate& g : circuit.gates()) {
        std::size_t layer = qubit_layer[g.q0];
        if (g.is_two_qubit()) layer = std::max(layer, qubit_layer[g.q1]);
        if (g.uses_clbit()) layer = std::max(layer, clbit_layer[g.clbit]);
        ++layer;
        qubit_layer[g.q0] = layer;
        if (g.is_two_qubit()) qubit_layer[g.q1] = layer;
        if (g.uses_clbit()) clbit_layer[g.clbit] = layer;
        max_layer = std::max(max_layer, layer);
    }
    return max_layer;
}

std::uint64_t InteractionGraph::total_weight() const {
    std::uint64_t sum = 0;
    for (const auto& [edge, w] : edges) sum += w;
    return sum;
}

std::uint64_t InteractionGraph::weighted_degree(QubitId q) const {
    std::uint64_t sum = 0;
    for (const auto& [edge, w] : edges) {
        if (edge.first == q || edge.second == q) sum += w;
    }
    return sum;
}

std::uint64_t InteractionGraph::weight(QubitId a, QubitId b) const {
    if (a > b) std::swap(a, b);
    auto it = edges.find({a, b});
    return it == edges.end() ? 0 : it->second;
}

InteractionGraph interaction_graph(const Circuit& circuit) {
    if (!validate(circuit).empty()) {
        throw ValidationError("interaction_graph requires a valid circuit");
    }
    InteractionGraph graph;
    graph.n_qubits = circuit.n_qubits();
    for (const Gate& g : circuit.gates()) {
        if (!g.is_two_qubit()) continue;
        QubitId a = g.q0, b = g.q1;
        if (a > b) std::swap(a, b);
        graph.edges[{a, b}] += g.kind == GateKind::Swap ? 3 : 1;
    }
    return graph;
}

}  // namespace dqc
