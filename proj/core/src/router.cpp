#include "dqc/router.hpp"

#include <algorithm>
#include <limits>

namespace dqc {

Layout Layout::identity(std::uint32_t n) {
    std::vector<QubitId> phys(n);
    for (QubitId i = 0; i < n; ++i) phys[i] = i;
    return Layout(std::move(phys));
}

Layout::Layout(std::vector<QubitId> phys_of_logical) : phys_(std::move(phys_of_logical)) {
    log_.assign(phys_.size(), 0);
    std::vector<bool> seen(phys_.size(), false);
    for (QubitId l = 0; l < phys_.size(); ++l) {
        QubitId p = phys_[l];
        if (p >= phys_.size() || seen[p]) {
            throw ValidationError("layout is not a permutation");
        }
        seen[p] = true;
        log_[p] = l;
    }
}

QubitId Layout::physical(QubitId logical) const {
    if (logical >= phys_.size()) throw ValidationError("logical qubit outside layout");
    return phys_[logical];
}

QubitId Layout::logical(QubitId physical) const {
    if (physical >= log_.size()) throw ValidationError("physical qubit outside layout");
    return log_[physical];
}

void Layout::swap_physical(QubitId pa, QubitId pb) {
    QubitId la = logical(pa), lb = logical(pb);
    std::swap(phys_[la], phys_[lb]);
    std::swap(log_[pa], log_[pb]);
}

bool Layout::is_identity() const {
    for (QubitId l = 0; l < phys_.size(); ++l) {
        if (phys_[l] != l) return false;
    }
    return true;
}

std::vector<Gate> lower_reversed_cnot(const CouplingMap& coupling, QubitId control,
                                      QubitId target) {
    if (adjacency_kind(coupling, control, target) != AdjacencyKind::Reversed) {
        throw ValidationError("reversed-cnot lowering needs exactly the (target->control) edge");
    }
    return {Gate::h(control), Gate::h(target), Gate::cnot(target, control), Gate::h(control),
            Gate::h(target)};
}

namespace {

// CNOT(c->t) on adjacent qubits, H-conjugated when only the reverse edge
// exists.
void emit_cnot_adjacent(const CouplingMap& coupling, QubitId c, QubitId t,
                        std::vector<Gate>& out) {
    switch (adjacency_kind(coupling, c, t)) {
        case AdjacencyKind::Direct:
            out.push_back(Gate::cnot(c, t));
            return;
        case AdjacencyKind::Reversed: {
            std::vector<Gate> seq = lower_reversed_cnot(coupling, c, t);
            out.insert(out.end(), seq.begin(), seq.end());
            return;
        }
        case AdjacencyKind::NonAdjacent:
            throw ValidationError("qubits " + std::to_string(c) + " and " + std::to_string(t) +
                                  " are not adjacent");
    }
}

std::size_t cnot_gate_cost(const CouplingMap& coupling, QubitId c, QubitId t) {
    return coupling.has_edge(c, t) ? 1 : 5;
}

// Emitted gate count of one adjacent SWAP: 3 when both directions exist,
// 7 when only one does (the router picks the cheaper operand order).
std::size_t swap_gate_cost(const CouplingMap& coupling, QubitId a, QubitId b) {
    return coupling.has_edge(a, b) && coupling.has_edge(b, a) ? 3 : 7;
}

}  // namespace

std::vector<Gate> lower_swap(const CouplingMap& coupling, QubitId a, QubitId b) {
    if (adjacency_kind(coupling, a, b) == AdjacencyKind::NonAdjacent) {
        throw ValidationError("swap lowering needs adjacent qubits");
    }
    std::vector<Gate> out;
    emit_cnot_adjacent(coupling, a, b, out);
    emit_cnot_adjacent(coupling, b, a, out);
    emit_cnot_adjacent(coupling, a, b, out);
    return out;
}

const char* routing_mode_name(RoutingMode mode) {
    return mode == RoutingMode::Restore ? "restore" : "permute";
}

DeviceRouter::DeviceRouter(const CouplingMap& coupling, Layout initial, RoutingMode mode,
                           std::set<QubitId> protect)
    : coupling_(coupling), layout_(std::move(initial)), mode_(mode), protect_(std::move(protect)) {
    coupling_.check();
    if (layout_.size() != coupling_.n_qubits) {
        throw ValidationError("layout size does not match coupling map");
    }
}

std::vector<QubitId> DeviceRouter::pick_path(QubitId pc, QubitId pt, bool forced_restore) const {
    const bool restore = forced_restore || mode_ == RoutingMode::Restore;
    const std::size_t swap_factor = restore ? 2 : 1;

    // The swap chain touches every path node except the target, so a path
    // is admissible when no protected qubit other than the moving control
    // sits strictly inside it.
    auto admissible = [&](const std::vector<QubitId>& path) {
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            if (protect_.count(path[i])) return false;
        }
        return true;
    };
    auto gate_cost = [&](const std::vector<QubitId>& path) {
        std::size_t cost = 0;
        for (std::size_t i = 0; i + 2 < path.size(); ++i) {
            cost += swap_factor * swap_gate_cost(coupling_, path[i], path[i + 1]);
        }
        cost += cnot_gate_cost(coupling_, path[path.size() - 2], path.back());
        return cost;
    };

    const std::vector<std::vector<QubitId>> candidates = all_shortest_paths(coupling_, pc, pt);
    const std::vector<QubitId>* best = nullptr;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (const auto& path : candidates) {
        if (!admissible(path)) continue;
        // Candidates come lexicographically sorted: strict improvement
        // keeps the smallest path among equal costs.
        if (std::size_t c = gate_cost(path); c < best_cost) {
            best = &path;
            best_cost = c;
        }
    }
    if (best) return *best;
    // Protected qubits disconnect the endpoints; transit them anyway (the
    // caller forces restore so they end up back in place).
    const std::vector<QubitId>* fallback = nullptr;
    for (const auto& path : candidates) {
        if (std::size_t c = gate_cost(path); !fallback || c < best_cost) {
            fallback = &path;
            best_cost = c;
        }
    }
    return *fallback;
}

void DeviceRouter::emit_swap(QubitId pa, QubitId pb, std::vector<Gate>& out) {
    // SWAP is symmetric; lead with an existing edge direction so the
    // expansion costs 3 or 7 gates, never 11.
    if (coupling_.has_edge(pa, pb)) {
        std::vector<Gate> seq = lower_swap(coupling_, pa, pb);
        out.insert(out.end(), seq.begin(), seq.end());
    } else {
        std::vector<Gate> seq = lower_swap(coupling_, pb, pa);
        out.insert(out.end(), seq.begin(), seq.end());
    }
    layout_.swap_physical(pa, pb);
    ++inserted_swaps_;
}

void DeviceRouter::route_gate(const Gate& g, std::vector<Gate>& out) {
    if (g.kind == GateKind::Swap) {
        throw ValidationError("expand SWAP gates to CNOTs before routing");
    }
    if (!g.is_two_qubit()) {
        Gate moved = g;
        moved.q0 = layout_.physical(g.q0);
        out.push_back(moved);
        return;
    }

    const QubitId pc = layout_.physical(g.q0);
    const QubitId pt = layout_.physical(g.q1);
    if (adjacency_kind(coupling_, pc, pt) != AdjacencyKind::NonAdjacent) {
        emit_cnot_adjacent(coupling_, pc, pt, out);
        return;
    }

    const bool forced_restore = protect_.count(pc) != 0 || protect_.count(pt) != 0;
    std::vector<QubitId> path = pick_path(pc, pt, forced_restore);
    bool transits_protected = false;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        transits_protected |= protect_.count(path[i]) != 0;
    }
    const bool restore =
        mode_ == RoutingMode::Restore || forced_restore || transits_protected;

    for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        emit_swap(path[i], path[i + 1], out);
    }
    emit_cnot_adjacent(coupling_, path[path.size() - 2], path.back(), out);
    if (restore) {
        for (std::size_t i = path.size() - 2; i-- > 0;) {
            emit_swap(path[i], path[i + 1], out);
        }
    }
}

RouteResult route(const Circuit& circuit, const CouplingMap& coupling, const Layout& initial,
                  RoutingMode mode) {
    if (!validate(circuit).empty()) {
        throw ValidationError("route requires a valid circuit");
    }
    if (circuit.n_qubits() > coupling.n_qubits) {
        throw ValidationError("circuit uses " + std::to_string(circuit.n_qubits()) +
                              " qubits, coupling map has " + std::to_string(coupling.n_qubits));
    }

    DeviceRouter router(coupling, initial, mode);
    std::vector<Gate> routed;
    for (const Gate& g : circuit.gates()) {
        if (g.kind == GateKind::Swap) {
            router.route_gate(Gate::cnot(g.q0, g.q1), routed);
            router.route_gate(Gate::cnot(g.q1, g.q0), routed);
            router.route_gate(Gate::cnot(g.q0, g.q1), routed);
            continue;
        }
        router.route_gate(g, routed);
    }

    RouteResult result{Circuit(coupling.n_qubits, circuit.n_clbits()), router.layout(),
                       router.inserted_swaps()};
    result.circuit.extend(routed);
    return result;
}

}  // namespace dqc
