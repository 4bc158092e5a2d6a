#pragma once

#include <set>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/network.hpp"

namespace dqc {

/// Bijection between logical qubits and a device's physical qubits. After
/// routing inserts swaps, physical(l) tracks where logical l's state lives.
class Layout {
public:
    static Layout identity(std::uint32_t n);
    /// phys_of_logical[l] = physical position of logical l; must be a
    /// permutation.
    explicit Layout(std::vector<QubitId> phys_of_logical);

    std::uint32_t size() const { return static_cast<std::uint32_t>(phys_.size()); }
    QubitId physical(QubitId logical) const;
    QubitId logical(QubitId physical) const;
    const std::vector<QubitId>& to_physical() const { return phys_; }

    /// Records a SWAP executed between two physical positions: their
    /// occupants exchange places.
    void swap_physical(QubitId pa, QubitId pb);

    bool is_identity() const;
    bool operator==(const Layout&) const = default;

private:
    std::vector<QubitId> phys_;  // logical -> physical
    std::vector<QubitId> log_;   // physical -> logical
};

/// H c, H t, CNOT(t->c), H c, H t: a CNOT(c->t) on hardware that only has
/// the (t->c) edge. Throws ValidationError unless exactly that edge exists.
std::vector<Gate> lower_reversed_cnot(const CouplingMap& coupling, QubitId control,
                                      QubitId target);

/// Three CNOTs realizing SWAP(a, b) on adjacent qubits, each CNOT lacking
/// its directed edge further lowered via lower_reversed_cnot. Follows the
/// operand order: CNOT(a->b), CNOT(b->a), CNOT(a->b).
std::vector<Gate> lower_swap(const CouplingMap& coupling, QubitId a, QubitId b);

enum class RoutingMode : std::uint8_t { Restore, Permute };

const char* routing_mode_name(RoutingMode mode);

/// Incremental router for one device. Gates arrive over logical qubits (or
/// equivalently over initial physical slots when constructed with the
/// identity layout); emitted gates are physical and coupling-legal.
///
/// Qubits in `protect` never move: they are barred as swap intermediates,
/// and any gate that has a protected operand is routed with its swaps
/// undone immediately (forced restore), whatever the mode. The distributed
/// compiler protects communication qubits this way so that link primitives
/// always find them in place.
class DeviceRouter {
public:
    DeviceRouter(const CouplingMap& coupling, Layout initial, RoutingMode mode,
                 std::set<QubitId> protect = {});

    /// Appends the routed expansion of `g` to `out`. Two-qubit gates whose
    /// endpoints are non-adjacent acquire swap chains along a cheapest
    /// minimum-hop path (ties to the lexicographically smallest path).
    void route_gate(const Gate& g, std::vector<Gate>& out);

    const Layout& layout() const { return layout_; }
    std::size_t inserted_swaps() const { return inserted_swaps_; }

private:
    std::vector<QubitId> pick_path(QubitId pc, QubitId pt, bool forced_restore) const;
    void emit_swap(QubitId pa, QubitId pb, std::vector<Gate>& out);

    const CouplingMap& coupling_;
    Layout layout_;
    RoutingMode mode_;
    std::set<QubitId> protect_;
    std::size_t inserted_swaps_ = 0;
};

struct RouteResult {
    Circuit circuit;          // over the device's physical qubits
    Layout final_layout;
    std::size_t inserted_swaps = 0;
};

/// Routes a whole circuit onto one coupling map. Input SWAP gates are
/// expanded to their three CNOTs first. mode=Restore undoes every inserted
/// swap chain immediately (final layout = initial); mode=Permute lets them
/// persist and reports the final layout.
RouteResult route(const Circuit& circuit, const CouplingMap& coupling, const Layout& initial,
                  RoutingMode mode = RoutingMode::Restore);

}  // namespace dqc
