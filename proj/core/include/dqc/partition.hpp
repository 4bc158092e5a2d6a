#pragma once

#include <map>
#include <string>

#include "dqc/circuit.hpp"
#include "dqc/network.hpp"

namespace dqc {

/// Injective placement of logical qubits onto device data qubits.
class Assignment {
public:
    struct Slot {
        std::string device;
        QubitId local;

        bool operator==(const Slot&) const = default;
    };

    void set(QubitId logical, Slot slot);
    bool has(QubitId logical) const { return slots_.count(logical) != 0; }
    const Slot& slot(QubitId logical) const;
    std::size_t size() const { return slots_.size(); }
    const std::map<QubitId, Slot>& slots() const { return slots_; }

    /// Count of logicals on one device.
    std::size_t usage(const std::string& device) const;

private:
    std::map<QubitId, Slot> slots_;
};

/// Interaction weight crossing the device cut: the sum of edge weights
/// whose endpoints sit on different devices. Unassigned qubits contribute
/// nothing.
std::uint64_t cut_weight(const InteractionGraph& graph,
                         const std::map<QubitId, std::string>& device_of);

/// Greedy capacity-constrained growth (seed = highest weighted degree,
/// ties to the lowest index; devices in listed order) followed by pairwise
/// exchange and relocation until no move reduces the cut. Entries of `pins`
/// are fixed to their devices throughout. Throws CapacityError("not enough
/// data qubits") when the circuit cannot fit.
std::map<QubitId, std::string> assign_devices(const InteractionGraph& graph,
                                              const NetworkTopology& network,
                                              const std::map<QubitId, std::string>& pins = {});

/// Full placement: assign_devices, then map each device's logicals onto
/// concrete data qubits, giving the remote-edge-heavy ones the data qubits
/// closest (hop count) to the device's communication qubits.
Assignment partition(const InteractionGraph& graph, const NetworkTopology& network,
                     const std::map<QubitId, std::string>& pins = {});

}  // namespace dqc
