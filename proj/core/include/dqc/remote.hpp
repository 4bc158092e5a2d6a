#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/network.hpp"

namespace dqc {

struct LinkStats {
    std::uint64_t pairs_generated{0};
    std::uint64_t pairs_consumed{0};
    double cost_accrued{0.0};
};

/// Tracks every EPR pair from generation to consumption. A pair starts on
/// the two endpoints of one link; entanglement swapping merges two pairs
/// that meet at a device into one spanning the outer endpoints (the left
/// pair is consumed, the survivor keeps the right pair's link attribution).
/// Each comm qubit holds at most one half at a time.
class EprLedger {
public:
    explicit EprLedger(const NetworkTopology& network);

    struct Pair {
        std::uint64_t id;
        std::size_t link_index;
        std::string device_a;
        QubitId qubit_a;
        std::string device_b;
        QubitId qubit_b;
    };

    bool is_free(const std::string& device, QubitId comm_qubit) const;
    std::optional<std::uint64_t> holder(const std::string& device, QubitId comm_qubit) const;
    const Pair& pair(std::uint64_t pair_id) const;

    /// Books a fresh pair on network.links[link_index]; throws
    /// ValidationError("communication qubit occupied") when an endpoint
    /// already holds a half.
    std::uint64_t mark_generated(std::size_t link_index);

    /// Merges two pairs meeting at `at_device`: the meeting halves are
    /// freed, the left pair is consumed, and the surviving (right) pair's
    /// endpoints become the two outer halves. Returns the survivor's id.
    std::uint64_t merge(std::uint64_t left_id, std::uint64_t right_id,
                        const std::string& at_device);

    /// Consumes a pair and frees both endpoint comm qubits.
    void consume(std::uint64_t pair_id);

    const std::vector<LinkStats>& per_link() const { return per_link_; }
    std::uint64_t total_generated() const;
    std::uint64_t total_consumed() const;
    double total_epr_cost() const;

private:
    const NetworkTopology* network_;
    std::vector<LinkStats> per_link_;
    std::map<std::uint64_t, Pair> live_pairs_;
    std::map<std::pair<std::string, QubitId>, std::uint64_t> occupancy_;
    std::uint64_t next_id_{0};
};

/// Emits the gate expansions of the remote primitives over the network's
/// global qubit register, updating the ledger and allocating classical bits
/// for every measurement it introduces.
class RemoteLowerer {
public:
    RemoteLowerer(const NetworkTopology& network, const GlobalIndex& index,
                  ClbitId first_fresh_clbit);

    EprLedger& ledger() { return ledger_; }
    const EprLedger& ledger() const { return ledger_; }
    /// One past the last classical bit allocated so far.
    ClbitId next_clbit() const { return next_clbit_; }

    /// [Reset a, Reset b, H a, CNOT(a->b)] on the link's endpoints; the
    /// CNOT crosses devices and is exempt from coupling legality (it is the
    /// link primitive itself). Returns the new pair's id.
    std::uint64_t generate_epr(std::size_t link_index, std::vector<Gate>& out);

    /// Generates one pair per hop along `path` (device ids), then Bell-
    /// measures at each intermediate device, correcting the half at the
    /// final device. Afterwards the two end comm qubits hold a single pair,
    /// every intermediate comm qubit is free and reset. Returns the
    /// surviving pair id. A two-device path degenerates to generate_epr.
    std::uint64_t swap_entanglement(const std::vector<std::string>& path, std::vector<Gate>& out);

    /// Shortest-link-path pair between two devices (generate + swap).
    std::uint64_t establish_pair(const std::string& device_a, const std::string& device_b,
                                 std::vector<Gate>& out);

    /// Teleportation of global qubit `src` through `pair_id`; the state
    /// lands on the pair's half at the other device (returned). The source
    /// qubit and the near half end in |0>; the pair is consumed.
    QubitId lower_teledata(QubitId src, std::uint64_t pair_id, std::vector<Gate>& out);

    /// Telegate: a CNOT between `control` and `target` on distinct devices
    /// through `pair_id`; both halves end in |0>, pair consumed.
    void lower_telegate(QubitId control, QubitId target, std::uint64_t pair_id,
                        std::vector<Gate>& out);

private:
    ClbitId fresh_clbit() { return next_clbit_++; }

    const NetworkTopology& network_;
    const GlobalIndex& index_;
    EprLedger ledger_;
    ClbitId next_clbit_;
};

}  // namespace dqc
