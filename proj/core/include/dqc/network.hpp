#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dqc/types.hpp"

namespace dqc {

enum class AdjacencyKind : std::uint8_t { Direct, Reversed, NonAdjacent };

const char* adjacency_kind_name(AdjacencyKind kind);

/// Directed coupling graph of one device: an edge (c, t) means CNOT with
/// control c and target t is physically executable.
struct CouplingMap {
    std::uint32_t n_qubits{0};
    std::set<std::pair<QubitId, QubitId>> edges;

    bool has_edge(QubitId control, QubitId target) const {
        return edges.count({control, target}) != 0;
    }
    /// Undirected neighbours, ascending.
    std::vector<QubitId> neighbors(QubitId q) const;

    /// Throws ValidationError unless endpoints are in range, no edge is a
    /// self-loop, and the undirected view is connected.
    void check() const;
};

AdjacencyKind adjacency_kind(const CouplingMap& coupling, QubitId control, QubitId target);

/// Minimum-hop path on the undirected view, ties broken by the
/// lexicographically smallest qubit-index sequence. shortest_path(c, a, a)
/// is [a]. Throws ValidationError on out-of-range or disconnected input.
std::vector<QubitId> shortest_path(const CouplingMap& coupling, QubitId a, QubitId b);

/// All minimum-hop paths from a to b, each a qubit-index sequence,
/// lexicographically sorted.
std::vector<std::vector<QubitId>> all_shortest_paths(const CouplingMap& coupling, QubitId a,
                                                     QubitId b);

struct DeviceSpec {
    std::string id;
    CouplingMap coupling;
    std::set<QubitId> comm_qubits;

    bool is_comm(QubitId q) const { return comm_qubits.count(q) != 0; }
    /// Complement of comm_qubits, ascending.
    std::vector<QubitId> data_qubits() const;
    std::size_t n_data_qubits() const { return coupling.n_qubits - comm_qubits.size(); }

    void check() const;
};

/// EPR-capable link between one communication qubit on each of two devices.
struct QuantumLink {
    std::string device_a;
    QubitId qubit_a{0};
    std::string device_b;
    QubitId qubit_b{0};
    double epr_cost{1.0};

    bool joins(const std::string& x, const std::string& y) const {
        return (device_a == x && device_b == y) || (device_a == y && device_b == x);
    }
};

struct NetworkTopology {
    std::vector<DeviceSpec> devices;
    std::vector<QuantumLink> links;

    bool has_device(const std::string& id) const;
    const DeviceSpec& device(const std::string& id) const;
    std::size_t device_index(const std::string& id) const;
    std::size_t total_data_qubits() const;

    /// First listed link joining the two devices; throws ValidationError if
    /// none exists.
    const QuantumLink& link_between(const std::string& a, const std::string& b) const;
    std::size_t link_index_between(const std::string& a, const std::string& b) const;

    /// Throws ValidationError unless every device checks out, ids are
    /// unique, link endpoints are comm qubits on distinct existing devices,
    /// epr_cost is non-negative, and the link graph over devices is
    /// connected.
    void check() const;
};

/// Minimum-hop device-id path over the link graph, ties broken by the
/// lexicographically smallest id sequence.
std::vector<std::string> device_path(const NetworkTopology& network, const std::string& from,
                                     const std::string& to);

/// Flattens a network's qubits into one register, devices in listed order:
/// global index = device offset + local index.
class GlobalIndex {
public:
    explicit GlobalIndex(const NetworkTopology& network);

    std::uint32_t total_qubits() const { return total_; }
    QubitId global(const std::string& device_id, QubitId local) const;
    /// (device id, local index) of a global qubit.
    std::pair<std::string, QubitId> to_local(QubitId global) const;
    const std::string& device_of(QubitId global) const;

private:
    std::vector<std::pair<std::string, std::uint32_t>> offsets_;  // (id, first global index)
    std::uint32_t total_;
};

/// Parses the JSON network config:
///   { "devices": [ { "id", "n_qubits", "edges": [[c,t],...],
///                    "comm_qubits": [...] } ],
///     "links": [ { "a": [id, q], "b": [id, q], "epr_cost": f } ] }
/// Throws ParseError on malformed JSON and ValidationError on a topology
/// that parses but breaks an invariant.
NetworkTopology parse_network(const std::string& json_text);

/// Published coupling maps of two early IBM backends; the raw material of
/// the built-in presets.
CouplingMap ibmqx3_coupling();
CouplingMap ibmqx2_coupling();

/// Built-in topologies: "ibmqx3" and "2x-ibmqx2-linked". Throws
/// ValidationError for unknown names.
NetworkTopology preset_network(const std::string& name);
bool is_preset_name(const std::string& name);
std::vector<std::string> preset_names();

/// Accepts a preset name or a JSON file path.
NetworkTopology load_network(const std::string& path_or_preset);

}  // namespace dqc
