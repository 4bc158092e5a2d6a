#pragma once

#include "dqc/gate.hpp"
#include "dqc/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dqc {

/// Hardware-agnostic gate list over a quantum register of `n_qubits` and a
/// classical register of `n_clbits`. Gates are kept in program order;
/// `append` rejects out-of-range operands so a constructed circuit can never
/// reference a missing qubit or bit.
class Circuit {
public:
    explicit Circuit(std::uint32_t n_qubits, std::uint32_t n_clbits = 0)
        : n_qubits_(n_qubits), n_clbits_(n_clbits) {}

    std::uint32_t n_qubits() const { return n_qubits_; }
    std::uint32_t n_clbits() const { return n_clbits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    /// Appends a gate, throwing ValidationError on out-of-range operands or
    /// identical two-qubit operands.
    void append(Gate g);

    /// Appends every gate of `other` (registers must be large enough).
    void extend(const std::vector<Gate>& more);

    bool operator==(const Circuit& other) const {
        return n_qubits_ == other.n_qubits_ && n_clbits_ == other.n_clbits_ &&
               gates_ == other.gates_;
    }

private:
    std::uint32_t n_qubits_;
    std::uint32_t n_clbits_;
    std::vector<Gate> gates_;
};

/// One broken circuit invariant, anchored at the offending gate.
struct Violation {
    std::size_t gate_index;
    std::string message;

    std::string to_string() const {
        return message + " at gate " + std::to_string(gate_index);
    }
};

/// Checks every circuit invariant and returns the full violation list
/// (empty means valid): operand ranges, distinct two-qubit operands, U1q
/// unitarity, IfBit bodies restricted to X/Z, and no IfBit reading a clbit
/// before some Measure wrote it.
std::vector<Violation> validate(const Circuit& circuit);

/// Minimum layer count when gates commute into the earliest layer that has
/// all of their qubits and clbits free. Program order is preserved among
/// conflicting gates. Throws ValidationError on an invalid circuit.
std::size_t depth(const Circuit& circuit);

/// Weighted undirected interaction graph over the circuit's qubits: edge
/// (a,b) accumulates one unit per CNOT touching {a,b} and three per SWAP
/// (its three-CNOT decomposition).
struct InteractionGraph {
    std::uint32_t n_qubits{0};
    std::map<std::pair<QubitId, QubitId>, std::uint64_t> edges;  // keys normalized a < b

    std::uint64_t total_weight() const;
    std::uint64_t weighted_degree(QubitId q) const;
    std::uint64_t weight(QubitId a, QubitId b) const;
};

InteractionGraph interaction_graph(const Circuit& circuit);

}  // namespace dqc
