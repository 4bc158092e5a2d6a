#pragma once

#include <functional>
#include <random>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/types.hpp"

namespace dqc {

/// Dense 2^n statevector. Qubit 0 is the least-significant bit of the
/// amplitude index: amplitude(0b10) is |q1=1, q0=0>.
class StateVector {
public:
    /// |0...0>. Throws CapacityError when n_qubits exceeds `cap`.
    explicit StateVector(std::uint32_t n_qubits, std::uint32_t cap = kDefaultMaxQubits);

    /// Takes ownership of `amps` (size must be 2^n_qubits, unit norm within
    /// kTol).
    static StateVector from_amplitudes(std::uint32_t n_qubits, std::vector<Complex> amps,
                                       std::uint32_t cap = kDefaultMaxQubits);

    std::uint32_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t index) const { return amps_[index]; }
    double norm() const;

    /// P(measuring qubit q yields 1) under the Born rule.
    double probability_of_one(QubitId q) const;

    void apply_h(QubitId q);
    void apply_x(QubitId q);
    void apply_z(QubitId q);
    void apply_u1q(const Matrix2& u, QubitId q);
    void apply_cnot(QubitId control, QubitId target);
    void apply_swap(QubitId a, QubitId b);

    /// Dispatches the unitary kinds above; IfBit and the measurement kinds
    /// throw ValidationError (they need a run context).
    void apply_unitary_gate(const Gate& g);

    /// Projects qubit q onto `outcome` and renormalizes by the outcome's
    /// prior probability (pass it in; throws when it is not positive).
    void collapse(QubitId q, bool outcome, double outcome_probability);

private:
    std::uint32_t n_qubits_;
    std::vector<Complex> amps_;
};

/// Pure gate application: returns the transformed state. IfBit consults
/// `classical_bits`; Measure and Reset are rejected here because their
/// outcome lives in a run (see run_sampled / run_exhaustive).
StateVector apply(const StateVector& state, const Gate& gate,
                  const std::vector<std::uint8_t>& classical_bits = {});

/// One execution trajectory: the classical register after the run, the
/// trajectory's probability, and the final normalized state.
struct Branch {
    std::vector<std::uint8_t> classical_bits;
    double probability{1.0};
    StateVector final_state;
};

/// Runs one trajectory, sampling every measurement from the Born rule with
/// a generator seeded by `seed`; identical seeds give bit-identical output.
Branch run_sampled(const Circuit& circuit, const StateVector& initial, std::uint64_t seed);

/// Enumerates every measurement-outcome assignment with probability above
/// kBranchEps, depth-first with outcome 0 explored before 1. Probabilities
/// over the returned branches sum to 1. A Reset on a still-entangled qubit
/// also forks the enumeration (its discarded outcome still selects a
/// post-measurement state) without recording a classical bit. Throws
/// CapacityError when the circuit holds more than 20 Measure gates.
std::vector<Branch> run_exhaustive(const Circuit& circuit, const StateVector& initial);

/// Same enumeration, but streams each completed branch to `visit` instead
/// of materializing the list.
void run_exhaustive_visit(const Circuit& circuit, const StateVector& initial,
                          const std::function<void(const Branch&)>& visit);

/// |<a|b>|, in [0, 1] for unit vectors. Throws on dimension mismatch.
double state_overlap(const StateVector& a, const StateVector& b);

/// True iff |<a|b>| >= 1 - tol, i.e. b = e^{i theta} a within tolerance.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol = kTol);

/// Uniform double in [0, 1) from the top 53 bits of one generator draw;
/// bit-stable across platforms, unlike uniform_real_distribution.
double uniform_double(std::mt19937_64& rng);

/// Haar-random 2x2 unitary (random unit quaternion mapped to SU(2)).
Matrix2 random_unitary2(std::mt19937_64& rng);

/// Independent Haar-random single-qubit state on every qubit.
StateVector random_product_state(std::uint32_t n_qubits, std::mt19937_64& rng);

}  // namespace dqc
