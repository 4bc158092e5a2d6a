#include "dqc/statevector.hpp"

#include <cmath>

namespace dqc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kTwoPi = 6.28318530717958647692;

void check_qubit(const StateVector& s, QubitId q) {
    if (q >= s.n_qubits()) {
        throw ValidationError("qubit " + std::to_string(q) + " outside state of " +
                              std::to_string(s.n_qubits()) + " qubits");
    }
}

}  // namespace

StateVector::StateVector(std::uint32_t n_qubits, std::uint32_t cap) : n_qubits_(n_qubits) {
    if (n_qubits > cap) {
        throw CapacityError("statevector of " + std::to_string(n_qubits) +
                            " qubits exceeds the cap of " + std::to_string(cap));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::uint32_t n_qubits, std::vector<Complex> amps,
                                         std::uint32_t cap) {
    StateVector s(n_qubits, cap);
    if (amps.size() != s.dim()) {
        throw ValidationError("amplitude count " + std::to_string(amps.size()) +
                              " does not match 2^" + std::to_string(n_qubits));
    }
    s.amps_ = std::move(amps);
    if (std::abs(s.norm() - 1.0) > kTol) {
        throw ValidationError("statevector is not normalized");
    }
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const Complex& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

double StateVector::probability_of_one(QubitId q) const {
    check_qubit(*this, q);
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) p += std::norm(amps_[i]);
    }
    return p;
}

void StateVector::apply_h(QubitId q) {
    check_qubit(*this, q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[i | bit];
        amps_[i] = (a0 + a1) * kInvSqrt2;
        amps_[i | bit] = (a0 - a1) * kInvSqrt2;
    }
}

void StateVector::apply_x(QubitId q) {
    check_qubit(*this, q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
    }
}

void StateVector::apply_z(QubitId q) {
    check_qubit(*this, q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_u1q(const Matrix2& u, QubitId q) {
    check_qubit(*this, q);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[i | bit];
        amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amps_[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void StateVector::apply_cnot(QubitId control, QubitId target) {
    check_qubit(*this, control);
    check_qubit(*this, target);
    if (control == target) throw ValidationError("cx has identical operands");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
}

void StateVector::apply_swap(QubitId a, QubitId b) {
    check_qubit(*this, a);
    check_qubit(*this, b);
    if (a == b) throw ValidationError("swap has identical operands");
    const std::size_t abit = std::size_t{1} << a;
    const std::size_t bbit = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & abit) && !(i & bbit)) std::swap(amps_[i], amps_[(i & ~abit) | bbit]);
    }
}

void StateVector::apply_unitary_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::H: apply_h(g.q0); return;
        case GateKind::X: apply_x(g.q0); return;
        case GateKind::Z: apply_z(g.q0); return;
        case GateKind::U1q: apply_u1q(g.matrix, g.q0); return;
        case GateKind::Cnot: apply_cnot(g.q0, g.q1); return;
        case GateKind::Swap: apply_swap(g.q0, g.q1); return;
        case GateKind::Measure:
        case GateKind::Reset:
        case GateKind::IfBit:
            throw ValidationError(std::string(gate_kind_name(g.kind)) +
                                  " needs a run context (run_sampled / run_exhaustive)");
    }
}

void StateVector::collapse(QubitId q, bool outcome, double outcome_probability) {
    check_qubit(*this, q);
    if (outcome_probability <= 0.0) {
        throw ValidationError("collapse onto a zero-probability outcome");
    }
    const std::size_t bit = std::size_t{1} << q;
    const double scale = 1.0 / std::sqrt(outcome_probability);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const bool is_one = (i & bit) != 0;
        amps_[i] = is_one == outcome ? amps_[i] * scale : Complex{};
    }
}

StateVector apply(const StateVector& state, const Gate& gate,
                  const std::vector<std::uint8_t>& classical_bits) {
    StateVector out = state;
    if (gate.kind == GateKind::IfBit) {
        if (gate.clbit >= classical_bits.size()) {
            throw ValidationError("if-gate reads clbit " + std::to_string(gate.clbit) +
                                  " outside the provided classical register");
        }
        if (classical_bits[gate.clbit]) {
            if (gate.inner == GateKind::X) {
                out.apply_x(gate.q0);
            } else {
                out.apply_z(gate.q0);
            }
        }
        return out;
    }
    out.apply_unitary_gate(gate);
    return out;
}

namespace {

void check_initial(const Circuit& circuit, const StateVector& initial) {
    if (!validate(circuit).empty()) {
        throw ValidationError("run requires a valid circuit");
    }
    if (initial.n_qubits() != circuit.n_qubits()) {
        throw ValidationError("initial state has " + std::to_string(initial.n_qubits()) +
                              " qubits, circuit expects " + std::to_string(circuit.n_qubits()));
    }
}

// Walks gates [from, end) mutating the branch in place, forking at each
// Measure or nondeterministic Reset (unless an rng resolves them).
struct Executor {
    const Circuit& circuit;
    const std::function<void(const Branch&)>& sink;
    std::mt19937_64* rng = nullptr;  // sampled mode

    void finish(Branch&& b) { sink(b); }

    void run(Branch b, std::size_t from) {
        for (std::size_t i = from; i < circuit.gates().size(); ++i) {
            const Gate& g = circuit.gates()[i];
            switch (g.kind) {
                case GateKind::Measure:
                case GateKind::Reset: {
                    const double p1 = b.final_state.probability_of_one(g.q0);
                    const double p0 = 1.0 - p1;
                    if (rng) {
                        const bool one = uniform_double(*rng) < p1;
                        resolve(b, g, one, one ? p1 : p0);
                        break;
                    }
                    if (p1 > kBranchEps && p0 > kBranchEps) {
                        Branch other = b;
                        resolve(other, g, false, p0);
                        run(std::move(other), i + 1);
                        resolve(b, g, true, p1);
                        break;
                    }
                    const bool one = p1 > p0;
                    resolve(b, g, one, one ? p1 : p0);
                    break;
                }
                case GateKind::IfBit:
                    if (b.classical_bits[g.clbit]) {
                        if (g.inner == GateKind::X) {
                            b.final_state.apply_x(g.q0);
                        } else {
                            b.final_state.apply_z(g.q0);
                        }
                    }
                    break;
                default:
                    b.final_state.apply_unitary_gate(g);
                    break;
            }
        }
        finish(std::move(b));
    }

    static void resolve(Branch& b, const Gate& g, bool outcome, double probability) {
        b.final_state.collapse(g.q0, outcome, probability);
        b.probability *= probability;
        if (g.kind == GateKind::Measure) {
            b.classical_bits[g.clbit] = outcome ? 1 : 0;
        } else if (outcome) {            // Reset: measured 1, flip back to |0>
            b.final_state.apply_x(g.q0);
        }
    }
};

}  // namespace

Branch run_sampled(const Circuit& circuit, const StateVector& initial, std::uint64_t seed) {
    check_initial(circuit, initial);
    std::mt19937_64 rng(seed);
    std::vector<Branch> out;
    const std::function<void(const Branch&)> sink = [&](const Branch& b) { out.push_back(b); };
    Executor ex{circuit, sink, &rng};  // the rng short-circuits forking
    ex.run(Branch{std::vector<std::uint8_t>(circuit.n_clbits(), 0), 1.0, initial}, 0);
    return std::move(out.front());
}

void run_exhaustive_visit(const Circuit& circuit, const StateVector& initial,
                          const std::function<void(const Branch&)>& visit) {
    check_initial(circuit, initial);
    std::size_t n_measures = 0;
    for (const Gate& g : circuit.gates()) {
        if (g.kind == GateKind::Measure) ++n_measures;
    }
    if (n_measures > 20) {
        throw CapacityError("run_exhaustive supports at most 20 measurements, got " +
                            std::to_string(n_measures));
    }
    Executor ex{circuit, visit, nullptr};
    ex.run(Branch{std::vector<std::uint8_t>(circuit.n_clbits(), 0), 1.0, initial}, 0);
}

std::vector<Branch> run_exhaustive(const Circuit& circuit, const StateVector& initial) {
    std::vector<Branch> out;
    run_exhaustive_visit(circuit, initial, [&](const Branch& b) { out.push_back(b); });
    return out;
}

double state_overlap(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ValidationError("state dimension mismatch: " + std::to_string(a.n_qubits()) +
                              " vs " + std::to_string(b.n_qubits()) + " qubits");
    }
    Complex inner{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        inner += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return std::abs(inner);
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    return state_overlap(a, b) >= 1.0 - tol;
}

double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Matrix2 random_unitary2(std::mt19937_64& rng) {
    // Box-Muller on bit-stable uniforms; a unit quaternion (w,x,y,z) maps to
    // SU(2) as [[w+iz, y+ix], [-y+ix, w-iz]].
    double n[4];
    for (int i = 0; i < 4; i += 2) {
        double u1 = uniform_double(rng);
        while (u1 == 0.0) u1 = uniform_double(rng);
        const double u2 = uniform_double(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        n[i] = r * std::cos(kTwoPi * u2);
        n[i + 1] = r * std::sin(kTwoPi * u2);
    }
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] + n[3] * n[3]);
    const double w = n[0] / len, x = n[1] / len, y = n[2] / len, z = n[3] / len;
    Matrix2 u;
    u(0, 0) = Complex(w, z);
    u(0, 1) = Complex(y, x);
    u(1, 0) = Complex(-y, x);
    u(1, 1) = Complex(w, -z);
    return u;
}

StateVector random_product_state(std::uint32_t n_qubits, std::mt19937_64& rng) {
    StateVector s(n_qubits);
    for (QubitId q = 0; q < n_qubits; ++q) {
        s.apply_u1q(random_unitary2(rng), q);
    }
    return s;
}

}  // namespace dqc
