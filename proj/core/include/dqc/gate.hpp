#pragma once

#include "dqc/types.hpp"

#include <array>
#include <cstddef>
#include <string>

namespace dqc {

enum class GateKind : std::uint8_t {
    H,
    X,
    Z,
    U1q,
    Cnot,
    Swap,
    Measure,
    Reset,
    IfBit,
};

const char* gate_kind_name(GateKind kind);

/// 2x2 complex matrix in row-major order.
struct Matrix2 {
    std::array<Complex, 4> m{};

    Complex& operator()(std::size_t row, std::size_t col) { return m[2 * row + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return m[2 * row + col]; }

    bool is_unitary(double tol = kTol) const;
    bool operator==(const Matrix2&) const = default;
};

/// One circuit instruction. The meaning of the operand fields depends on
/// `kind`:
///   H/X/Z/U1q/Reset  -> q0
///   Cnot             -> q0 control, q1 target
///   Swap             -> q0, q1
///   Measure          -> q0 measured into clbit
///   IfBit            -> inner (X or Z) applied to q0 iff clbit reads 1
struct Gate {
    GateKind kind{GateKind::H};
    QubitId q0{0};
    QubitId q1{0};
    ClbitId clbit{0};
    GateKind inner{GateKind::X};  // IfBit body
    Matrix2 matrix{};             // U1q only

    static Gate h(QubitId q) { return {GateKind::H, q}; }
    static Gate x(QubitId q) { return {GateKind::X, q}; }
    static Gate z(QubitId q) { return {GateKind::Z, q}; }
    /// Throws ValidationError unless `u` is unitary within kTol.
    static Gate u1q(QubitId q, const Matrix2& u);
    static Gate cnot(QubitId control, QubitId target) {
        return {GateKind::Cnot, control, target};
    }
    static Gate swap(QubitId a, QubitId b) { return {GateKind::Swap, a, b}; }
    static Gate measure(QubitId q, ClbitId c) { return {GateKind::Measure, q, 0, c}; }
    static Gate reset(QubitId q) { return {GateKind::Reset, q}; }
    static Gate if_x(ClbitId c, QubitId q) { return {GateKind::IfBit, q, 0, c, GateKind::X}; }
    static Gate if_z(ClbitId c, QubitId q) { return {GateKind::IfBit, q, 0, c, GateKind::Z}; }

    std::size_t num_qubits() const { return kind == GateKind::Cnot || kind == GateKind::Swap ? 2 : 1; }
    bool is_two_qubit() const { return num_qubits() == 2; }
    bool is_unitary_kind() const {
        return kind != GateKind::Measure && kind != GateKind::Reset && kind != GateKind::IfBit;
    }
    bool uses_clbit() const { return kind == GateKind::Measure || kind == GateKind::IfBit; }
    bool touches(QubitId q) const { return q0 == q || (is_two_qubit() && q1 == q); }

    bool operator==(const Gate& other) const;

    std::string to_string() const;
};

}  // namespace dqc
