#include "dqc/gate.hpp"

#include <cmath>
#include <sstream>

namespace dqc {

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::U1q: return "u1q";
        case GateKind::Cnot: return "cx";
        case GateKind::Swap: return "swap";
        case GateKind::Measure: return "measure";
        case GateKind::Reset: return "reset";
        case GateKind::IfBit: return "if";
    }
    return "?";
}

bool Matrix2::is_unitary(double tol) const {
    // U^dagger U == I, entrywise.
    const Complex a = m[0], b = m[1], c = m[2], d = m[3];
    const Complex e00 = std::conj(a) * a + std::conj(c) * c;
    const Complex e01 = std::conj(a) * b + std::conj(c) * d;
    const Complex e10 = std::conj(b) * a + std::conj(d) * c;
    const Complex e11 = std::conj(b) * b + std::conj(d) * d;
    return std::abs(e00 - 1.0) <= tol && std::abs(e01) <= tol && std::abs(e10) <= tol &&
           std::abs(e11 - 1.0) <= tol;
}

Gate Gate::u1q(QubitId q, const Matrix2& u) {
    if (!u.is_unitary()) {
        throw ValidationError("u1q matrix is not unitary within tolerance");
    }
    Gate g{GateKind::U1q, q};
    g.matrix = u;
    return g;
}

bool Gate::operator==(const Gate& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::Reset:
            return q0 == other.q0;
        case GateKind::U1q:
            return q0 == other.q0 && matrix == other.matrix;
        case GateKind::Cnot:
        case GateKind::Swap:
            return q0 == other.q0 && q1 == other.q1;
        case GateKind::Measure:
            return q0 == other.q0 && clbit == other.clbit;
        case GateKind::IfBit:
            return q0 == other.q0 && clbit == other.clbit && inner == other.inner;
    }
    return false;
}

std::string Gate::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case GateKind::Cnot:
        case GateKind::Swap:
            os << gate_kind_name(kind) << " q[" << q0 << "],q[" << q1 << "]";
            break;
        case GateKind::Measure:
            os << "measure q[" << q0 << "] -> c[" << clbit << "]";
            break;
        case GateKind::IfBit:
            os << "if(c[" << clbit << "]==1) " << gate_kind_name(inner) << " q[" << q0 << "]";
            break;
        default:
            os << gate_kind_name(kind) << " q[" << q0 << "]";
            break;
    }
    return os.str();
}

}  // namespace dqc
