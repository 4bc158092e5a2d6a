#pragma once

#include <iosfwd>
#include <string>

#include "dqc/circuit.hpp"

namespace dqc {

// Parses the OpenQASM 2.0 subset:
//   OPENQASM 2.0;            (optional)
//   include "qelib1.inc";    (optional, ignored)
//   qreg q[n]; creg c[m];
//   h|x|z q[i]; cx|swap q[i],q[j]; measure q[i] -> c[j]; reset q[i];
//   if(c[j]==1) x|z q[i];
// One statement per line, `//` comments. Throws ParseError with a 1-based
// line number on malformed input.
Circuit parse_qasm(const std::string& text);
Circuit parse_qasm_file(const std::string& path);

// Emits the same subset. Throws ValidationError if the circuit contains a
// gate with no textual form (U1q).
std::string emit_qasm(const Circuit& circuit);
void write_qasm_file(const Circuit& circuit, const std::string& path);

}  // namespace dqc
