#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dqc {

using QubitId = std::uint32_t;
using ClbitId = std::uint32_t;
using Complex = std::complex<double>;

/// Numerical tolerance used for unitarity, normalization and state
/// equivalence checks throughout the library.
inline constexpr double kTol = 1e-10;

/// Branches whose cumulative probability falls below this threshold are
/// treated as impossible and dropped from exhaustive enumeration.
inline constexpr double kBranchEps = 1e-12;

/// Default ceiling on statevector width. 2^22 amplitudes keeps every
/// exhaustive verification run desk-scale.
inline constexpr std::uint32_t kDefaultMaxQubits = 22;

/// Input text could not be parsed (circuit or network config).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A structural invariant was violated (bad circuit, bad topology, bad plan).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A resource limit was exceeded (not enough data qubits, simulator cap).
class CapacityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace dqc
