#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oplab {

// Invalid construction input: bad ring spec, inconsistent operator spec,
// malformed file. Maps to CLI exit 3.
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An enumeration or exhaustive check would exceed its size guard. Maps to
// CLI exit 2. Carries the estimate that tripped the guard.
struct EnumerationRefused : std::runtime_error {
    std::uint64_t estimated;
    explicit EnumerationRefused(std::uint64_t est)
        : std::runtime_error("enumeration refused: about " + std::to_string(est) +
                             " candidates exceed the size guard"),
          estimated(est) {}
};

// A stated hypothesis of the operation does not hold for the inputs
// (oracle not additive, characteristic too small where an assertion was
// requested). Maps to CLI exit 2.
struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The function handed to polarization is not the trace of any symmetric
// multi-additive map of the requested arity. Carries the witness.
struct NotMonomialTrace : std::runtime_error {
    std::vector<std::uint32_t> increments; // offending increment tuple
    std::uint32_t base_point;
    NotMonomialTrace(std::vector<std::uint32_t> incr, std::uint32_t x)
        : std::runtime_error("not a degree-n monomial trace"), increments(std::move(incr)), base_point(x) {}
};

} // namespace oplab
