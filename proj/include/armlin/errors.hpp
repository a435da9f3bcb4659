#pragma once

#include <stdexcept>
#include <string>

namespace armlin {

// Dimension/cap mismatches, malformed values, broken invariants.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bad numeric parameter (out of stated domain).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A small divisor vanished: the spectrum violates non-resonance.
struct ResonanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input file / JSON schema problems.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace armlin
