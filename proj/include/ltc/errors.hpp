#pragma once

#include <stdexcept>
#include <string>

namespace ltc {

// All library failures derive from Error so callers can catch one type at the
// CLI boundary and map it to an exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (terms, types, machine files, program files).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Step budget exceeded during normalization.
struct FuelExhausted : Error {
    explicit FuelExhausted(const std::string& msg) : Error(msg) {}
};

// Not typable / claimed type not admitted / ill-formed type.
struct TypeError : Error {
    explicit TypeError(const std::string& msg) : Error(msg) {}
};

// Normal form does not match the expected encoding shape.
struct DecodeError : Error {
    explicit DecodeError(const std::string& msg) : Error(msg) {}
};

// Machine fails a structural precondition (copyless, BRTT conditions, ...).
struct ValidityError : Error {
    explicit ValidityError(const std::string& msg) : Error(msg) {}
};

// Bad argument at an op boundary: unknown symbol, index out of range,
// unbound variable, arity mismatch.
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

}  // namespace ltc
