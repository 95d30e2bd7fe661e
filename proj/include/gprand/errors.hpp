#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gprand {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certified floor/fractional-part decision failed: the ball contains an
// integer in its interior, so the floor of the true value is ambiguous at
// the current precision.  Callers are expected to retry at higher precision.
struct StraddlesInteger : Error {
    using Error::Error;
};

// The doubling retry ladder reached its cap without resolving a floor (or a
// half-boundary) decision.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// A ball is too wide for the requested conversion.
struct InsufficientPrecision : Error {
    using Error::Error;
};

struct SyntaxError : Error {
    SyntaxError(std::size_t off, std::string expect, const std::string& what)
        : Error(what), offset(off), expected(std::move(expect)) {}
    std::size_t offset;    // byte offset into the input text
    std::string expected;  // human-readable expected-token set
};

struct NotTheoremShape : Error {
    explicit NotTheoremShape(const std::string& reason) : Error(reason) {}
};

struct DomainError : Error {
    using Error::Error;
};

struct OutOfRange : Error {
    using Error::Error;
};

struct OutOfDomain : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

// An integer combination of the probed constants is (or is indistinguishable
// from) an exact integer; carries the offending coefficient vector.
struct RationalRelation : Error {
    RationalRelation(const std::string& what, std::vector<std::int64_t> w)
        : Error(what), witness(std::move(w)) {}
    std::vector<std::int64_t> witness;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

}  // namespace gprand
