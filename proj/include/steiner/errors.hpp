#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Combining values that live in different fields.
struct FieldMismatchError : Error {
    using Error::Error;
};

/// An operation's stated precondition does not hold for the given input.
struct PreconditionError : Error {
    using Error::Error;
};

/// Structurally broken input (zero vector as a projective point, f = 0, ...).
struct DegenerateInputError : Error {
    using Error::Error;
};

/// Input outside the domain on which the operation is defined.
struct UndefinedInputError : Error {
    using Error::Error;
};

/// A computation strategy that cannot run on the given field or shape.
struct StrategyError : Error {
    using Error::Error;
};

/// An internal consistency check failed (cross-checked quantities disagree).
struct VerificationError : Error {
    using Error::Error;
};

/// Malformed serialized data or text syntax.
struct FormatError : Error {
    using Error::Error;
};

} // namespace steiner
