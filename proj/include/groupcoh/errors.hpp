#pragma once

#include <stdexcept>
#include <string>

namespace groupcoh {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when the invariant-factor divisibility chain m_i | m_{i+1} fails.
struct DivisibilityViolation : Error {
    using Error::Error;
};

/// Thrown when a group modulus is smaller than 2.
struct InvalidModulus : Error {
    using Error::Error;
};

/// Thrown when elements of different groups are combined.
struct GroupMismatch : Error {
    using Error::Error;
};

/// Thrown when a carry is requested with modulus <= 0.
struct NonPositiveModulus : Error {
    using Error::Error;
};

/// Thrown when a block or position index leaves its valid range.
struct IndexOutOfRange : Error {
    using Error::Error;
};

/// Thrown when a cochain or chain has the wrong degree for an operation.
struct DegreeMismatch : Error {
    using Error::Error;
};

/// Thrown when a coboundary test is applied to a table that is not a cocycle.
struct NotACocycle : Error {
    using Error::Error;
};

/// Thrown when an enumeration would exceed the configured budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// Thrown when a certified-integral quantity fails its integrality check.
struct NonIntegral : Error {
    using Error::Error;
};

/// Thrown when |G|/|G0| fails to be a perfect square.
struct NonSquare : Error {
    using Error::Error;
};

/// Thrown when serialized input fails validation.
struct ParseError : Error {
    using Error::Error;
};

} // namespace groupcoh
