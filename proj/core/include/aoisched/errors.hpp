#pragma once

#include <stdexcept>

namespace aoisched {

/// Caller supplied something outside an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A constructor produced a schedule that failed its own verification.
/// Always a bug in this library, never a property of the input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// State or time budget exhausted (oracle enumeration, benchmark time limit).
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace aoisched
