#pragma once

#include <stdexcept>

namespace fps {

// Caller misused an operation (bad argument combination, precondition violated).
// The CLI maps this to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data is outside an operation's domain (bad literal, index outside a
// table, non-prime p, ...). The CLI maps this to exit code 3.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A verified internal identity failed. This never signals bad input; it
// signals a bug in the library itself.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace fps
