#pragma once

#include <stdexcept>

namespace bcube {

// Invalid parameters or arguments that violate an operation's precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An instance (or an enumeration it would trigger) exceeds a configured guardrail.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

// A path or plan references links or hops that do not exist in the topology.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A claimed property (nonblocking, bound chain, ...) does not hold.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bcube
