#pragma once

#include <stdexcept>
#include <string>

namespace mateq {

/// Argument outside the mathematical domain of a function (e.g. Lambert W below -1/e).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller supplied parameters that violate a documented precondition.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iteration hit its cap. Treated as an internal failure, not a user error.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A solver invariant was violated (e.g. a predicted root could not be bracketed).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace mateq
