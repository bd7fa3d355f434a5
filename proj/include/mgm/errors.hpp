#pragma once

#include <stdexcept>
#include <string>

namespace mgm {

// A parameter or input violates a mathematical precondition (CLI exit code 2).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Symbols outside {0,1}.
class InvalidAlphabetError : public DomainError {
public:
    using DomainError::DomainError;
};

// A request would exceed a configured size cap.
class CapacityError : public DomainError {
public:
    using DomainError::DomainError;
};

// The input is well-formed but carries no information (empty sets, identical
// words, too few occupied scales for a fit).
class DegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace mgm
