#pragma once

#include <stdexcept>
#include <string>

namespace avoider_lab {

/// Malformed or out-of-range argument (bad text form, index out of range, duplicate values).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input that lies outside an operation's combinatorial domain,
/// e.g. a decomposable permutation handed to the bijection.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A height larger than the current peak-insertion list during reconstruction.
class InvalidHeight : public DomainError {
public:
    explicit InvalidHeight(const std::string& what) : DomainError(what) {}
};

/// Raised when an internal invariant is observed to fail. Never expected.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void ensure(bool condition, const char* message)
{
    if (!condition) throw InvariantViolation(message);
}

} // namespace detail

} // namespace avoider_lab
