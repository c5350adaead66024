#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hptkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands whose graded shapes do not fit together.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A result failed its own post-check; indicates a bug.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

/// A mathematical statement that must hold was found to be false.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Malformed textual or JSON input. `location` names where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& location, const std::string& message)
        : Error(location.empty() ? message : location + ": " + message), location_(location) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// A Neumann series did not reach a zero term within its iteration cap.
class NonNilpotentError : public Error {
public:
    NonNilpotentError(const std::string& message, std::size_t iterations)
        : Error(message), iterations_(iterations) {}

    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

/// N + h∂ or N + ∂h could not be certified invertible (series did not terminate).
class InvertibilityUnestablished : public NonNilpotentError {
public:
    InvertibilityUnestablished(const std::string& operator_name, std::size_t iterations)
        : NonNilpotentError("invertibility of " + operator_name +
                                " not established: Neumann series still nonzero after " +
                                std::to_string(iterations) + " iterations",
                            iterations),
          operator_name_(operator_name) {}

    const std::string& operator_name() const noexcept { return operator_name_; }

private:
    std::string operator_name_;
};

}  // namespace hptkit
