#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equitheta {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration or combinatorial size cap would be exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Trailing coefficients of a truncated series failed to vanish.
class StabilizationFailure : public Error {
public:
    StabilizationFailure(const std::string& what, int failing_degree)
        : Error(what), failing_degree_(failing_degree) {}
    int failing_degree() const noexcept { return failing_degree_; }

private:
    int failing_degree_;
};

/// Numerical root finding did not produce trustworthy roots.
class NumericFailure : public Error {
public:
    using Error::Error;
};

/// Two computations that must agree did not (a bug, never a user error).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Global cap on the number of items a single enumeration may produce.
/// Initialised from EQUITHETA_ENUM_CAP when set, otherwise 10^7.
std::uint64_t enumeration_cap();
void set_enumeration_cap(std::uint64_t cap);

}  // namespace equitheta
