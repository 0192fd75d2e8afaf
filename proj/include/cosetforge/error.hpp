#pragma once

#include <stdexcept>
#include <string>

namespace cosetforge {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violated an operation's precondition (non-prime modulus,
/// out-of-range coordinate, malformed combination, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured element cap or work budget.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A step that the underlying argument asserts always succeeds did not.
/// Raised by the coset extraction when no admissible refinement exists.
class InternalFailure : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}

} // namespace detail
} // namespace cosetforge
