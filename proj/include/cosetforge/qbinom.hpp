#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace cosetforge {

/// Arbitrary-precision non-negative integer. Counts in this library grow
/// like p^{r(N-r)} and leave 64 bits behind almost immediately.
using ExactCount = boost::multiprecision::cpp_int;

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

inline void require_prime(std::int64_t p) {
    require(is_prime(p), "modulus " + std::to_string(p) + " is not prime");
}

} // namespace detail

inline ExactCount prime_power(std::int64_t p, int e) {
    detail::require_prime(p);
    detail::require(e >= 0, "exponent must be non-negative");
    return boost::multiprecision::pow(ExactCount(p), static_cast<unsigned>(e));
}

/// Returns e with p^e == value, or nullopt when value is not a power of p.
inline std::optional<int> exact_log(std::int64_t p, ExactCount value) {
    if (value < 1) return std::nullopt;
    int e = 0;
    while (value % p == 0) {
        value /= p;
        ++e;
    }
    if (value != 1) return std::nullopt;
    return e;
}

/// Gaussian binomial (n choose m)_p. Zero outside 0 <= m <= n; 1 at m = 0.
///
/// The running product after k factors is itself (n-m+k choose k)_p, so each
/// division is exact and no rational intermediate is needed.
inline ExactCount gaussian_binomial(int n, int m, std::int64_t p) {
    detail::require_prime(p);
    if (n < 0 || m < 0 || m > n) return 0;
    ExactCount result = 1;
    for (int i = 1; i <= m; ++i) {
        ExactCount num = boost::multiprecision::pow(ExactCount(p), static_cast<unsigned>(n - m + i)) - 1;
        ExactCount den = boost::multiprecision::pow(ExactCount(p), static_cast<unsigned>(i)) - 1;
        result *= num;
        if (result % den != 0) throw InternalFailure("inexact q-binomial division");
        result /= den;
    }
    return result;
}

inline std::string to_decimal(const ExactCount& v) { return v.str(); }

} // namespace cosetforge
