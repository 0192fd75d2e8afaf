#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qbinom.hpp"

namespace cosetforge {

/// 50-digit binary float. Its exponent range comfortably covers the
/// intermediate values of every evaluator here.
using Real = boost::multiprecision::cpp_bin_float_50;

enum class BoundKind { exact, upper, lower };

inline const char* to_string(BoundKind k) {
    switch (k) {
    case BoundKind::exact: return "exact";
    case BoundKind::upper: return "upper";
    case BoundKind::lower: return "lower";
    }
    return "?";
}

/// p^{num/den}, kept symbolically so integer comparisons stay exact.
struct RationalPower {
    std::int64_t p = 2;
    long long num = 0;
    long long den = 1;

    /// count >= p^{num/den}, decided in integers as count^den >= p^num.
    bool below_or_equal(const ExactCount& count) const {
        if (num <= 0) return count >= 1;
        return boost::multiprecision::pow(count, static_cast<unsigned>(den)) >=
               boost::multiprecision::pow(ExactCount(p), static_cast<unsigned>(num));
    }
};

/// Values beyond this are reported as an exponential tower instead.
inline const Real kSymbolicThreshold = Real("1e300");

inline std::string format_real(const Real& v, int digits = 17) {
    std::string s = v.str(digits, std::ios_base::fmtflags(0));
    if (s.find('e') == std::string::npos && s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

/// A bound or constant. The value is exp applied `levels` times to `top`;
/// levels == 0 means plain `top`. When an exact integer is known it is kept
/// alongside.
struct BoundValue {
    BoundKind kind = BoundKind::exact;
    std::optional<ExactCount> integer;
    std::optional<RationalPower> power;
    int levels = 0;
    Real top = 0;
    std::map<std::string, double> constants;

    static BoundValue from_integer(BoundKind kind, ExactCount v) {
        BoundValue b;
        b.kind = kind;
        b.top = Real(v);
        b.integer = std::move(v);
        return b;
    }

    static BoundValue from_real(BoundKind kind, Real v) {
        BoundValue b;
        b.kind = kind;
        b.top = std::move(v);
        return b;
    }

    /// exp^levels(top).
    static BoundValue tower(BoundKind kind, int levels, Real top) {
        BoundValue b;
        b.kind = kind;
        b.levels = levels;
        b.top = std::move(top);
        return b;
    }

    /// True when the value exceeds 1e300 and only the symbolic form is reported.
    bool is_symbolic() const {
        if (integer) return false;
        Real v = top;
        for (int i = 0; i < levels; ++i) {
            if (v > log(kSymbolicThreshold)) return true;
            v = exp(v);
        }
        return v > kSymbolicThreshold;
    }

    /// Numeric value; only meaningful when !is_symbolic().
    Real value() const {
        if (integer) return Real(*integer);
        Real v = top;
        for (int i = 0; i < levels; ++i) v = exp(v);
        return v;
    }

    /// "exp(exp(5.0625))" style rendering of the tower.
    std::string symbolic() const {
        std::string s = format_real(top);
        for (int i = 0; i < levels; ++i) s = "exp(" + s + ")";
        return s;
    }

    /// Exact integer when known, the number when finite, else the tower.
    std::string str() const {
        if (integer) return integer->str();
        if (is_symbolic()) return symbolic();
        return format_real(value());
    }
};

} // namespace cosetforge
