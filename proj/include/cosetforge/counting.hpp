#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bound.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "qbinom.hpp"

namespace cosetforge {

/// Number of subgroups of order p^r in the abelian p-group of type alpha:
///
///   sum over beta in alpha with |beta| = r of
///   prod_{i=1}^{alpha_1} (a*_i - b*_{i+1} choose b*_i - b*_{i+1})_p p^{(a*_i - b*_i) b*_{i+1}}
///
/// where a* and b* are the conjugates of alpha and beta.
inline ExactCount count_subgroups(std::int64_t p, const Partition& alpha, int r) {
    detail::require_prime(p);
    const Partition a_star = conjugate(alpha);
    ExactCount total = 0;
    for (const auto& beta : enumerate_subtypes(alpha, r)) {
        const Partition b_star = conjugate(beta);
        ExactCount term = 1;
        for (std::size_t i = 0; i < static_cast<std::size_t>(alpha.largest()); ++i) {
            const int a = a_star[i], b = b_star[i], b_next = b_star[i + 1];
            term *= gaussian_binomial(a - b_next, b - b_next, p);
            term *= prime_power(p, (a - b) * b_next);
        }
        total += term;
    }
    return total;
}

/// Cosets of subgroups of order p^r: each subgroup contributes its index.
inline ExactCount count_cosets(std::int64_t p, const Partition& alpha, int r) {
    detail::require_prime(p);
    if (r < 0 || r > weight(alpha)) return 0;
    return count_subgroups(p, alpha, r) * prime_power(p, weight(alpha) - r);
}

/// 2^{r-1} p^{Nr + min(r,N) r} for the rectangular type (a,...,a), N parts.
/// At r = 0 the formula gives 1/2; the bound is clamped to 1.
inline BoundValue subgroup_count_upper_bound(std::int64_t p, int n, int a, int r) {
    detail::require_prime(p);
    detail::require(n >= 1 && a >= 1, "N and a must be positive");
    detail::require(r >= 0 && r <= n * a, "r must lie in [0, N*a]");
    ExactCount v = 1;
    if (r > 0) v = prime_power(2, r - 1) * prime_power(p, n * r + std::min(r, n) * r);
    auto b = BoundValue::from_integer(BoundKind::upper, std::move(v));
    b.constants = {{"p", double(p)}, {"N", double(n)}, {"a", double(a)}, {"r", double(r)}};
    return b;
}

/// p^{(a/(a-1)) N r - 2 r b1}, a lower bound on the number of order-p^r
/// subgroups of any group of order p^{Na} whose cyclic factors all have
/// exponent at most a-1.
inline BoundValue subgroup_count_lower_bound(std::int64_t p, int n, int a, int r, int b1) {
    detail::require_prime(p);
    detail::require(a >= 2, "a must be at least 2 (the exponent divides by a-1)");
    detail::require(n >= 1, "N must be positive");
    detail::require(r >= 0, "r must be non-negative");
    detail::require(b1 >= 1 && b1 >= r, "b1 must be positive and at least r");
    RationalPower pw{p, static_cast<long long>(a) * n * r - 2LL * r * b1 * (a - 1), a - 1};
    auto b = BoundValue::from_real(BoundKind::lower, pow(Real(p), Real(pw.num) / Real(pw.den)));
    b.power = pw;
    b.constants = {{"p", double(p)}, {"N", double(n)}, {"a", double(a)}, {"r", double(r)}, {"b1", double(b1)}};
    return b;
}

struct CosetBounds {
    BoundValue lower;
    BoundValue upper;
};

/// Coset-count versions of the two subgroup bounds: each is multiplied by
/// the index p^{Na-r}, and the unspecified linear term enters as
/// p^{-+slack*N}. The lower bound uses b1 = max(r, 1).
inline CosetBounds coset_count_bounds(std::int64_t p, int n, int a, int r, double slack = 2.0) {
    detail::require(slack >= 0, "slack coefficient must be non-negative");
    detail::require(r <= n * a, "r must lie in [0, N*a]");
    auto up = subgroup_count_upper_bound(p, n, a, r);
    auto lo = subgroup_count_lower_bound(p, n, a, r, std::max(r, 1));
    const long long index = static_cast<long long>(n) * a - r;
    const Real shift = Real(slack) * n;

    CosetBounds out;
    out.upper = BoundValue::from_real(BoundKind::upper, Real(*up.integer) * pow(Real(p), Real(index) + shift));
    // exact integer when the slack exponent is integral
    if (slack * n == std::floor(slack * n))
        out.upper.integer = *up.integer * prime_power(p, static_cast<int>(index + static_cast<long long>(slack * n)));
    out.lower = BoundValue::from_real(BoundKind::lower, lo.value() * pow(Real(p), Real(index) - shift));
    if (slack * n == std::floor(slack * n)) {
        auto pw = *lo.power;
        pw.num += (index - static_cast<long long>(slack * n)) * pw.den;
        out.lower.power = pw;
    }
    out.upper.constants = up.constants;
    out.lower.constants = lo.constants;
    out.upper.constants["slack"] = slack;
    out.lower.constants["slack"] = slack;
    return out;
}

/// The divisor form: r = K = N / R.
inline CosetBounds coset_count_bounds_for_divisor(std::int64_t p, int n, int a, int divisor, double slack = 2.0) {
    detail::require(divisor >= 1 && n % divisor == 0, "R must be a positive divisor of N");
    return coset_count_bounds(p, n, a, n / divisor, slack);
}

/// Smallest e with p^e >= value.
inline int ceil_log(std::int64_t p, const ExactCount& value) {
    int e = 0;
    ExactCount v = 1;
    while (v < value) {
        v *= p;
        ++e;
    }
    return e;
}

/// L + log_p L, the exponent lost when extracting a coset from a signed
/// combination with at most L terms of each sign.
inline BoundValue lambda_constant(long long big_l, std::int64_t p) {
    detail::require_prime(p);
    detail::require(big_l >= 1, "L must be at least 1");
    auto b = BoundValue::from_real(BoundKind::exact, Real(big_l) + log(Real(big_l)) / log(Real(p)));
    b.constants = {{"L", double(big_l)}, {"p", double(p)}};
    return b;
}

/// ceil(L + log_p L) = L + ceil(log_p L), computed in integers.
inline int lambda_ceiling(long long big_l, std::int64_t p) {
    detail::require_prime(p);
    detail::require(big_l >= 1, "L must be at least 1");
    return static_cast<int>(big_l) + ceil_log(p, ExactCount(big_l));
}

/// exp(exp(D * norm^4)), the length bound for coset-ring representations
/// of an idempotent of the given norm.
inline BoundValue green_sanders_L(double norm, double d) {
    detail::require(norm > 0, "norm must be positive");
    detail::require(d >= 0, "D must be non-negative");
    auto b = BoundValue::tower(BoundKind::upper, 2, Real(d) * pow(Real(norm), 4));
    b.constants = {{"C", norm}, {"D", d}};
    return b;
}

/// C1 * exp(C2 n^3 log n), bounding the number of non-degenerate solutions of
/// an (n+1)-term unit equation.
inline BoundValue evertse_bound(int n, double c1, double c2) {
    detail::require(n >= 1, "n must be at least 1");
    detail::require(c1 > 0 && c2 >= 0, "C1 must be positive and C2 non-negative");
    Real nn(n);
    auto b = BoundValue::tower(BoundKind::upper, 1, log(Real(c1)) + Real(c2) * nn * nn * nn * log(nn));
    b.constants = {{"C1", c1}, {"C2", c2}, {"n", double(n)}};
    return b;
}

enum class DistortionMode { p_group, no_p_subgroup };

/// c (log log n)^{1/4} for p-groups, c (log log log n)^{1/4} for groups
/// without a p-subgroup. Natural logarithms throughout.
inline BoundValue distortion_floor(long long n, DistortionMode mode, double c) {
    detail::require(c > 0, "c must be positive");
    detail::require(n >= 1, "n must be positive");
    Real v = log(Real(n));
    int depth = mode == DistortionMode::p_group ? 2 : 3;
    for (int i = 1; i < depth; ++i) {
        detail::require(v > 0, "n too small: iterated logarithm undefined");
        v = log(v);
    }
    detail::require(v > 0, "n too small: iterated logarithm not positive");
    auto b = BoundValue::from_real(BoundKind::lower, Real(c) * pow(v, Real(0.25)));
    b.constants = {{"c", c}, {"n", double(n)}};
    return b;
}

/// A direct sum of countably many copies of Z_{q^s} for each listed (q, s).
struct GroupClassSpec {
    std::vector<std::pair<std::int64_t, int>> factors;

    static GroupClassSpec parse(const std::string& text) {
        GroupClassSpec out;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            std::size_t caret = item.find('^');
            detail::require(caret != std::string::npos, "factor '" + item + "' is not of the form q^s");
            try {
                out.factors.emplace_back(std::stoll(item.substr(0, caret)), std::stoi(item.substr(caret + 1)));
            } catch (const std::logic_error&) {
                throw PreconditionError("factor '" + item + "' is not of the form q^s");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        out.validate();
        return out;
    }

    void validate() const {
        for (auto [q, s] : factors) {
            detail::require_prime(q);
            detail::require(s >= 1, "exponents must be at least 1");
        }
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i)
            s += (i ? "," : "") + std::to_string(factors[i].first) + "^" + std::to_string(factors[i].second);
        return s;
    }
};

/// True iff every factor (p, s) of source is dominated by a factor (p, r)
/// of target with the same prime and s <= r.
inline bool representable(const GroupClassSpec& source, const GroupClassSpec& target) {
    source.validate();
    target.validate();
    for (auto [p, s] : source.factors) {
        bool found = false;
        for (auto [q, r] : target.factors)
            if (p == q && s <= r) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

} // namespace cosetforge
