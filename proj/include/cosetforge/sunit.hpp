#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "counting.hpp"
#include "error.hpp"
#include "qbinom.hpp"

namespace cosetforge {

namespace detail {
__extension__ typedef __int128 wide_int;
} // namespace detail

/// Sorted set of distinct primes.
class PrimeSet {
public:
    PrimeSet() = default;
    PrimeSet(std::initializer_list<std::int64_t> primes) : PrimeSet(std::vector<std::int64_t>(primes)) {}
    explicit PrimeSet(std::vector<std::int64_t> primes) : primes_(std::move(primes)) {
        std::sort(primes_.begin(), primes_.end());
        detail::require(std::adjacent_find(primes_.begin(), primes_.end()) == primes_.end(), "primes must be distinct");
        for (auto q : primes_) detail::require_prime(q);
    }

    const std::vector<std::int64_t>& primes() const { return primes_; }
    bool contains(std::int64_t q) const { return std::binary_search(primes_.begin(), primes_.end(), q); }

private:
    std::vector<std::int64_t> primes_;
};

/// Nonzero integers, kept sorted in descending order.
struct SUnitTuple {
    std::vector<std::int64_t> entries;
    bool canonical = true;

    auto operator<=>(const SUnitTuple&) const = default;
};

/// True iff every prime factor of |x| lies in M. 1 qualifies.
inline bool is_m_unit(std::int64_t x, const PrimeSet& m) {
    detail::require(x != 0, "zero is not a unit");
    if (x < 0) {
        detail::require(x != INT64_MIN, "value out of range");
        x = -x;
    }
    for (auto q : m.primes())
        while (x % q == 0) x /= q;
    return x == 1;
}

/// Positive M-units whose exponents are all at most exp_bound, ascending.
inline std::vector<std::int64_t> bounded_units(const PrimeSet& m, int exp_bound) {
    detail::require(exp_bound >= 0, "exponent bound must be non-negative");
    std::vector<std::int64_t> out{1};
    for (auto q : m.primes()) {
        std::vector<std::int64_t> next;
        for (auto v : out) {
            detail::wide_int w = v;
            for (int e = 0; e <= exp_bound; ++e) {
                detail::require(w <= INT64_MAX / 4, "unit exceeds 64-bit range");
                next.push_back(static_cast<std::int64_t>(w));
                w *= q;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline bool has_vanishing_subsum(const std::vector<std::int64_t>& xs, bool proper_only) {
    const std::size_t l = xs.size();
    const std::uint64_t full = (std::uint64_t{1} << l) - 1;
    for (std::uint64_t s = 1; s <= full; ++s) {
        if (proper_only && s == full) continue;
        wide_int sum = 0;
        for (std::size_t i = 0; i < l; ++i)
            if (s >> i & 1) sum += xs[i];
        if (sum == 0) return true;
    }
    return false;
}

inline std::int64_t gcd_all(const std::vector<std::int64_t>& xs) {
    std::int64_t g = 0;
    for (auto v : xs) g = std::gcd(g, v);
    return g;
}

inline std::uint64_t multiset_count(std::uint64_t n, int k, std::uint64_t limit) {
    // C(n + k - 1, k), saturating at limit + 1
    long double c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<long double>(n + static_cast<std::uint64_t>(i) - 1) / i;
    return c > static_cast<long double>(limit) ? limit + 1 : static_cast<std::uint64_t>(c + 0.5L);
}

/// Visits every multiset of l values (as index sequences i_1 <= .. <= i_l
/// into a descending value list) whose sum is target. Splits as l = h + t:
/// multisets of the last t positions are tabulated by sum, so the front h
/// positions are enumerated and completed by lookup. t = 1 for l < 4.
template <typename Visitor>
std::uint64_t for_each_multiset_with_sum(const std::vector<std::int64_t>& values, int l, std::int64_t target,
                                         std::uint64_t budget, Visitor&& visit) {
    const std::size_t n = values.size();
    const int tail = l >= 4 ? l / 2 : 1;
    const int head = l - tail;
    std::uint64_t work = multiset_count(n, head, budget) + multiset_count(n, tail, budget);
    if (work > budget) throw CapExceeded("search exceeds budget of " + std::to_string(budget) + " candidates");

    // tail multisets keyed by sum; each list is in increasing first index
    std::unordered_map<std::int64_t, std::vector<std::vector<std::size_t>>> by_sum;
    std::vector<std::size_t> idx;
    auto gen_tail = [&](auto& self, std::size_t from, int left, wide_int sum) -> void {
        if (left == 0) {
            if (sum >= INT64_MIN && sum <= INT64_MAX) by_sum[static_cast<std::int64_t>(sum)].push_back(idx);
            return;
        }
        for (std::size_t a = from; a < n; ++a) {
            idx.push_back(a);
            self(self, a, left - 1, sum + values[a]);
            idx.pop_back();
        }
    };
    gen_tail(gen_tail, 0, tail, 0);

    std::vector<std::int64_t> tuple(static_cast<std::size_t>(l));
    auto gen_head = [&](auto& self, std::size_t from, int depth, wide_int sum) -> void {
        if (depth == head) {
            wide_int need = static_cast<wide_int>(target) - sum;
            if (need < INT64_MIN || need > INT64_MAX) return;
            auto it = by_sum.find(static_cast<std::int64_t>(need));
            if (it == by_sum.end()) return;
            for (const auto& rest : it->second) {
                if (rest.front() < from) continue;
                for (int i = 0; i < tail; ++i) tuple[static_cast<std::size_t>(head + i)] = values[rest[static_cast<std::size_t>(i)]];
                ++work;
                visit(std::as_const(tuple));
            }
            return;
        }
        for (std::size_t a = from; a < n; ++a) {
            tuple[static_cast<std::size_t>(depth)] = values[a];
            self(self, a, depth + 1, sum + values[a]);
        }
    };
    gen_head(gen_head, 0, 0, 0);
    return work;
}

inline std::vector<std::int64_t> signed_descending(const std::vector<std::int64_t>& units) {
    std::vector<std::int64_t> v;
    for (auto u : units) {
        v.push_back(u);
        v.push_back(-u);
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

} // namespace detail

/// Work actually spent by an enumeration, for reporting.
struct SearchStats {
    std::uint64_t candidates = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Solutions of x_1 + .. + x_l = 0 in M-units with all exponents at most
/// exp_bound, gcd 1, and no vanishing nonempty proper subsum. Tuples are
/// sorted descending and taken up to global sign (the lexicographically
/// smaller of a tuple and its negation is kept).
inline std::vector<SUnitTuple> enumerate_zero_sums(const PrimeSet& m, int l, int exp_bound,
                                                   std::uint64_t budget = kDefaultBudget, SearchStats* stats = nullptr) {
    detail::require(l >= 2, "l must be at least 2");
    detail::require(l <= 16, "l is limited to 16 terms");
    auto values = detail::signed_descending(bounded_units(m, exp_bound));
    std::vector<SUnitTuple> out;
    auto work = detail::for_each_multiset_with_sum(values, l, 0, budget, [&](const std::vector<std::int64_t>& t) {
        if (detail::gcd_all(t) != 1) return;
        if (detail::has_vanishing_subsum(t, true)) return;
        std::vector<std::int64_t> neg(t.size());
        std::transform(t.begin(), t.end(), neg.begin(), [](std::int64_t v) { return -v; });
        std::sort(neg.begin(), neg.end(), std::greater<>());
        if (neg < t) return;
        out.push_back({t, true});
    });
    if (stats) stats->candidates = work;
    std::sort(out.begin(), out.end());
    return out;
}

/// Solutions of x_1 + .. + x_l = p^R in M-units (exponents at most
/// exp_bound) with no vanishing nonempty subsum, sorted descending. p must
/// lie outside M.
inline std::vector<SUnitTuple> enumerate_power_sums(const PrimeSet& m, int l, std::int64_t p, int r, int exp_bound,
                                                    std::uint64_t budget = kDefaultBudget,
                                                    SearchStats* stats = nullptr) {
    detail::require_prime(p);
    detail::require(!m.contains(p), "p must not belong to M");
    detail::require(l >= 1 && l <= 16, "l must lie in [1, 16]");
    detail::require(r >= 0, "R must be non-negative");
    ExactCount big = prime_power(p, r);
    detail::require(big <= INT64_MAX / 4, "p^R exceeds 64-bit range");
    const auto target = static_cast<std::int64_t>(big);
    auto values = detail::signed_descending(bounded_units(m, exp_bound));
    std::vector<SUnitTuple> out;
    auto work = detail::for_each_multiset_with_sum(values, l, target, budget, [&](const std::vector<std::int64_t>& t) {
        if (detail::has_vanishing_subsum(t, false)) return;
        out.push_back({t, true});
    });
    if (stats) stats->candidates = work;
    std::sort(out.begin(), out.end());
    return out;
}

struct PowerReduction {
    std::vector<std::int64_t> reduced;
    int shift = 0;  // the minimal p-adic valuation s'
};

/// Divides every entry by p^{s'} where s' is the least p-adic valuation.
inline PowerReduction reduce_by_p_power(const std::vector<std::int64_t>& entries, std::int64_t p) {
    detail::require_prime(p);
    detail::require(!entries.empty(), "entries must be nonempty");
    int shift = INT32_MAX;
    for (auto v : entries) {
        detail::require(v != 0, "entries must be nonzero");
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        shift = std::min(shift, e);
    }
    PowerReduction out;
    out.shift = shift;
    std::int64_t div = 1;
    for (int i = 0; i < shift; ++i) div *= p;
    for (auto v : entries) out.reduced.push_back(v / div);
    return out;
}

struct EvertseComparison {
    std::size_t observed = 0;
    BoundValue bound;
};

/// Observed zero-sum count at this height next to C1 exp(C2 n^3 log n) for
/// n = l - 1. Descriptive only; the constants are unknown.
inline EvertseComparison count_vs_evertse(const PrimeSet& m, int l, int exp_bound, double c1, double c2,
                                          std::uint64_t budget = kDefaultBudget) {
    EvertseComparison out;
    out.observed = enumerate_zero_sums(m, l, exp_bound, budget).size();
    out.bound = evertse_bound(l - 1, c1, c2);
    return out;
}

} // namespace cosetforge
