#pragma once

// Brute-force reference implementations. They share no code with the
// algorithms they check beyond element indexing and the group spec.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "abelian.hpp"
#include "error.hpp"
#include "sunit.hpp"

namespace cosetforge::oracle {

using Mask = std::vector<std::uint64_t>;

inline void set_bit(Mask& m, std::size_t i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }
inline bool test_bit(const Mask& m, std::size_t i) { return m[i / 64] >> (i % 64) & 1; }
inline std::size_t popcount(const Mask& m) {
    std::size_t n = 0;
    for (auto w : m) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

/// Addition table of a small group, by element index.
class Cayley {
public:
    explicit Cayley(const GroupSpec& g, std::uint64_t cap = 256) : g_(g) {
        const auto m = g.moduli();
        n_ = g.element_count(cap);
        coords_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t rest = i;
            coords_[i].assign(m.size(), 0);
            for (std::size_t k = m.size(); k-- > 0;) {
                coords_[i][k] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(m[k]));
                rest /= static_cast<std::size_t>(m[k]);
            }
        }
        sum_.assign(n_ * n_, 0);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
                std::size_t idx = 0;
                for (std::size_t k = 0; k < m.size(); ++k)
                    idx = idx * static_cast<std::size_t>(m[k]) +
                          static_cast<std::size_t>((coords_[a][k] + coords_[b][k]) % m[k]);
                sum_[a * n_ + b] = idx;
            }
    }

    std::size_t size() const { return n_; }
    std::size_t add(std::size_t a, std::size_t b) const { return sum_[a * n_ + b]; }
    const Element& coords(std::size_t i) const { return coords_[i]; }
    Mask empty() const { return Mask((n_ + 63) / 64, 0); }

    /// Smallest subgroup containing the set, by repeated addition.
    Mask closure(Mask s) const {
        set_bit(s, 0);
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t a = 0; a < n_; ++a) {
                if (!test_bit(s, a)) continue;
                for (std::size_t b = 0; b < n_; ++b) {
                    if (!test_bit(s, b)) continue;
                    std::size_t c = add(a, b);
                    if (!test_bit(s, c)) {
                        set_bit(s, c);
                        grew = true;
                    }
                }
            }
        }
        return s;
    }

    /// H + <x> for a subgroup H, as the union of the translates H + kx.
    Mask adjoin(const Mask& h, std::size_t x) const {
        Mask out = h;
        for (std::size_t y = x; !test_bit(h, y); y = add(y, x))
            for (std::size_t a = 0; a < n_; ++a)
                if (test_bit(h, a)) set_bit(out, add(a, y));
        return out;
    }

    Mask translate(const Mask& s, std::size_t x) const {
        Mask out = empty();
        for (std::size_t a = 0; a < n_; ++a)
            if (test_bit(s, a)) set_bit(out, add(a, x));
        return out;
    }

private:
    GroupSpec g_;
    std::size_t n_ = 0;
    std::vector<Element> coords_;
    std::vector<std::size_t> sum_;
};

/// Every subgroup as an element mask, grown from the trivial subgroup by
/// adjoining one element at a time.
inline std::set<Mask> all_subgroups(const Cayley& c) {
    std::set<Mask> seen;
    std::vector<Mask> frontier{c.closure(c.empty())};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<Mask> next;
        for (const auto& h : frontier)
            for (std::size_t x = 0; x < c.size(); ++x) {
                if (test_bit(h, x)) continue;
                Mask k = c.adjoin(h, x);
                if (seen.insert(k).second) next.push_back(std::move(k));
            }
        frontier = std::move(next);
    }
    return seen;
}

/// Subgroup counts keyed by order.
inline std::map<std::size_t, std::uint64_t> subgroup_counts(const Cayley& c) {
    std::map<std::size_t, std::uint64_t> out;
    for (const auto& h : all_subgroups(c)) ++out[popcount(h)];
    return out;
}

/// Distinct cosets (as element sets) keyed by size.
inline std::set<Mask> all_coset_masks(const Cayley& c) {
    std::set<Mask> cosets;
    for (const auto& h : all_subgroups(c))
        for (std::size_t x = 0; x < c.size(); ++x) cosets.insert(c.translate(h, x));
    return cosets;
}

inline std::map<std::size_t, std::uint64_t> coset_counts(const Cayley& c) {
    std::map<std::size_t, std::uint64_t> out;
    for (const auto& s : all_coset_masks(c)) ++out[popcount(s)];
    return out;
}

/// Conjugate type of a subgroup given by its elements: part k is
/// log_p #H[p^k] - log_p #H[p^{k-1}], where H[q] = {x : qx = 0}.
inline Partition type_conjugate(const GroupSpec& g, const std::vector<Element>& h) {
    const auto m = g.moduli();
    std::vector<int> parts;
    int prev = 0;
    for (std::int64_t q = g.p;; q *= g.p) {
        std::uint64_t killed = 0;
        for (const auto& x : h) {
            bool zero = true;
            for (std::size_t k = 0; k < m.size(); ++k) zero = zero && (x[k] * q) % m[k] == 0;
            killed += zero ? 1 : 0;
        }
        int e = 0;
        for (std::uint64_t v = killed; v > 1; v /= static_cast<std::uint64_t>(g.p)) ++e;
        if (e == prev) break;
        parts.push_back(e - prev);
        prev = e;
    }
    return Partition(parts);
}

/// Number of m-dimensional subspaces of F_p^n, by closing sets of vectors.
inline std::uint64_t subspace_count(std::int64_t p, int n, int m) {
    if (m < 0 || m > n) return 0;
    std::size_t size = 1;
    for (int i = 0; i < n; ++i) size *= static_cast<std::size_t>(p);
    auto digits = [&](std::size_t v) {
        std::vector<std::int64_t> d(static_cast<std::size_t>(n));
        for (auto& x : d) {
            x = static_cast<std::int64_t>(v % static_cast<std::size_t>(p));
            v /= static_cast<std::size_t>(p);
        }
        return d;
    };
    auto index = [&](const std::vector<std::int64_t>& d) {
        std::size_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * static_cast<std::size_t>(p) + static_cast<std::size_t>(d[i]);
        return v;
    };
    using Space = std::vector<bool>;
    auto extend = [&](const Space& s, std::size_t v) {
        Space out = s;
        auto dv = digits(v);
        for (std::size_t a = 0; a < size; ++a) {
            if (!s[a]) continue;
            auto da = digits(a);
            for (std::int64_t c = 1; c < p; ++c) {
                std::vector<std::int64_t> w(da);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] = (w[i] + c * dv[i]) % p;
                out[index(w)] = true;
            }
        }
        return out;
    };
    Space zero(size, false);
    zero[0] = true;
    std::set<Space> level{zero};
    for (int d = 0; d < m; ++d) {
        std::set<Space> next;
        for (const auto& s : level)
            for (std::size_t v = 0; v < size; ++v)
                if (!s[v]) next.insert(extend(s, v));
        level = std::move(next);
    }
    return level.size();
}

/// Zero sums of three M-units by a plain triple loop over every signed unit.
inline std::vector<std::vector<std::int64_t>> zero_sums_l3(const PrimeSet& m, int exp_bound) {
    std::vector<std::int64_t> units{1};
    for (auto q : m.primes()) {
        std::vector<std::int64_t> next;
        for (auto u : units) {
            std::int64_t v = u;
            for (int e = 0; e <= exp_bound; ++e, v *= q) next.push_back(v);
        }
        units = std::move(next);
    }
    std::vector<std::int64_t> signed_units;
    for (auto u : units) {
        signed_units.push_back(u);
        signed_units.push_back(-u);
    }
    std::set<std::vector<std::int64_t>> found;
    for (auto a : signed_units)
        for (auto b : signed_units)
            for (auto c : signed_units) {
                if (a + b + c != 0) continue;
                if (a + b == 0 || a + c == 0 || b + c == 0) continue;
                if (std::gcd(std::gcd(a, b), c) != 1) continue;
                std::vector<std::int64_t> t{a, b, c}, n{-a, -b, -c};
                std::sort(t.begin(), t.end(), std::greater<>());
                std::sort(n.begin(), n.end(), std::greater<>());
                found.insert(std::min(t, n));
            }
    return {found.begin(), found.end()};
}

} // namespace cosetforge::oracle
