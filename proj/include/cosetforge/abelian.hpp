#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "partition.hpp"
#include "qbinom.hpp"

namespace cosetforge {

/// Default cap on the number of group elements any enumeration will touch.
inline constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 12;

/// The finite abelian p-group of the given type, realised as the direct sum
/// of Z_{p^{type_i}} in the order of the parts.
struct GroupSpec {
    std::int64_t p = 2;
    Partition type;

    GroupSpec() = default;
    GroupSpec(std::int64_t prime, Partition t) : p(prime), type(std::move(t)) {
        detail::require_prime(p);
    }

    std::size_t rank() const { return type.length(); }

    /// Cyclic factor orders p^{type_i}. Element-level work is limited to
    /// factors below 2^30 so that products of two coordinates fit in 64 bits.
    std::vector<std::int64_t> moduli() const {
        std::vector<std::int64_t> m;
        m.reserve(rank());
        for (int a : type.parts()) {
            std::int64_t v = 1;
            for (int i = 0; i < a; ++i) {
                v *= p;
                detail::require(v <= (std::int64_t{1} << 30), "cyclic factor too large for element arithmetic");
            }
            m.push_back(v);
        }
        return m;
    }

    /// p^{weight(type)} when it does not exceed cap, else CapExceeded.
    std::uint64_t element_count(std::uint64_t cap = kDefaultCap) const {
        std::uint64_t n = 1;
        for (int i = 0; i < weight(type); ++i) {
            n *= static_cast<std::uint64_t>(p);
            if (n > cap) throw CapExceeded("group order exceeds enumeration cap " + std::to_string(cap));
        }
        return n;
    }

    auto operator<=>(const GroupSpec&) const = default;
};

inline ExactCount order(const GroupSpec& g) { return prime_power(g.p, weight(g.type)); }

using Element = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// Extended Euclid: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
    std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        std::int64_t q = floor_div(a, b);
        std::int64_t r = a - q * b;
        a = b;
        b = r;
        std::int64_t sn = s0 - q * s1;
        s0 = s1;
        s1 = sn;
        std::int64_t tn = t0 - q * t1;
        t0 = t1;
        t1 = tn;
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return a;
}

inline void check_element(const GroupSpec& g, const std::vector<std::int64_t>& m, const Element& x) {
    require(x.size() == g.rank(), "element has " + std::to_string(x.size()) + " coordinates, group has rank " +
                                      std::to_string(g.rank()));
    for (std::size_t i = 0; i < x.size(); ++i)
        require(x[i] >= 0 && x[i] < m[i], "coordinate " + std::to_string(i) + " out of range");
}

} // namespace detail

inline Element add(const GroupSpec& g, const Element& a, const Element& b) {
    auto m = g.moduli();
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::mod(a[i] + b[i], m[i]);
    return out;
}

inline Element subtract(const GroupSpec& g, const Element& a, const Element& b) {
    auto m = g.moduli();
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::mod(a[i] - b[i], m[i]);
    return out;
}

inline Element scale(const GroupSpec& g, std::int64_t k, const Element& a) {
    auto m = g.moduli();
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::mod(detail::mod(k, m[i]) * a[i], m[i]);
    return out;
}

/// Mixed-radix position of x, with the last coordinate varying fastest.
/// Consistent with the lexicographic element order.
inline std::uint64_t element_index(const GroupSpec& g, const Element& x) {
    auto m = g.moduli();
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) idx = idx * static_cast<std::uint64_t>(m[i]) + static_cast<std::uint64_t>(x[i]);
    return idx;
}

inline Element element_at(const GroupSpec& g, std::uint64_t idx) {
    auto m = g.moduli();
    Element x(m.size());
    for (std::size_t i = m.size(); i-- > 0;) {
        x[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(m[i]));
        idx /= static_cast<std::uint64_t>(m[i]);
    }
    return x;
}

/// All elements in lexicographic order.
inline std::vector<Element> all_elements(const GroupSpec& g, std::uint64_t cap = kDefaultCap) {
    std::uint64_t n = g.element_count(cap);
    std::vector<Element> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(g, i));
    return out;
}

/// A subgroup H of G, stored as the Hermite normal form of its preimage
/// lattice in Z^n. Row i is (0,..,0, d_i, b_{i,i+1}, .., b_{i,n-1}) with
/// d_i | p^{type_i} and 0 <= b_{k,j} < d_j. The form is unique per subgroup,
/// so equality and ordering are structural.
class Subgroup {
public:
    Subgroup() = default;

    static Subgroup whole(const GroupSpec& g) {
        Subgroup h;
        h.group_ = g;
        std::size_t n = g.rank();
        h.basis_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) h.basis_[i * n + i] = 1;
        return h;
    }

    static Subgroup trivial(const GroupSpec& g) { return from_generators(g, {}); }

    /// Canonical form of the span of gens.
    static Subgroup from_generators(const GroupSpec& g, std::span<const Element> gens) {
        const auto m = g.moduli();
        const std::size_t n = g.rank();
        for (const auto& x : gens) detail::check_element(g, m, x);

        std::vector<std::vector<std::int64_t>> active(gens.begin(), gens.end());
        std::vector<std::vector<std::int64_t>> pivots(n);
        auto reduce_tail = [&](std::vector<std::int64_t>& row, std::size_t from) {
            for (std::size_t k = from; k < n; ++k) row[k] = detail::mod(row[k], m[k]);
        };

        // The lattice is span(active) + sum_k m_k e_k. Column j starts its
        // pivot from m_j e_j; m_k e_k for k > j stay implicit, which is what
        // licenses reducing later columns mod m_k.
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::int64_t> pivot(n, 0);
            pivot[j] = m[j];
            std::vector<std::vector<std::int64_t>> next;
            next.reserve(active.size() + 1);
            for (auto& row : active) {
                if (row[j] == 0) {
                    next.push_back(std::move(row));
                    continue;
                }
                std::int64_t s = 0, t = 0;
                std::int64_t a = pivot[j], b = row[j];
                std::int64_t gcd = detail::ext_gcd(a, b, s, t);
                std::vector<std::int64_t> p_new(n, 0), r_new(n, 0);
                for (std::size_t k = j; k < n; ++k) {
                    p_new[k] = s * pivot[k] + t * row[k];
                    r_new[k] = (b / gcd) * pivot[k] - (a / gcd) * row[k];
                }
                reduce_tail(p_new, j + 1);
                reduce_tail(r_new, j + 1);
                r_new[j] = 0;
                pivot = std::move(p_new);
                if (std::any_of(r_new.begin() + static_cast<std::ptrdiff_t>(j + 1), r_new.end(),
                                [](std::int64_t v) { return v != 0; }))
                    next.push_back(std::move(r_new));
            }
            pivots[j] = std::move(pivot);
            active = std::move(next);
        }

        Subgroup h;
        h.group_ = g;
        h.basis_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) h.basis_[i * n + k] = pivots[i][k];
        h.normalize(m);
        return h;
    }

    /// Adopts an HNF produced elsewhere (the subgroup enumerator). The rows
    /// must already satisfy the canonical bounds.
    static Subgroup from_hnf(const GroupSpec& g, std::vector<std::int64_t> basis) {
        Subgroup h;
        h.group_ = g;
        detail::require(basis.size() == g.rank() * g.rank(), "HNF has wrong shape");
        h.basis_ = std::move(basis);
        return h;
    }

    const GroupSpec& group() const { return group_; }
    std::size_t rank() const { return group_.rank(); }

    std::int64_t entry(std::size_t row, std::size_t col) const { return basis_[row * rank() + col]; }
    std::int64_t pivot(std::size_t i) const { return entry(i, i); }
    const std::vector<std::int64_t>& hnf() const { return basis_; }

    /// Non-redundant generators: the HNF rows whose pivot is below the
    /// cyclic modulus, reduced into the group.
    std::vector<Element> generators() const {
        auto m = group_.moduli();
        std::vector<Element> out;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (pivot(i) == m[i]) continue;
            Element x(rank());
            for (std::size_t k = 0; k < rank(); ++k) x[k] = detail::mod(entry(i, k), m[k]);
            out.push_back(std::move(x));
        }
        return out;
    }

    /// log_p of the order.
    int order_exponent() const {
        int e = weight(group_.type);
        for (std::size_t i = 0; i < rank(); ++i) e -= *exact_log(group_.p, pivot(i));
        return e;
    }

    ExactCount order() const { return prime_power(group_.p, order_exponent()); }

    /// Index in the ambient group, the product of the pivots.
    ExactCount index() const {
        ExactCount v = 1;
        for (std::size_t i = 0; i < rank(); ++i) v *= pivot(i);
        return v;
    }

    /// Lexicographically least element of x + H.
    Element reduce(Element x) const {
        auto m = group_.moduli();
        detail::check_element(group_, m, x);
        reduce_unchecked(x, m);
        return x;
    }

    bool contains(const Element& x) const {
        Element r = reduce(x);
        return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
    }

    /// Elements of H in lexicographic order.
    std::vector<Element> elements(std::uint64_t cap = kDefaultCap) const {
        auto m = group_.moduli();
        std::uint64_t count = 1;
        std::vector<std::int64_t> range(rank());
        for (std::size_t i = 0; i < rank(); ++i) {
            range[i] = m[i] / pivot(i);
            count *= static_cast<std::uint64_t>(range[i]);
            if (count > cap) throw CapExceeded("subgroup order exceeds enumeration cap");
        }
        std::vector<Element> out;
        out.reserve(count);
        std::vector<std::int64_t> c(rank(), 0);
        for (std::uint64_t step = 0; step < count; ++step) {
            Element x(rank(), 0);
            for (std::size_t i = 0; i < rank(); ++i)
                for (std::size_t k = i; k < rank(); ++k) x[k] += c[i] * entry(i, k);
            for (std::size_t k = 0; k < rank(); ++k) x[k] = detail::mod(x[k], m[k]);
            out.push_back(std::move(x));
            for (std::size_t i = rank(); i-- > 0;) {
                if (++c[i] < range[i]) break;
                c[i] = 0;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    auto operator<=>(const Subgroup&) const = default;

private:
    void reduce_unchecked(Element& x, const std::vector<std::int64_t>& m) const {
        for (std::size_t j = 0; j < rank(); ++j) {
            std::int64_t q = x[j] / pivot(j);
            if (q == 0) continue;
            for (std::size_t k = j; k < rank(); ++k) x[k] = detail::mod(x[k] - q * entry(j, k), m[k]);
        }
    }

    // Bring entries above each pivot into [0, d_j); row i may absorb any
    // multiple of m_k e_k for k > i since that vector lies in rows >= k.
    void normalize(const std::vector<std::int64_t>& m) {
        const std::size_t n = rank();
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                std::int64_t q = detail::floor_div(basis_[i * n + j], pivot(j));
                if (q != 0)
                    for (std::size_t k = j; k < n; ++k) basis_[i * n + k] -= q * basis_[j * n + k];
                for (std::size_t k = j + 1; k < n; ++k) basis_[i * n + k] = detail::mod(basis_[i * n + k], m[k]);
            }
        }
    }

    GroupSpec group_;
    std::vector<std::int64_t> basis_;
};

inline Subgroup subgroup_from_generators(const GroupSpec& g, std::span<const Element> gens) {
    return Subgroup::from_generators(g, gens);
}

inline bool membership(const Subgroup& h, const Element& x) { return h.contains(x); }

inline Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
    detail::require(a.group() == b.group(), "subgroups live in different groups");
    auto gens = a.generators();
    auto more = b.generators();
    gens.insert(gens.end(), more.begin(), more.end());
    return Subgroup::from_generators(a.group(), gens);
}

/// p^k H.
inline Subgroup multiply(const Subgroup& h, std::int64_t k) {
    auto gens = h.generators();
    for (auto& x : gens) x = scale(h.group(), k, x);
    return Subgroup::from_generators(h.group(), gens);
}

inline Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b, std::uint64_t cap = kDefaultCap) {
    detail::require(a.group() == b.group(), "subgroups live in different groups");
    const Subgroup& small = a.order_exponent() <= b.order_exponent() ? a : b;
    const Subgroup& other = &small == &a ? b : a;
    std::vector<Element> common;
    for (auto& x : small.elements(cap))
        if (other.contains(x)) common.push_back(std::move(x));
    return Subgroup::from_generators(a.group(), common);
}

namespace detail {

/// log_p of the order of the subgroup spanned by `count` rows of width n
/// (stored flat in `rows`, destroyed). Same elimination as
/// Subgroup::from_generators, keeping only the diagonal.
inline int span_order_exponent(std::int64_t p, const std::vector<std::int64_t>& m, std::int64_t* rows,
                               std::size_t count) {
    const std::size_t n = m.size();
    int e = 0;
    std::int64_t pivot[64];
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) pivot[k] = 0;
        pivot[j] = m[j];
        for (std::size_t r = 0; r < count; ++r) {
            std::int64_t* row = rows + r * n;
            if (row[j] == 0) continue;
            std::int64_t s = 0, t = 0;
            const std::int64_t a = pivot[j], b = row[j];
            const std::int64_t gcd = ext_gcd(a, b, s, t);
            for (std::size_t k = j; k < n; ++k) {
                const std::int64_t pk = pivot[k], rk = row[k];
                pivot[k] = s * pk + t * rk;
                row[k] = (b / gcd) * pk - (a / gcd) * rk;
                if (k > j) {
                    pivot[k] = mod(pivot[k], m[k]);
                    row[k] = mod(row[k], m[k]);
                }
            }
            row[j] = 0;
        }
        for (std::int64_t q = m[j] / pivot[j]; q > 1; q /= p) ++e;
    }
    return e;
}

/// Reusable buffers for repeated type computations.
struct TypeScratch {
    std::vector<std::int64_t> gens;
    std::vector<std::int64_t> work;
    std::vector<int> conj;
};

/// Conjugate of the type of the subgroup whose canonical HNF is `basis`,
/// written to scratch.conj.
///
/// #H[p^k] = #H / #(p^k H) = p^{sum_i min(beta_i, k)}, so successive
/// differences of these exponents are the parts of the conjugate of beta.
inline void subgroup_type_conjugate(const GroupSpec& g, const std::vector<std::int64_t>& m,
                                    const std::vector<std::int64_t>& basis, TypeScratch& s) {
    const std::size_t n = m.size();
    require(n <= 64, "rank above 64 is not supported");
    s.gens.resize(n * n);
    s.work.resize(n * n);
    s.conj.clear();
    int total = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::int64_t q = m[j] / basis[j * n + j]; q > 1; q /= g.p) ++total;
    if (std::all_of(m.begin(), m.end(), [&](std::int64_t q) { return q == g.p; })) {
        if (total > 0) s.conj.push_back(total);
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) s.gens[i * n + k] = i <= k ? basis[i * n + k] % m[k] : 0;
    int prev = 0;
    while (prev < total) {
        // entries stay in [0, m_k) and p * entry < p * m_k, so reduction is
        // at most p - 1 subtractions
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t* row = s.gens.data() + i * n;
            for (std::size_t k = i; k < n; ++k) {
                std::int64_t y = row[k] * g.p;
                while (y >= m[k]) y -= m[k];
                row[k] = y;
                zero = zero && y == 0;
            }
        }
        int torsion = total;
        if (!zero) {
            std::copy(s.gens.begin(), s.gens.end(), s.work.begin());
            torsion -= span_order_exponent(g.p, m, s.work.data(), n);
        }
        s.conj.push_back(torsion - prev);
        prev = torsion;
    }
}

inline Partition subgroup_type_from_hnf(const GroupSpec& g, const std::vector<std::int64_t>& m,
                                        const std::vector<std::int64_t>& basis) {
    TypeScratch s;
    subgroup_type_conjugate(g, m, basis, s);
    return conjugate(Partition(s.conj));
}

} // namespace detail

/// The partition beta with H isomorphic to the sum of Z_{p^{beta_i}}.
inline Partition subgroup_type(const Subgroup& h) {
    return detail::subgroup_type_from_hnf(h.group(), h.group().moduli(), h.hnf());
}

/// Visits the HNF of every subgroup of order p^r, building rows bottom-up.
///
/// Row i picks d_i = p^{e_i} and entries b_{i,j} in [0, d_j). The lattice
/// must contain m_i e_i, i.e. m_i e_i = sum_k x_k row_k with x_i = m_i / d_i
/// and x_j = -(sum_{i<=k<j} x_k b_{k,j}) / d_j integral. Each b_{i,j} is
/// solved for directly from that congruence, so only valid forms are visited.
template <typename Visitor>
void for_each_subgroup_hnf(const GroupSpec& g, int r, Visitor&& visit) {
    const std::size_t n = g.rank();
    const int total = weight(g.type);
    if (r < 0 || r > total) return;
    const auto m = g.moduli();
    const std::int64_t p = g.p;

    std::vector<std::int64_t> basis(n * n, 0);
    std::vector<std::int64_t> xs(n * n, 0);  // row i's combination for m_i e_i
    std::vector<int> room(n + 1, 0);  // sum of type parts for rows < i
    for (std::size_t i = 0; i < n; ++i) room[i + 1] = room[i] + g.type[i];

    // Row i (processed from n-1 down to 0), needing 'need' more pivot exponent.
    auto rows = [&](auto& self, std::size_t i, int need) -> void {
        if (i == 0) {
            if (need == 0) visit(std::as_const(basis));
            return;
        }
        const std::size_t row = i - 1;
        const int alpha = g.type[row];
        const int lo = std::max(0, need - room[row]);
        const int hi = std::min(alpha, need);
        std::int64_t d = 1;
        for (int e = 0; e < lo; ++e) d *= p;
        for (int e = lo; e <= hi; ++e, d *= p) {
            basis[row * n + row] = d;
            std::int64_t* x = xs.data() + row * n;
            x[row] = m[row] / d;
            auto cols = [&](auto& cself, std::size_t j) -> void {
                if (j == n) {
                    self(self, row, need - e);
                    return;
                }
                const std::int64_t dj = basis[j * n + j];
                std::int64_t carry = 0;
                for (std::size_t k = row + 1; k < j; ++k) carry += x[k] * basis[k * n + j];
                // x_row * b + carry = 0 (mod dj), 0 <= b < dj
                const std::int64_t a = detail::mod(x[row], dj);
                const std::int64_t c = detail::mod(-carry, dj);
                std::int64_t s = 0, t = 0;
                const std::int64_t gcd = detail::ext_gcd(a == 0 ? dj : a, dj, s, t);
                if (c % gcd != 0) return;
                const std::int64_t period = dj / gcd;
                const std::int64_t b0 = a == 0 ? 0 : detail::mod((c / gcd) % period * detail::mod(s, period), period);
                for (std::int64_t b = b0; b < dj; b += period) {
                    basis[row * n + j] = b;
                    x[j] = -(x[row] * b + carry) / dj;
                    cself(cself, j + 1);
                }
                basis[row * n + j] = 0;
            };
            cols(cols, row + 1);
        }
        basis[row * n + row] = 0;
    };
    rows(rows, n, total - r);
}

/// All subgroups of the given order, sorted. Orders that are not a power of
/// p dividing #G yield an empty list.
inline std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g, const ExactCount& ord,
                                                 std::uint64_t cap = kDefaultCap) {
    g.element_count(cap);
    std::vector<Subgroup> out;
    auto r = exact_log(g.p, ord);
    if (!r || *r > weight(g.type)) return out;
    for_each_subgroup_hnf(g, *r, [&](const std::vector<std::int64_t>& b) { out.push_back(Subgroup::from_hnf(g, b)); });
    std::sort(out.begin(), out.end());
    return out;
}

/// Number of subgroups of order p^r, counted by visiting each one.
inline std::uint64_t count_subgroups_by_enumeration(const GroupSpec& g, int r, std::uint64_t cap = kDefaultCap) {
    g.element_count(cap);
    std::uint64_t count = 0;
    for_each_subgroup_hnf(g, r, [&](const std::vector<std::int64_t>&) { ++count; });
    return count;
}

/// A coset x + H, identified by H and the lexicographically least member.
class Coset {
public:
    Coset() = default;
    Coset(Subgroup h, const Element& x) : subgroup_(std::move(h)), rep_(subgroup_.reduce(x)) {}

    const Subgroup& subgroup() const { return subgroup_; }
    const Element& representative() const { return rep_; }
    const GroupSpec& group() const { return subgroup_.group(); }

    ExactCount size() const { return subgroup_.order(); }
    int size_exponent() const { return subgroup_.order_exponent(); }

    bool contains(const Element& y) const { return subgroup_.contains(subtract(group(), y, rep_)); }

    std::vector<Element> elements(std::uint64_t cap = kDefaultCap) const {
        auto out = subgroup_.elements(cap);
        for (auto& y : out) y = add(group(), y, rep_);
        std::sort(out.begin(), out.end());
        return out;
    }

    auto operator<=>(const Coset&) const = default;

private:
    Subgroup subgroup_;
    Element rep_;
};

/// Visits the lexicographically least representative of every coset of h:
/// exactly the vectors with 0 <= x_j < d_j.
template <typename Visitor>
void for_each_coset_representative(const Subgroup& h, Visitor&& visit) {
    const std::size_t n = h.rank();
    Element x(n, 0);
    while (true) {
        visit(std::as_const(x));
        std::size_t i = n;
        while (i-- > 0) {
            if (++x[i] < h.pivot(i)) break;
            x[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) return;
    }
}

/// All cosets of all subgroups of the given order, sorted.
inline std::vector<Coset> enumerate_cosets(const GroupSpec& g, const ExactCount& ord, std::uint64_t cap = kDefaultCap) {
    std::vector<Coset> out;
    for (const auto& h : enumerate_subgroups(g, ord, cap))
        for_each_coset_representative(h, [&](const Element& x) { out.emplace_back(h, x); });
    std::sort(out.begin(), out.end());
    return out;
}

/// Nonempty intersection of two cosets, which is a coset of the
/// intersection of their subgroups.
inline std::optional<Coset> coset_intersection(const Coset& a, const Coset& b, std::uint64_t cap = kDefaultCap) {
    const Coset& small = a.size_exponent() <= b.size_exponent() ? a : b;
    const Coset& other = &small == &a ? b : a;
    std::optional<Element> point;
    for (const auto& y : small.elements(cap))
        if (other.contains(y)) {
            point = y;
            break;
        }
    if (!point) return std::nullopt;
    return Coset(subgroup_intersection(a.subgroup(), b.subgroup(), cap), *point);
}

namespace detail {

inline int rectangular_exponent(const GroupSpec& g) {
    require(!g.type.empty(), "ambient type must be rectangular (a,...,a)");
    int a = g.type[0];
    for (int v : g.type.parts()) require(v == a, "ambient type must be rectangular (a,...,a)");
    return a;
}

} // namespace detail

/// Number of cyclic factors of H of order exactly p^a; H contains a copy of
/// (Z_{p^a})^{k+1} iff this is at least k+1.
inline int max_free_rank(const Subgroup& h, int a) {
    int amb = detail::rectangular_exponent(h.group());
    detail::require(a == amb, "exponent must match the rectangular ambient type");
    int count = 0;
    const Partition type = subgroup_type(h);
    for (int v : type.parts())
        if (v == a) ++count;
    return count;
}

/// Evaluates "no (Z_{p^a})^{k+1} inside H implies #H < p^{ak + (a-1)(N-k)}"
/// with the strict inequality as stated. Equality cases make this false.
inline bool lemma3_check(const GroupSpec& ambient, const Subgroup& h, int k) {
    detail::require(ambient == h.group(), "subgroup does not belong to the ambient group");
    detail::require(k >= 0, "k must be non-negative");
    int a = detail::rectangular_exponent(ambient);
    int n = static_cast<int>(ambient.rank());
    if (max_free_rank(h, a) > k) return true;
    return h.order_exponent() < a * k + (a - 1) * (n - k);
}

/// Same implication with a non-strict inequality.
inline bool lemma3_check_nonstrict(const GroupSpec& ambient, const Subgroup& h, int k) {
    detail::require(ambient == h.group(), "subgroup does not belong to the ambient group");
    detail::require(k >= 0, "k must be non-negative");
    int a = detail::rectangular_exponent(ambient);
    int n = static_cast<int>(ambient.rank());
    if (max_free_rank(h, a) > k) return true;
    return h.order_exponent() <= a * k + (a - 1) * (n - k);
}

} // namespace cosetforge
