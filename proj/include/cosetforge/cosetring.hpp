#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "abelian.hpp"
#include "counting.hpp"
#include "error.hpp"

namespace cosetforge {

/// sum_i 1_{A_i} - sum_j 1_{B_j} over cosets of one ambient group.
struct SignedCosetCombination {
    GroupSpec group;
    std::vector<Coset> positives;
    std::vector<Coset> negatives;

    std::size_t l1() const { return positives.size(); }
    std::size_t l2() const { return negatives.size(); }
    long long bound_l() const { return static_cast<long long>(std::max(l1(), l2())); }

    void validate() const {
        for (const auto* side : {&positives, &negatives})
            for (const auto& c : *side) detail::require(c.group() == group, "coset belongs to a different group");
    }
};

inline int evaluate(const SignedCosetCombination& comb, const Element& x) {
    comb.validate();
    detail::check_element(comb.group, comb.group.moduli(), x);
    int v = 0;
    for (const auto& a : comb.positives) v += a.contains(x) ? 1 : 0;
    for (const auto& b : comb.negatives) v -= b.contains(x) ? 1 : 0;
    return v;
}

namespace detail {

/// Values of the combination at every element, indexed by element_index.
inline std::vector<int> evaluate_all(const SignedCosetCombination& comb, std::uint64_t cap) {
    comb.validate();
    std::vector<int> values(comb.group.element_count(cap), 0);
    for (const auto& a : comb.positives)
        for (const auto& x : a.elements(cap)) ++values[element_index(comb.group, x)];
    for (const auto& b : comb.negatives)
        for (const auto& x : b.elements(cap)) --values[element_index(comb.group, x)];
    return values;
}

} // namespace detail

inline bool is_indicator(const SignedCosetCombination& comb, std::uint64_t cap = kDefaultCap) {
    auto values = detail::evaluate_all(comb, cap);
    return std::all_of(values.begin(), values.end(), [](int v) { return v == 0 || v == 1; });
}

/// The set U where the combination equals 1, in lexicographic order.
inline std::vector<Element> materialize(const SignedCosetCombination& comb, std::uint64_t cap = kDefaultCap) {
    auto values = detail::evaluate_all(comb, cap);
    std::vector<Element> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0 && values[i] != 1) throw PreconditionError("combination is not an indicator");
        if (values[i] == 1) out.push_back(element_at(comb.group, i));
    }
    return out;
}

/// Index-p subgroups H' with K <= H' <= H, each paired with an element of
/// H \ H'. They are the kernels of the non-zero functionals on the F_p-space
/// H / (pH + K), taken up to scalar with first non-zero coordinate 1.
inline std::vector<std::pair<Subgroup, Element>> maximal_subgroups_containing(const Subgroup& h, const Subgroup& k) {
    const GroupSpec& g = h.group();
    const std::int64_t p = g.p;
    Subgroup floor = subgroup_sum(multiply(h, p), k);
    std::vector<Element> basis;
    Subgroup span = floor;
    for (const auto& x : h.generators()) {
        if (span.contains(x)) continue;
        basis.push_back(x);
        span = subgroup_sum(span, Subgroup::from_generators(g, std::vector<Element>{x}));
    }
    const std::size_t d = basis.size();
    std::vector<std::pair<Subgroup, Element>> out;
    std::vector<std::int64_t> c(d, 0);
    auto base_gens = floor.generators();
    // functionals with c_lead = 1 and zeros before it
    for (std::size_t lead = 0; lead < d; ++lead) {
        std::fill(c.begin(), c.end(), 0);
        c[lead] = 1;
        while (true) {
            auto gens = base_gens;
            for (std::size_t i = 0; i < d; ++i)
                if (i != lead) gens.push_back(subtract(g, basis[i], scale(g, c[i], basis[lead])));
            out.emplace_back(Subgroup::from_generators(g, gens), basis[lead]);
            std::size_t i = d;
            while (i-- > lead + 1) {
                if (++c[i] < p) break;
                c[i] = 0;
            }
            if (i == lead) break;
        }
    }
    return out;
}

/// Outcome of a coset extraction together with its size guarantee.
struct Extraction {
    Coset coset;
    int k = 0;                  // #U = p^K
    long long big_l = 0;        // max(l1, l2)
    BoundValue lambda;          // L + log_p L
    int lambda_ceiling = 0;
    int size_exponent = 0;      // #coset = p^size_exponent
    int guaranteed_exponent = 0;
    /// "descent" when the procedure started from a single positive coset;
    /// "intersection" when it had to start from an intersection of several.
    std::string route;

    bool meets_guarantee() const { return size_exponent >= guaranteed_exponent; }
};

namespace detail {

class CosetRefiner {
public:
    CosetRefiner(const GroupSpec& g, std::vector<Coset> avoid, std::uint64_t cap, std::uint64_t budget)
        : g_(g), avoid_(std::move(avoid)), cap_(cap), budget_(budget) {
        // non-increasing cardinality, ties in canonical order
        std::stable_sort(avoid_.begin(), avoid_.end(),
                         [](const Coset& a, const Coset& b) { return a.size_exponent() > b.size_exponent(); });
        covered_.assign(g.element_count(cap), 0);
        for (const auto& b : avoid_)
            for (const auto& x : b.elements(cap)) covered_[element_index(g, x)] = 1;
    }

    bool fully_covered(const Coset& z) const {
        for (const auto& x : z.elements(cap_))
            if (!covered_[element_index(g_, x)]) return false;
        return true;
    }

    std::uint64_t uncovered_count(const Coset& z) const {
        std::uint64_t n = 0;
        for (const auto& x : z.elements(cap_)) n += covered_[element_index(g_, x)] ? 0 : 1;
        return n;
    }

    /// Shrinks z step by step until it misses every avoided coset. Each
    /// meeting with the next coset B replaces z by a translate of an index-p
    /// subcoset S >= z & B lying outside S; the choice of S and of the
    /// translate backtracks when a branch dead-ends.
    std::optional<Coset> refine(const Coset& z, std::size_t step) {
        if (++work_ > budget_) throw CapExceeded("coset refinement exceeded its search budget");
        if (step == avoid_.size()) return z;
        auto meet = coset_intersection(z, avoid_[step], cap_);
        if (!meet) return refine(z, step + 1);
        if (meet->subgroup() == z.subgroup()) return std::nullopt;
        const Element& anchor = meet->representative();
        for (const auto& [sub, outside] : maximal_subgroups_containing(z.subgroup(), meet->subgroup())) {
            for (std::int64_t m = 1; m < g_.p; ++m) {
                Coset piece(sub, add(g_, anchor, scale(g_, m, outside)));
                if (fully_covered(piece)) continue;
                if (auto done = refine(piece, step + 1)) return done;
            }
        }
        return std::nullopt;
    }

private:
    const GroupSpec& g_;
    std::vector<Coset> avoid_;
    std::vector<char> covered_;
    std::uint64_t cap_;
    std::uint64_t budget_;
    std::uint64_t work_ = 0;
};

} // namespace detail

/// Finds a coset inside U = {combination == 1} with #coset >= p^{K - ceil(L + log_p L)}.
///
/// Starts from the positive coset A with the most points outside every
/// negative, then splits away each negative in turn (largest first). If no
/// positive has such a point, or every descent dead-ends, the start is taken
/// instead from a nonempty intersection of s+1 positives and s negatives,
/// with the remaining negatives avoided; every point of the result still
/// evaluates to exactly 1.
inline Extraction extract_coset(const SignedCosetCombination& comb, std::uint64_t cap = kDefaultCap,
                                std::uint64_t budget = 1'000'000) {
    auto values = detail::evaluate_all(comb, cap);
    std::uint64_t u_size = 0;
    for (int v : values) {
        if (v != 0 && v != 1) throw PreconditionError("combination is not an indicator");
        u_size += static_cast<std::uint64_t>(v);
    }
    auto k = exact_log(comb.group.p, ExactCount(u_size));
    if (!k) throw PreconditionError("#U = " + std::to_string(u_size) + " is not a power of p");

    Extraction out;
    out.k = *k;
    out.big_l = comb.bound_l();
    out.lambda = lambda_constant(out.big_l, comb.group.p);
    out.lambda_ceiling = lambda_ceiling(out.big_l, comb.group.p);
    out.guaranteed_exponent = out.k - out.lambda_ceiling;

    auto finish = [&](const Coset& c, const char* route) {
        out.coset = c;
        out.size_exponent = c.size_exponent();
        out.route = route;
        return out;
    };

    // Identical cosets on both sides cancel.
    std::vector<Coset> pos = comb.positives, neg;
    for (const auto& b : comb.negatives) {
        auto it = std::find(pos.begin(), pos.end(), b);
        if (it != pos.end())
            pos.erase(it);
        else
            neg.push_back(b);
    }

    {
        detail::CosetRefiner refiner(comb.group, neg, cap, budget);
        std::vector<std::pair<std::uint64_t, std::size_t>> ranked;
        for (std::size_t i = 0; i < pos.size(); ++i) ranked.emplace_back(refiner.uncovered_count(pos[i]), i);
        std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return pos[a.second] < pos[b.second];
        });
        for (auto [free, i] : ranked) {
            if (free == 0) break;
            if (auto z = refiner.refine(pos[i], 0)) return finish(*z, "descent");
        }
    }

    // Start from A_{i_0} & .. & A_{i_s} & B_{j_1} & .. & B_{j_s}, avoiding the other negatives.
    struct Start {
        std::uint64_t free;
        Coset z;
        std::vector<Coset> avoid;
    };
    std::vector<Start> starts;
    const std::size_t np = pos.size(), nn = neg.size();
    detail::require(np + nn < 24, "too many cosets for the intersection search");
    for (std::uint64_t pm = 1; pm < (std::uint64_t{1} << np); ++pm) {
        for (std::uint64_t nm = 0; nm < (std::uint64_t{1} << nn); ++nm) {
            if (std::popcount(pm) != std::popcount(nm) + 1) continue;
            std::optional<Coset> z;
            for (std::size_t i = 0; i < np; ++i)
                if (pm >> i & 1) z = z ? coset_intersection(*z, pos[i], cap) : std::optional<Coset>(pos[i]);
            for (std::size_t j = 0; z && j < nn; ++j)
                if (nm >> j & 1) z = coset_intersection(*z, neg[j], cap);
            if (!z) continue;
            std::vector<Coset> avoid;
            for (std::size_t j = 0; j < nn; ++j)
                if (!(nm >> j & 1)) avoid.push_back(neg[j]);
            detail::CosetRefiner probe(comb.group, avoid, cap, budget);
            std::uint64_t free = probe.uncovered_count(*z);
            if (free > 0) starts.push_back({free, std::move(*z), std::move(avoid)});
        }
    }
    std::stable_sort(starts.begin(), starts.end(), [](const Start& a, const Start& b) {
        if (a.z.size_exponent() != b.z.size_exponent()) return a.z.size_exponent() > b.z.size_exponent();
        if (a.free != b.free) return a.free > b.free;
        return a.z < b.z;
    });
    for (const auto& s : starts) {
        detail::CosetRefiner refiner(comb.group, s.avoid, cap, budget);
        if (auto z = refiner.refine(s.z, 0)) return finish(*z, "intersection");
    }
    throw InternalFailure("no admissible refinement found; combination is a counterexample candidate");
}

/// Every coset of g, grouped by subgroup order and sorted.
inline std::vector<Coset> all_cosets(const GroupSpec& g, std::uint64_t cap = kDefaultCap) {
    g.element_count(cap);
    std::vector<Coset> out;
    for (int r = 0; r <= weight(g.type); ++r) {
        auto part = enumerate_cosets(g, prime_power(g.p, r), cap);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

/// A shortest signed-coset representation of a set.
struct CosetRepresentation {
    std::vector<Coset> positives;
    std::vector<Coset> negatives;
    std::size_t length() const { return positives.size() + negatives.size(); }
};

inline constexpr std::uint64_t kMinRepCap = 32;

/// Exhaustive search for shortest representations of sets as signed sums of
/// coset indicators in one small group. Sums of two signed cosets are
/// tabulated once, so length l costs one lookup per (l-2)-multiset.
class RepresentationSearch {
public:
    explicit RepresentationSearch(const GroupSpec& g, std::uint64_t cap = kMinRepCap)
        : g_(g), n_(g.element_count(cap)), cosets_(all_cosets(g, cap)) {
        atoms_.reserve(2 * cosets_.size());
        for (const auto& c : cosets_) {
            std::string f(n_, 0);
            for (const auto& x : c.elements(cap)) f[element_index(g, x)] = 1;
            atoms_.push_back(f);
            for (auto& v : f) v = static_cast<char>(-v);
            atoms_.push_back(f);
        }
        // atom 2c is +coset c, 2c+1 is -coset c
        for (std::size_t a = 0; a < atoms_.size(); ++a) singles_.emplace(atoms_[a], a);
        for (std::size_t a = 0; a < atoms_.size(); ++a)
            for (std::size_t b = a; b < atoms_.size(); ++b) {
                if (b == (a ^ 1)) continue;
                std::string f = atoms_[a];
                for (std::size_t i = 0; i < n_; ++i) f[i] = static_cast<char>(f[i] + atoms_[b][i]);
                pairs_.emplace(std::move(f), std::pair{a, b});
            }
    }

    const GroupSpec& group() const { return g_; }
    const std::vector<Coset>& cosets() const { return cosets_; }

    /// Bitmask form: bit i stands for element_at(g, i).
    std::optional<CosetRepresentation> find_mask(std::uint64_t mask, int max_len) const {
        std::string target(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) target[i] = static_cast<char>(mask >> i & 1);
        return find_target(std::move(target), max_len);
    }

    std::optional<CosetRepresentation> find(const std::vector<Element>& u, int max_len) const {
        std::string target(n_, 0);
        auto m = g_.moduli();
        for (const auto& x : u) {
            detail::check_element(g_, m, x);
            target[element_index(g_, x)] = 1;
        }
        return find_target(std::move(target), max_len);
    }

private:
    std::optional<CosetRepresentation> find_target(std::string target, int max_len) const {
        detail::require(max_len >= 1, "maxL must be positive");
        if (std::all_of(target.begin(), target.end(), [](char c) { return c == 0; })) return CosetRepresentation{};
        if (auto it = singles_.find(target); it != singles_.end()) return build({it->second});

        std::vector<std::size_t> chosen;
        std::optional<CosetRepresentation> found;
        auto search = [&](auto& self, std::size_t from, int left, const std::string& residual) -> bool {
            if (left == 0) {
                auto it = pairs_.find(residual);
                if (it == pairs_.end()) return false;
                auto idx = chosen;
                idx.push_back(it->second.first);
                idx.push_back(it->second.second);
                found = build(std::move(idx));
                return true;
            }
            std::string next(n_, 0);
            for (std::size_t a = from; a < atoms_.size(); ++a) {
                for (std::size_t i = 0; i < n_; ++i) next[i] = static_cast<char>(residual[i] - atoms_[a][i]);
                chosen.push_back(a);
                bool ok = self(self, a, left - 1, next);
                chosen.pop_back();
                if (ok) return true;
            }
            return false;
        };
        for (int len = 2; len <= max_len; ++len)
            if (search(search, 0, len - 2, target)) return found;
        return std::nullopt;
    }

    CosetRepresentation build(std::vector<std::size_t> idx) const {
        CosetRepresentation rep;
        std::sort(idx.begin(), idx.end());
        for (auto a : idx) (a % 2 == 0 ? rep.positives : rep.negatives).push_back(cosets_[a / 2]);
        return rep;
    }

    GroupSpec g_;
    std::size_t n_;
    std::vector<Coset> cosets_;
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, std::size_t> singles_;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> pairs_;
};

/// Least total number of signed cosets whose indicators sum to 1_U, if it
/// is at most max_len. The empty set has length 0.
inline std::optional<int> minimal_representation_length(const GroupSpec& g, const std::vector<Element>& u, int max_len,
                                                         std::uint64_t cap = kMinRepCap) {
    auto rep = RepresentationSearch(g, cap).find(u, max_len);
    if (!rep) return std::nullopt;
    return static_cast<int>(rep->length());
}

} // namespace cosetforge
