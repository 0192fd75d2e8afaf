#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

#include "abelian.hpp"
#include "cosetring.hpp"
#include "error.hpp"

namespace cosetforge {

/// The dual of a finite abelian group is identified with the group itself:
/// the character indexed by chi sends g to exp(2 pi i sum_j chi_j g_j / m_j).
using Scalar = std::complex<double>;

/// Finitely supported coefficients on the dual group.
struct CoefficientVector {
    GroupSpec group;
    std::map<Element, Scalar> coeffs;

    static CoefficientVector indicator(const GroupSpec& g, const std::vector<Element>& support) {
        CoefficientVector v{g, {}};
        auto m = g.moduli();
        for (const auto& chi : support) {
            detail::check_element(g, m, chi);
            v.coeffs[chi] = 1.0;
        }
        return v;
    }

    static CoefficientVector indicator(const Coset& c, std::uint64_t cap = kDefaultCap) {
        return indicator(c.group(), c.elements(cap));
    }
};

namespace detail {

/// exp(2 pi i k / modulus) for k in [0, modulus), in long double.
class RootTable {
public:
    explicit RootTable(std::int64_t modulus) : modulus_(modulus), roots_(static_cast<std::size_t>(modulus)) {
        for (std::int64_t k = 0; k < modulus; ++k) {
            long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                static_cast<long double>(modulus);
            roots_[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
        }
    }
    const std::complex<long double>& operator[](std::int64_t k) const { return roots_[static_cast<std::size_t>(k)]; }
    std::int64_t modulus() const { return modulus_; }

private:
    std::int64_t modulus_;
    std::vector<std::complex<long double>> roots_;
};

/// Phase index of chi(g) in units of 2 pi / m_0 (m_0 is the largest modulus).
inline std::int64_t phase(const std::vector<std::int64_t>& m, const Element& chi, const Element& g) {
    if (m.empty()) return 0;
    const std::int64_t top = m.front();
    std::int64_t ph = 0;
    for (std::size_t j = 0; j < m.size(); ++j) ph = (ph + (chi[j] * g[j]) % m[j] * (top / m[j])) % top;
    return ph;
}

/// Neumaier-compensated running sum.
struct CompensatedSum {
    long double sum = 0, comp = 0;
    void add(long double v) {
        long double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    long double value() const { return sum + comp; }
};

} // namespace detail

inline Scalar character_value(const GroupSpec& g, const Element& chi, const Element& x) {
    auto m = g.moduli();
    detail::check_element(g, m, chi);
    detail::check_element(g, m, x);
    if (m.empty()) return 1.0;
    auto ph = detail::phase(m, chi, x);
    long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(ph) /
                        static_cast<long double>(m.front());
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

/// Normalised L1 norm over G of sum_chi a_chi chi, the Fourier-algebra norm
/// of the coefficient vector. Dense evaluation, no FFT.
inline double a_norm(const CoefficientVector& v, std::uint64_t cap = kDefaultCap) {
    const GroupSpec& g = v.group;
    const std::uint64_t n = g.element_count(cap);
    auto m = g.moduli();
    for (const auto& [chi, a] : v.coeffs) detail::check_element(g, m, chi);
    if (v.coeffs.empty()) return 0.0;
    detail::RootTable roots(m.empty() ? 1 : m.front());

    std::vector<std::pair<Element, std::complex<long double>>> terms;
    for (const auto& [chi, a] : v.coeffs) terms.emplace_back(chi, std::complex<long double>(a.real(), a.imag()));

    detail::CompensatedSum total;
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        Element x = element_at(g, idx);
        std::complex<long double> s = 0;
        for (const auto& [chi, a] : terms) s += a * roots[detail::phase(m, chi, x)];
        total.add(std::abs(s));
    }
    return static_cast<double>(total.value() / static_cast<long double>(n));
}

/// An injection between dual groups.
struct InjectionTable {
    GroupSpec source;
    GroupSpec target;
    std::map<Element, Element> map;

    void validate() const {
        auto ms = source.moduli();
        auto mt = target.moduli();
        std::set<Element> image;
        for (const auto& [from, to] : map) {
            detail::check_element(source, ms, from);
            detail::check_element(target, mt, to);
            detail::require(image.insert(to).second, "injection table maps two characters to one");
        }
    }

    static InjectionTable identity(const GroupSpec& g, std::uint64_t cap = kDefaultCap) {
        InjectionTable t{g, g, {}};
        for (const auto& x : all_elements(g, cap)) t.map.emplace(x, x);
        return t;
    }
};

/// Moves each coefficient a_chi to the character sigma(chi).
inline CoefficientVector pushforward(const InjectionTable& sigma, const CoefficientVector& v) {
    sigma.validate();
    detail::require(v.group == sigma.source, "vector lives on a different group than the injection source");
    CoefficientVector out{sigma.target, {}};
    for (const auto& [chi, a] : v.coeffs) {
        auto it = sigma.map.find(chi);
        detail::require(it != sigma.map.end(), "support leaves the injection's domain");
        out.coeffs.emplace(it->second, a);
    }
    return out;
}

struct DistortionReport {
    std::vector<double> source_norms;
    std::vector<double> target_norms;
    std::vector<double> ratios;  // target / source
    double max_ratio = 0;
    double max_inverse_ratio = 0;
    /// max ratio * max inverse ratio; a lower bound on ||T|| ||T^{-1}||.
    double lower_bound = 0;
};

inline DistortionReport distortion_witness(const InjectionTable& sigma, const std::vector<CoefficientVector>& witnesses,
                                           std::uint64_t cap = kDefaultCap) {
    detail::require(!witnesses.empty(), "at least one witness is required");
    DistortionReport r;
    for (const auto& w : witnesses) {
        double src = a_norm(w, cap);
        if (!(src > 0)) throw PreconditionError("witness has zero norm");
        double dst = a_norm(pushforward(sigma, w), cap);
        if (!(dst > 0)) throw PreconditionError("witness image has zero norm");
        r.source_norms.push_back(src);
        r.target_norms.push_back(dst);
        r.ratios.push_back(dst / src);
        r.max_ratio = std::max(r.max_ratio, dst / src);
        r.max_inverse_ratio = std::max(r.max_inverse_ratio, src / dst);
    }
    r.lower_bound = r.max_ratio * r.max_inverse_ratio;
    return r;
}

/// Indicators of every coset of the dual, in canonical coset order.
inline std::vector<CoefficientVector> default_witnesses(const GroupSpec& g, std::uint64_t cap = kDefaultCap) {
    std::vector<CoefficientVector> out;
    for (const auto& c : all_cosets(g, cap)) out.push_back(CoefficientVector::indicator(c, cap));
    return out;
}

/// Unit-coefficient norms of subsets given as bitmasks over element_index.
class SubsetNormTable {
public:
    explicit SubsetNormTable(const GroupSpec& g, std::uint64_t cap = kDefaultCap)
        : g_(g), n_(g.element_count(cap)), m_(g.moduli()), roots_(m_.empty() ? 1 : m_.front()) {
        elements_ = all_elements(g, cap);
        phases_.resize(n_ * n_);
        for (std::size_t c = 0; c < n_; ++c)
            for (std::size_t x = 0; x < n_; ++x) phases_[c * n_ + x] = detail::phase(m_, elements_[c], elements_[x]);
    }

    std::size_t size() const { return n_; }

    double norm(std::uint64_t mask) const {
        if (mask == 0) return 0.0;
        detail::CompensatedSum total;
        for (std::size_t x = 0; x < n_; ++x) {
            std::complex<long double> s = 0;
            for (std::size_t c = 0; c < n_; ++c)
                if (mask >> c & 1) s += roots_[phases_[c * n_ + x]];
            total.add(std::abs(s));
        }
        return static_cast<double>(total.value() / static_cast<long double>(n_));
    }

private:
    GroupSpec g_;
    std::size_t n_;
    std::vector<std::int64_t> m_;
    detail::RootTable roots_;
    std::vector<Element> elements_;
    std::vector<std::int64_t> phases_;
};

struct SurveyRow {
    std::uint64_t mask = 0;
    double norm = 0;
    std::optional<int> min_coset_length;
    /// Distinct subgroups among the cosets of the representation found. It
    /// describes that representation only; it is not minimised.
    std::optional<int> distinct_subgroups;
};

inline constexpr std::uint64_t kSurveyCap = 32;

/// Every nonempty subset S of the dual with unit-coefficient norm at most
/// norm_cap, with the shortest coset-ring representation of S (up to max_len).
inline std::vector<SurveyRow> idempotent_survey(const GroupSpec& g, double norm_cap, int max_len,
                                                std::uint64_t cap = kSurveyCap) {
    detail::require(cap <= kSurveyCap, "survey cap cannot exceed 32 elements");
    SubsetNormTable norms(g, cap);
    RepresentationSearch search(g, cap);
    std::vector<SurveyRow> rows;
    const std::uint64_t n = norms.size();
    const std::uint64_t limit = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n);
    for (std::uint64_t mask = 1; mask < limit && mask != 0; ++mask) {
        double v = norms.norm(mask);
        if (v > norm_cap) continue;
        SurveyRow row{mask, v, std::nullopt, std::nullopt};
        if (auto rep = search.find_mask(mask, max_len)) {
            row.min_coset_length = static_cast<int>(rep->length());
            std::set<Subgroup> subs;
            for (const auto& c : rep->positives) subs.insert(c.subgroup());
            for (const auto& c : rep->negatives) subs.insert(c.subgroup());
            row.distinct_subgroups = static_cast<int>(subs.size());
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace cosetforge
