#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <cosetforge/cosetforge.hpp>

namespace gen {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

inline int between(Rng& rng, int lo, int hi) { return lo + static_cast<int>(below(rng, static_cast<std::uint64_t>(hi - lo + 1))); }

inline cosetforge::Partition partition(Rng& rng, int max_parts, int max_part) {
    std::vector<int> parts(static_cast<std::size_t>(between(rng, 0, max_parts)));
    for (auto& v : parts) v = between(rng, 1, max_part);
    return cosetforge::Partition::from_unsorted(std::move(parts));
}

/// A p-group with p in {2,3} and order at most 2^max_log2.
inline cosetforge::GroupSpec group(Rng& rng, int max_log2) {
    const std::int64_t p = below(rng, 2) ? 3 : 2;
    const int budget = p == 2 ? max_log2 : (max_log2 * 63) / 100;  // 3^k <= 2^max_log2
    std::vector<int> parts;
    int left = between(rng, 0, budget);
    while (left > 0) {
        int v = between(rng, 1, left);
        parts.push_back(v);
        left -= v;
    }
    return cosetforge::GroupSpec(p, cosetforge::Partition::from_unsorted(std::move(parts)));
}

inline cosetforge::Element element(Rng& rng, const cosetforge::GroupSpec& g) {
    auto m = g.moduli();
    cosetforge::Element x(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) x[i] = static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(m[i])));
    return x;
}

inline std::vector<cosetforge::Element> elements(Rng& rng, const cosetforge::GroupSpec& g, int max_count) {
    std::vector<cosetforge::Element> out(static_cast<std::size_t>(between(rng, 0, max_count)));
    for (auto& x : out) x = element(rng, g);
    return out;
}

/// Span of a set by breadth-first closure under addition.
inline std::vector<cosetforge::Element> span(const cosetforge::GroupSpec& g, const std::vector<cosetforge::Element>& gens) {
    std::set<cosetforge::Element> seen{cosetforge::Element(g.rank(), 0)};
    std::vector<cosetforge::Element> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<cosetforge::Element> next;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                auto y = cosetforge::add(g, x, s);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace gen
