#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "error.hpp"

namespace cosetforge {

/// Weakly decreasing sequence of positive integers. Only the positive parts
/// are stored; reading past the end yields 0, so every partition behaves as
/// an infinite sequence with finite support.
class Partition {
public:
    Partition() = default;

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Accepts any weakly decreasing sequence of non-negative integers;
    /// trailing zeros are dropped.
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            detail::require(parts_[i] > 0, "partition parts must be positive");
            detail::require(i == 0 || parts_[i - 1] >= parts_[i],
                            "partition parts must be weakly decreasing");
        }
    }

    /// Sorts arbitrary non-negative parts into partition order.
    static Partition from_unsorted(std::vector<int> parts) {
        for (int v : parts) detail::require(v >= 0, "partition parts must be non-negative");
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    /// 0-based access; indices past the last part read as 0.
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    const std::vector<int>& parts() const { return parts_; }

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

inline int weight(const Partition& beta) {
    int total = 0;
    for (int v : beta.parts()) total += v;
    return total;
}

/// Young-diagram transpose: part i of the result counts the parts >= i.
inline Partition conjugate(const Partition& beta) {
    std::vector<int> out(static_cast<std::size_t>(beta.largest()), 0);
    for (int v : beta.parts())
        for (int i = 0; i < v; ++i) ++out[static_cast<std::size_t>(i)];
    return Partition(std::move(out));
}

/// True iff beta_i <= alpha_i for every i.
inline bool contains(const Partition& alpha, const Partition& beta) {
    if (beta.length() > alpha.length()) return false;
    for (std::size_t i = 0; i < beta.length(); ++i)
        if (beta[i] > alpha[i]) return false;
    return true;
}

/// All beta contained in alpha with weight r, lexicographically descending.
inline std::vector<Partition> enumerate_subtypes(const Partition& alpha, int r) {
    std::vector<Partition> out;
    if (r < 0 || r > weight(alpha)) return out;

    std::vector<int> current;
    auto recurse = [&](auto& self, std::size_t i, int remaining, int cap) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        if (i >= alpha.length()) return;
        int hi = std::min({cap, alpha[i], remaining});
        for (int v = hi; v >= 1; --v) {
            // the tail after i can hold at most min(v, alpha_j) per slot
            int tail = 0;
            for (std::size_t j = i + 1; j < alpha.length() && tail < remaining - v; ++j)
                tail += std::min(v, alpha[j]);
            if (v + tail < remaining) break;
            current.push_back(v);
            self(self, i + 1, remaining - v, v);
            current.pop_back();
        }
    };
    recurse(recurse, 0, r, r);
    return out;
}

/// Partitions of n with every part at most max_part, lexicographically descending.
inline std::vector<Partition> partitions_of(int n, int max_part) {
    if (n < 0 || max_part < 0) return {};
    if (n == 0) return {Partition{}};
    return enumerate_subtypes(Partition(std::vector<int>(static_cast<std::size_t>(n), max_part)), n);
}

inline std::vector<Partition> partitions_of(int n) { return partitions_of(n, n); }

inline std::ostream& operator<<(std::ostream& os, const Partition& p) {
    os << '(';
    for (std::size_t i = 0; i < p.length(); ++i) os << (i ? "," : "") << p[i];
    return os << ')';
}

} // namespace cosetforge
