#include <gtest/gtest.h>

#include <map>

#include "generators.hpp"

using namespace cosetforge;

TEST(Partition, ConjugateExamples) {
    EXPECT_EQ(conjugate(Partition{3, 1}), (Partition{2, 1, 1}));
    EXPECT_EQ(conjugate(Partition{}), Partition{});
    EXPECT_EQ(conjugate(Partition{2, 2, 2}), (Partition{3, 3}));
}

TEST(Partition, RectangularConjugate) {
    for (int n = 1; n <= 6; ++n)
        for (int a = 1; a <= 6; ++a) {
            Partition rect(std::vector<int>(static_cast<std::size_t>(n), a));
            EXPECT_EQ(conjugate(rect), Partition(std::vector<int>(static_cast<std::size_t>(a), n)));
        }
}

TEST(Partition, Weight) {
    EXPECT_EQ(weight(Partition{3, 1}), 4);
    EXPECT_EQ(weight(Partition{}), 0);
    EXPECT_EQ(weight(Partition{2, 2, 1}), 5);
    EXPECT_EQ(weight(conjugate(Partition{2, 2, 1})), 5);
}

TEST(Partition, Contains) {
    EXPECT_TRUE(contains(Partition{2, 2}, Partition{2, 1}));
    EXPECT_FALSE(contains(Partition{2, 2}, Partition{3}));
    EXPECT_TRUE(contains(Partition{4, 2, 1}, Partition{4, 2, 1}));
    EXPECT_FALSE(contains(Partition{2}, Partition{1, 1}));
    EXPECT_TRUE(contains(Partition{1}, Partition{}));
}

TEST(Partition, IndexPastEndIsZero) {
    Partition b{3, 1};
    EXPECT_EQ(b[0], 3);
    EXPECT_EQ(b[1], 1);
    EXPECT_EQ(b[7], 0);
    EXPECT_EQ(Partition{}.largest(), 0);
}

TEST(Partition, RejectsMalformed) {
    EXPECT_THROW(Partition({1, 2}), PreconditionError);
    EXPECT_THROW(Partition({2, 0, 1}), PreconditionError);
    EXPECT_THROW(Partition::from_unsorted({1, -1}), PreconditionError);
    EXPECT_EQ(Partition::from_unsorted({1, 3, 0, 2}), (Partition{3, 2, 1}));
    EXPECT_EQ(Partition({2, 1, 0, 0}), (Partition{2, 1}));
}

TEST(Partition, SubtypeExamples) {
    EXPECT_EQ(enumerate_subtypes(Partition{1, 1, 1}, 1), std::vector<Partition>{Partition{1}});
    EXPECT_EQ(enumerate_subtypes(Partition{2, 1}, 2), (std::vector<Partition>{Partition{2}, Partition{1, 1}}));
    EXPECT_TRUE(enumerate_subtypes(Partition{2, 2}, 5).empty());
    EXPECT_EQ(enumerate_subtypes(Partition{2, 2}, 0), std::vector<Partition>{Partition{}});
    EXPECT_TRUE(enumerate_subtypes(Partition{2}, -1).empty());
}

TEST(Partition, InvolutionAndWeightOnRandomShapes) {
    gen::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto b = gen::partition(rng, 12, 12);
        EXPECT_EQ(conjugate(conjugate(b)), b) << b;
        EXPECT_EQ(weight(conjugate(b)), weight(b)) << b;
    }
}

// all partitions of r by plain recursion, filtered by containment
static std::vector<Partition> brute_subtypes(const Partition& alpha, int r) {
    std::vector<Partition> all;
    std::vector<int> cur;
    auto rec = [&](auto& self, int left, int cap) -> void {
        if (left == 0) {
            all.emplace_back(cur);
            return;
        }
        for (int v = std::min(left, cap); v >= 1; --v) {
            cur.push_back(v);
            self(self, left - v, v);
            cur.pop_back();
        }
    };
    rec(rec, r, r);
    std::vector<Partition> out;
    for (auto& b : all)
        if (contains(alpha, b)) out.push_back(b);
    return out;
}

TEST(Partition, SubtypesMatchBruteForce) {
    gen::Rng rng(12);
    for (int i = 0; i < 300; ++i) {
        auto alpha = gen::partition(rng, 6, 5);
        std::uint64_t total = 0;
        for (int r = 0; r <= weight(alpha); ++r) {
            auto fast = enumerate_subtypes(alpha, r);
            auto slow = brute_subtypes(alpha, r);
            EXPECT_EQ(fast, slow) << alpha << " r=" << r;
            EXPECT_TRUE(std::is_sorted(fast.rbegin(), fast.rend()));
            total += fast.size();
        }
        // every subtype of alpha, counted by a product-free recursion over parts
        std::map<std::pair<std::size_t, int>, std::uint64_t> memo;
        auto count = [&](auto& self, std::size_t i, int cap) -> std::uint64_t {
            if (i == alpha.length()) return 1;
            auto key = std::pair{i, cap};
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            std::uint64_t c = 0;
            for (int v = 0; v <= std::min(cap, alpha[i]); ++v) c += self(self, i + 1, v);
            return memo[key] = c;
        };
        EXPECT_EQ(total, count(count, 0, alpha.largest())) << alpha;
    }
}

TEST(Partition, PartitionsOf) {
    EXPECT_EQ(partitions_of(0).size(), 1u);
    EXPECT_EQ(partitions_of(5).size(), 7u);
    EXPECT_EQ(partitions_of(10).size(), 42u);
    EXPECT_EQ(partitions_of(6, 2).size(), 4u);
    EXPECT_TRUE(partitions_of(3, 0).empty());
}
