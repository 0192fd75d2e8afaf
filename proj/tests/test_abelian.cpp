#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "generators.hpp"

using namespace cosetforge;

namespace {

const GroupSpec z4z2(2, Partition{2, 1});

} // namespace

TEST(Group, Order) {
    EXPECT_EQ(order(GroupSpec(2, Partition{1, 1, 1})), 8);
    EXPECT_EQ(order(GroupSpec(3, Partition{})), 1);
    EXPECT_EQ(order(z4z2), 8);
    EXPECT_THROW(GroupSpec(6, Partition{1}), PreconditionError);
    EXPECT_EQ(z4z2.moduli(), (std::vector<std::int64_t>{4, 2}));
}

TEST(Group, ElementCountRespectsCap) {
    GroupSpec big(2, Partition(std::vector<int>(13, 1)));
    EXPECT_THROW(big.element_count(), CapExceeded);
    EXPECT_EQ(big.element_count(1 << 13), 8192u);
}

TEST(Group, ElementIndexRoundTrip) {
    GroupSpec g(3, Partition{2, 1, 1});
    auto all = all_elements(g);
    ASSERT_EQ(all.size(), 81u);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    for (std::uint64_t i = 0; i < all.size(); ++i) EXPECT_EQ(element_index(g, element_at(g, i)), i);
}

TEST(Subgroup, FromGeneratorsExamples) {
    EXPECT_EQ(Subgroup::from_generators(z4z2, std::vector<Element>{{0, 0}}).order(), 1);
    auto whole = Subgroup::from_generators(z4z2, std::vector<Element>{{1, 0}, {0, 1}});
    EXPECT_EQ(whole.order(), 8);
    EXPECT_EQ(whole, Subgroup::whole(z4z2));
    auto h = Subgroup::from_generators(z4z2, std::vector<Element>{{2, 1}});
    EXPECT_EQ(h.order(), 2);
    EXPECT_EQ(h.elements(), (std::vector<Element>{{0, 0}, {2, 1}}));
    EXPECT_THROW(Subgroup::from_generators(z4z2, std::vector<Element>{{4, 0}}), PreconditionError);
    EXPECT_THROW(Subgroup::from_generators(z4z2, std::vector<Element>{{1}}), PreconditionError);
}

TEST(Subgroup, Membership) {
    auto trivial = Subgroup::trivial(z4z2);
    EXPECT_TRUE(membership(trivial, {0, 0}));
    EXPECT_FALSE(membership(trivial, {1, 0}));
    auto h = Subgroup::from_generators(z4z2, std::vector<Element>{{2, 1}});
    EXPECT_FALSE(membership(h, {2, 0}));
    EXPECT_TRUE(membership(h, {2, 1}));
}

TEST(Subgroup, TypeExamples) {
    EXPECT_EQ(subgroup_type(Subgroup::trivial(z4z2)), Partition{});
    EXPECT_EQ(subgroup_type(Subgroup::whole(z4z2)), (Partition{2, 1}));
    EXPECT_EQ(subgroup_type(Subgroup::from_generators(z4z2, std::vector<Element>{{2, 1}})), Partition{1});
    GroupSpec g(2, Partition{3, 1});
    EXPECT_EQ(subgroup_type(Subgroup::from_generators(g, std::vector<Element>{{2, 1}})), Partition{2});
    EXPECT_EQ(subgroup_type(Subgroup::from_generators(g, std::vector<Element>{{2, 0}, {0, 1}})), (Partition{2, 1}));
}

TEST(Subgroup, CanonicalFormMatchesBruteSpan) {
    gen::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        auto g = gen::group(rng, 10);
        auto gens = gen::elements(rng, g, 4);
        auto h = Subgroup::from_generators(g, gens);
        auto expected = gen::span(g, gens);
        ASSERT_EQ(h.elements(1 << 10), expected) << g.p << ' ' << g.type;
        // any generating set of the same span canonicalizes identically
        EXPECT_EQ(Subgroup::from_generators(g, h.generators()), h);
        auto shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (gens.size() > 1) shuffled.push_back(add(g, gens[0], gens[1]));
        EXPECT_EQ(Subgroup::from_generators(g, shuffled), h);
        for (int k = 0; k < 5; ++k) {
            auto x = gen::element(rng, g);
            EXPECT_EQ(h.contains(x), std::binary_search(expected.begin(), expected.end(), x));
        }
        EXPECT_EQ(ExactCount(expected.size()) * h.index(), order(g));
        EXPECT_EQ(oracle::type_conjugate(g, expected), conjugate(subgroup_type(h)));
    }
}

TEST(Subgroup, EnumerationExamples) {
    GroupSpec z2cubed(2, Partition{1, 1, 1});
    EXPECT_EQ(enumerate_subgroups(z2cubed, 2).size(), 7u);
    EXPECT_EQ(enumerate_subgroups(z4z2, 1), std::vector<Subgroup>{Subgroup::trivial(z4z2)});
    EXPECT_EQ(enumerate_subgroups(z4z2, 2).size(), 3u);
    EXPECT_TRUE(enumerate_subgroups(z4z2, 3).empty());
    EXPECT_TRUE(enumerate_subgroups(z4z2, 16).empty());
    EXPECT_THROW(enumerate_subgroups(GroupSpec(2, Partition(std::vector<int>(13, 1))), 2), CapExceeded);
}

TEST(Subgroup, EnumerationMatchesClosureOracle) {
    for (std::int64_t p : {2, 3})
        for (int w = 0; std::pow(p, w) <= 64; ++w)
            for (const auto& a : partitions_of(w)) {
                GroupSpec g(p, a);
                oracle::Cayley table(g, 64);
                auto naive = oracle::all_subgroups(table);
                std::set<oracle::Mask> fast;
                for (int r = 0; r <= w; ++r)
                    for (const auto& h : enumerate_subgroups(g, prime_power(p, r))) {
                        auto mask = table.empty();
                        for (const auto& x : h.elements()) oracle::set_bit(mask, element_index(g, x));
                        EXPECT_TRUE(fast.insert(mask).second);
                        EXPECT_EQ(oracle::popcount(mask), static_cast<std::size_t>(prime_power(p, r)));
                    }
                EXPECT_EQ(fast, naive) << p << ' ' << a;
            }
}

TEST(Subgroup, EnumerationIsSortedAndDistinct) {
    GroupSpec g(3, Partition{2, 1});
    for (int r = 0; r <= 3; ++r) {
        auto subs = enumerate_subgroups(g, prime_power(3, r));
        EXPECT_TRUE(std::is_sorted(subs.begin(), subs.end()));
        EXPECT_EQ(std::adjacent_find(subs.begin(), subs.end()), subs.end());
        for (const auto& h : subs) EXPECT_EQ(h.order_exponent(), r);
    }
}

TEST(Subgroup, DualityOfCounts) {
    for (std::int64_t p : {2, 3})
        for (int w = 0; w <= (p == 2 ? 7 : 4); ++w)
            for (const auto& a : partitions_of(w)) {
                GroupSpec g(p, a);
                for (int r = 0; r <= w; ++r)
                    EXPECT_EQ(count_subgroups_by_enumeration(g, r, 1 << 10), count_subgroups_by_enumeration(g, w - r, 1 << 10))
                        << p << ' ' << a << ' ' << r;
            }
}

TEST(Subgroup, SumIntersectionMultiply) {
    gen::Rng rng(22);
    for (int i = 0; i < 60; ++i) {
        auto g = gen::group(rng, 6);
        auto a = Subgroup::from_generators(g, gen::elements(rng, g, 2));
        auto b = Subgroup::from_generators(g, gen::elements(rng, g, 2));
        auto s = subgroup_sum(a, b);
        auto meet = subgroup_intersection(a, b);
        // #(A+B) #(A&B) = #A #B
        EXPECT_EQ(s.order() * meet.order(), a.order() * b.order());
        for (const auto& x : meet.elements()) EXPECT_TRUE(a.contains(x) && b.contains(x));
        auto twice = multiply(a, g.p);
        for (const auto& x : a.elements()) EXPECT_TRUE(twice.contains(scale(g, g.p, x)));
    }
}

TEST(Coset, EnumerationExamples) {
    GroupSpec z2sq(2, Partition{1, 1});
    EXPECT_EQ(enumerate_cosets(z2sq, 2).size(), 6u);
    EXPECT_EQ(enumerate_cosets(z4z2, 8).size(), 1u);
    EXPECT_EQ(enumerate_cosets(GroupSpec(2, Partition{1, 1, 1}), 4).size(), 14u);
}

TEST(Coset, CanonicalRepresentativeAndLagrange) {
    gen::Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        auto g = gen::group(rng, 6);
        const int w = weight(g.type);
        std::set<std::vector<Element>> sets;
        for (int r = 0; r <= w; ++r) {
            auto cos = enumerate_cosets(g, prime_power(g.p, r));
            EXPECT_EQ(ExactCount(cos.size()),
                      ExactCount(enumerate_subgroups(g, prime_power(g.p, r)).size()) * prime_power(g.p, w - r));
            for (const auto& c : cos) {
                auto e = c.elements();
                EXPECT_EQ(e.front(), c.representative());
                EXPECT_EQ(ExactCount(e.size()), c.size());
                EXPECT_TRUE(sets.insert(e).second);
                EXPECT_EQ(Coset(c.subgroup(), e.back()), c);
            }
        }
    }
}

TEST(Coset, Intersection) {
    GroupSpec g(2, Partition{1, 1, 1});
    Coset a(Subgroup::from_generators(g, std::vector<Element>{{1, 0, 0}, {0, 1, 0}}), {0, 0, 1});
    Coset b(Subgroup::from_generators(g, std::vector<Element>{{0, 1, 0}, {0, 0, 1}}), {1, 0, 0});
    auto meet = coset_intersection(a, b);
    ASSERT_TRUE(meet);
    EXPECT_EQ(meet->elements(), (std::vector<Element>{{1, 0, 1}, {1, 1, 1}}));
    Coset c(a.subgroup(), {0, 0, 0});
    EXPECT_FALSE(coset_intersection(a, c));
}

TEST(FreeRankBound, FreeRankExamples) {
    GroupSpec z4sq(2, Partition{2, 2});
    EXPECT_EQ(max_free_rank(Subgroup::whole(z4sq), 2), 2);
    EXPECT_EQ(max_free_rank(multiply(Subgroup::whole(z4sq), 2), 2), 0);
    EXPECT_EQ(max_free_rank(Subgroup::from_generators(z4sq, std::vector<Element>{{1, 0}}), 2), 1);
    EXPECT_THROW(max_free_rank(Subgroup::whole(z4z2), 2), PreconditionError);
}

TEST(FreeRankBound, BoundaryCaseRecorded) {
    GroupSpec z4sq(2, Partition{2, 2});
    auto h = multiply(Subgroup::whole(z4sq), 2);
    EXPECT_FALSE(lemma3_check(z4sq, h, 0));
    EXPECT_TRUE(lemma3_check_nonstrict(z4sq, h, 0));
    EXPECT_TRUE(lemma3_check(z4sq, Subgroup::whole(z4sq), 1));  // vacuous
}

TEST(FreeRankBound, NonStrictHoldsExhaustively) {
    int boundary = 0;
    for (std::int64_t p : {2, 3})
        for (int n = 1; n <= 3; ++n)
            for (int a = 1; a <= (p == 2 ? 3 : 2); ++a) {
                GroupSpec g(p, Partition(std::vector<int>(static_cast<std::size_t>(n), a)));
                if (weight(g.type) > 8) continue;
                for (int r = 0; r <= n * a; ++r)
                    for (const auto& h : enumerate_subgroups(g, prime_power(p, r)))
                        for (int k = 0; k <= n; ++k) {
                            EXPECT_TRUE(lemma3_check_nonstrict(g, h, k)) << p << ' ' << n << ' ' << a << ' ' << k;
                            boundary += lemma3_check(g, h, k) ? 0 : 1;
                        }
            }
    EXPECT_GT(boundary, 0);
}

TEST(TypeContainment, TypesContainedExhaustivelySmall) {
    for (std::int64_t p : {2, 3})
        for (int w = 0; std::pow(p, w) <= 256; ++w)
            for (const auto& a : partitions_of(w)) {
                GroupSpec g(p, a);
                for (int r = 0; r <= w; ++r)
                    for (const auto& h : enumerate_subgroups(g, prime_power(p, r), 256))
                        EXPECT_TRUE(contains(a, subgroup_type(h))) << p << ' ' << a;
            }
}
