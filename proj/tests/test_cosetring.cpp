#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "generators.hpp"

using namespace cosetforge;

namespace {

Coset coset(const GroupSpec& g, std::vector<Element> gens, Element rep) {
    return Coset(Subgroup::from_generators(g, gens), rep);
}

bool inside(const Coset& c, const std::vector<Element>& u) {
    for (const auto& x : c.elements())
        if (!std::binary_search(u.begin(), u.end(), x)) return false;
    return true;
}

const GroupSpec z2cubed(2, Partition{1, 1, 1});

} // namespace

TEST(CosetRing, Evaluate) {
    auto a = coset(z2cubed, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 0});
    auto b = coset(z2cubed, {{1, 0, 0}}, {0, 0, 0});
    SignedCosetCombination single{z2cubed, {a}, {}};
    EXPECT_EQ(evaluate(single, {1, 1, 0}), 1);
    EXPECT_EQ(evaluate(single, {1, 1, 1}), 0);
    SignedCosetCombination diff{z2cubed, {a}, {b}};
    EXPECT_EQ(evaluate(diff, {1, 0, 0}), 0);
    EXPECT_EQ(evaluate(diff, {0, 1, 0}), 1);
    EXPECT_THROW(evaluate(diff, {2, 0, 0}), PreconditionError);
}

TEST(CosetRing, IsIndicator) {
    auto a = coset(z2cubed, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 0});
    auto b = coset(z2cubed, {{1, 0, 0}}, {0, 0, 0});
    auto outside = coset(z2cubed, {{1, 0, 0}}, {0, 0, 1});
    EXPECT_TRUE(is_indicator({z2cubed, {a}, {}}));
    EXPECT_TRUE(is_indicator({z2cubed, {a}, {b}}));
    EXPECT_FALSE(is_indicator({z2cubed, {a}, {outside}}));
    EXPECT_FALSE(is_indicator({z2cubed, {a, a}, {}}));
}

TEST(CosetRing, Materialize) {
    auto a = coset(z2cubed, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 0});
    EXPECT_EQ(materialize({z2cubed, {a}, {}}), a.elements());
    auto whole = Coset(Subgroup::whole(z2cubed), {0, 0, 0});
    EXPECT_EQ(materialize({z2cubed, {whole}, {a}}), coset(z2cubed, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 1}).elements());
    auto c = coset(z2cubed, {{1, 0, 0}}, {0, 0, 1});
    auto u = materialize({z2cubed, {a, c}, {}});
    EXPECT_EQ(u.size(), 6u);
    EXPECT_THROW(materialize({z2cubed, {a}, {c}}), PreconditionError);
}

TEST(Extract, ComplementCoset) {
    GroupSpec g(2, Partition{1, 1, 1, 1});
    auto whole = Coset(Subgroup::whole(g), {0, 0, 0, 0});
    auto h = coset(g, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, {0, 0, 0, 0});
    auto e = extract_coset({g, {whole}, {h}});
    EXPECT_EQ(e.coset, Coset(h.subgroup(), {0, 0, 0, 1}));
    EXPECT_EQ(e.k, 3);
    EXPECT_TRUE(e.meets_guarantee());
}

TEST(Extract, TwoDisjointCosets) {
    GroupSpec g(2, Partition{1, 1, 1, 1});
    auto a = coset(g, {{1, 0, 0, 0}, {0, 1, 0, 0}}, {0, 0, 0, 0});
    auto b = coset(g, {{1, 0, 0, 0}, {0, 0, 1, 0}}, {0, 0, 0, 1});
    SignedCosetCombination comb{g, {a, b}, {}};
    auto e = extract_coset(comb);
    EXPECT_TRUE(e.coset == a || e.coset == b);
    EXPECT_EQ(e.size_exponent, 2);
    EXPECT_EQ(e.k, 3);
    EXPECT_EQ(e.lambda_ceiling, 3);
    EXPECT_EQ(e.guaranteed_exponent, 0);
    EXPECT_TRUE(inside(e.coset, materialize(comb)));
}

TEST(Extract, RejectsNonPowerSize) {
    GroupSpec g(2, Partition{1, 1, 1, 1, 1});
    auto a = coset(g, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}}, {0, 0, 0, 0, 0});
    auto b = coset(g, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}, {0, 0, 1, 0, 0});
    EXPECT_THROW(extract_coset({g, {a}, {b}}), PreconditionError);
}

TEST(Extract, NeedsIntersectionStart) {
    // G + H1 - H2 - (H2 + e) = H1, and every positive is fully covered by negatives.
    auto whole = Coset(Subgroup::whole(z2cubed), {0, 0, 0});
    auto h1 = coset(z2cubed, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 0});
    auto h2 = coset(z2cubed, {{0, 1, 0}, {0, 0, 1}}, {0, 0, 0});
    auto h2e = coset(z2cubed, {{0, 1, 0}, {0, 0, 1}}, {1, 0, 0});
    SignedCosetCombination comb{z2cubed, {whole, h1}, {h2, h2e}};
    auto u = materialize(comb);
    EXPECT_EQ(u, h1.elements());
    auto e = extract_coset(comb);
    EXPECT_EQ(e.route, "intersection");
    EXPECT_TRUE(inside(e.coset, u));
    EXPECT_TRUE(e.meets_guarantee());
}

TEST(Extract, RandomCombinationsStayInside) {
    gen::Rng rng(41);
    int done = 0;
    for (int attempt = 0; attempt < 4000 && done < 150; ++attempt) {
        GroupSpec g(2, Partition(std::vector<int>(static_cast<std::size_t>(gen::between(rng, 2, 6)), 1)));
        SignedCosetCombination comb{g, {}, {}};
        for (int i = gen::between(rng, 1, 3); i > 0; --i)
            comb.positives.emplace_back(Subgroup::from_generators(g, gen::elements(rng, g, 3)), gen::element(rng, g));
        for (int i = gen::between(rng, 0, 2); i > 0; --i) {
            const auto& a = comb.positives[gen::below(rng, comb.positives.size())];
            auto sub = Subgroup::from_generators(g, std::vector<Element>{a.subgroup().generators().empty() ? Element(g.rank(), 0) : a.subgroup().generators().front()});
            comb.negatives.emplace_back(sub, a.representative());
        }
        if (!is_indicator(comb)) continue;
        auto u = materialize(comb);
        if (u.empty() || !exact_log(2, ExactCount(u.size()))) continue;
        auto e = extract_coset(comb);
        EXPECT_TRUE(inside(e.coset, u));
        EXPECT_TRUE(e.meets_guarantee());
        ++done;
    }
    EXPECT_GE(done, 100);
}

TEST(MinRep, Examples) {
    auto c = coset(z2cubed, {{1, 0, 0}}, {0, 1, 1});
    EXPECT_EQ(minimal_representation_length(z2cubed, c.elements(), 3), 1);
    auto big = coset(z2cubed, {{1, 0, 0}, {0, 1, 0}}, {0, 0, 1});
    auto u = big.elements();
    u.erase(u.begin());
    EXPECT_EQ(minimal_representation_length(z2cubed, u, 3), 2);
    EXPECT_EQ(minimal_representation_length(z2cubed, {}, 3), 0);
    // three points: a size-4 coset minus its fourth point
    std::vector<Element> three{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}};
    EXPECT_EQ(minimal_representation_length(z2cubed, three, 4), 2);
}

TEST(MinRep, EverySubsetOfZ2CubedHasLengthAtMostTwo) {
    RepresentationSearch search(z2cubed);
    std::set<std::size_t> lengths;
    for (std::uint64_t mask = 1; mask < 256; ++mask) {
        auto rep = search.find_mask(mask, 4);
        ASSERT_TRUE(rep);
        lengths.insert(rep->length());
    }
    EXPECT_EQ(lengths, (std::set<std::size_t>{1, 2}));
}

TEST(MinRep, LengthThreeInZ2Fourth) {
    // zero and the four basis vectors
    GroupSpec g(2, Partition{1, 1, 1, 1});
    std::vector<Element> u{{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    EXPECT_EQ(minimal_representation_length(g, u, 2, 16), std::nullopt);
    EXPECT_EQ(minimal_representation_length(g, u, 3, 16), 3);
}

TEST(MinRep, RepresentationSumsToTarget) {
    GroupSpec g(2, Partition{2, 1});
    RepresentationSearch search(g);
    for (std::uint64_t mask = 1; mask < 256; ++mask) {
        auto rep = search.find_mask(mask, 3);
        if (!rep) continue;
        SignedCosetCombination comb{g, rep->positives, rep->negatives};
        auto u = materialize(comb);
        std::uint64_t got = 0;
        for (const auto& x : u) got |= std::uint64_t{1} << element_index(g, x);
        EXPECT_EQ(got, mask);
    }
}

TEST(MinRep, LengthOneIffCoset) {
    for (std::int64_t p : {2, 3})
        for (int w = 0; std::pow(p, w) <= 16; ++w)
            for (const auto& a : partitions_of(w)) {
                GroupSpec g(p, a);
                oracle::Cayley table(g, 16);
                auto cosets = oracle::all_coset_masks(table);
                RepresentationSearch search(g, 16);
                const std::uint64_t n = table.size();
                for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
                    auto m = table.empty();
                    m[0] = mask;
                    auto rep = search.find_mask(mask, 1);
                    EXPECT_EQ(rep.has_value(), cosets.count(m) == 1) << p << ' ' << a << ' ' << mask;
                }
            }
}

TEST(MinRep, CapEnforced) {
    GroupSpec g(2, Partition{1, 1, 1, 1, 1, 1});
    EXPECT_THROW(RepresentationSearch(g, kMinRepCap), CapExceeded);
}
