#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "generators.hpp"

using namespace cosetforge;

namespace {

const double kRoot2 = std::sqrt(2.0);

CoefficientVector add_vectors(const CoefficientVector& a, const CoefficientVector& b) {
    auto out = a;
    for (const auto& [chi, c] : b.coeffs) out.coeffs[chi] += c;
    return out;
}

CoefficientVector random_vector(gen::Rng& rng, const GroupSpec& g, int terms) {
    CoefficientVector v{g, {}};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < terms; ++i) v.coeffs[gen::element(rng, g)] += Scalar(u(rng), u(rng));
    return v;
}

} // namespace

TEST(Character, Values) {
    GroupSpec z2(2, Partition{1}), z4(2, Partition{2});
    EXPECT_EQ(character_value(z4, {0}, {3}), Scalar(1.0));
    EXPECT_NEAR(std::abs(character_value(z2, {1}, {1}) - Scalar(-1.0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(character_value(z4, {1}, {1}) - Scalar(0.0, 1.0)), 0, 1e-15);
    EXPECT_THROW(character_value(z4, {4}, {1}), PreconditionError);
}

TEST(Character, Multiplicative) {
    gen::Rng rng(51);
    for (int i = 0; i < 200; ++i) {
        auto g = gen::group(rng, 8);
        auto chi = gen::element(rng, g), x = gen::element(rng, g), y = gen::element(rng, g);
        auto lhs = character_value(g, chi, add(g, x, y));
        auto rhs = character_value(g, chi, x) * character_value(g, chi, y);
        EXPECT_NEAR(std::abs(lhs - rhs), 0, 1e-12);
    }
}

TEST(Norm, Examples) {
    GroupSpec z4(2, Partition{2});
    EXPECT_NEAR(a_norm(CoefficientVector::indicator(z4, {{3}})), 1.0, 1e-15);
    EXPECT_NEAR(a_norm(CoefficientVector::indicator(z4, {{0}, {1}})), (2 + 2 * kRoot2) / 4, 1e-12);
    EXPECT_EQ(a_norm(CoefficientVector{z4, {}}), 0.0);
    GroupSpec trivial(3, Partition{});
    EXPECT_NEAR(a_norm(CoefficientVector::indicator(trivial, {{}})), 1.0, 1e-15);
}

TEST(Norm, CosetIndicatorsHaveNormOne) {
    for (std::int64_t p : {2, 3})
        for (int w = 0; std::pow(p, w) <= 32; ++w)
            for (const auto& a : partitions_of(w)) {
                GroupSpec g(p, a);
                for (const auto& c : all_cosets(g))
                    EXPECT_NEAR(a_norm(CoefficientVector::indicator(c)), 1.0, 1e-12) << p << ' ' << a;
            }
}

TEST(Norm, TriangleAndHomogeneity) {
    gen::Rng rng(52);
    for (int i = 0; i < 100; ++i) {
        auto g = gen::group(rng, 6);
        auto u = random_vector(rng, g, 4), v = random_vector(rng, g, 4);
        EXPECT_LE(a_norm(add_vectors(u, v)), a_norm(u) + a_norm(v) + 1e-12);
        Scalar c(0.3, -1.7);
        auto cu = u;
        for (auto& [chi, a] : cu.coeffs) a *= c;
        EXPECT_NEAR(a_norm(cu), std::abs(c) * a_norm(u), 1e-10);
        for (const auto& [chi, a] : u.coeffs) EXPECT_LE(std::abs(a), a_norm(u) + 1e-12);
    }
}

TEST(Pushforward, IdentityAndEmpty) {
    GroupSpec g(3, Partition{1, 1});
    auto id = InjectionTable::identity(g);
    auto v = CoefficientVector::indicator(g, {{0, 1}, {2, 2}});
    EXPECT_EQ(pushforward(id, v).coeffs, v.coeffs);
    EXPECT_TRUE(pushforward(id, CoefficientVector{g, {}}).coeffs.empty());
    InjectionTable partial{g, g, {{{0, 0}, {1, 1}}}};
    EXPECT_THROW(pushforward(partial, v), PreconditionError);
    InjectionTable collide{g, g, {{{0, 0}, {1, 1}}, {{0, 1}, {1, 1}}}};
    EXPECT_THROW(collide.validate(), PreconditionError);
}

TEST(Pushforward, AffineMapsAreIsometries) {
    gen::Rng rng(53);
    for (int i = 0; i < 40; ++i) {
        const std::int64_t p = gen::below(rng, 2) ? 3 : 2;
        const int n = gen::between(rng, 1, 3), a = gen::between(rng, 1, p == 2 ? 2 : 1);
        GroupSpec g(p, Partition(std::vector<int>(static_cast<std::size_t>(n), a)));
        std::vector<std::size_t> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::int64_t unit = p == 2 ? 1 + 2 * static_cast<std::int64_t>(gen::below(rng, 2)) : 1 + static_cast<std::int64_t>(gen::below(rng, 2));
        auto shift = gen::element(rng, g);
        InjectionTable sigma{g, g, {}};
        for (const auto& x : all_elements(g)) {
            Element y(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[perm[k]];
            sigma.map.emplace(x, add(g, scale(g, unit, y), shift));
        }
        auto v = random_vector(rng, g, 5);
        EXPECT_NEAR(a_norm(pushforward(sigma, v)), a_norm(v), 1e-10);
    }
}

TEST(Witness, DefaultCounts) {
    EXPECT_EQ(default_witnesses(GroupSpec(2, Partition{1})).size(), 3u);
    EXPECT_EQ(default_witnesses(GroupSpec(2, Partition{})).size(), 1u);
    EXPECT_EQ(default_witnesses(GroupSpec(2, Partition{1, 1})).size(), 11u);
    EXPECT_EQ(default_witnesses(GroupSpec(2, Partition{2})).size(), 4u + 2u + 1u);
}

TEST(Witness, IdentityGivesOne) {
    GroupSpec g(2, Partition{2, 1});
    auto r = distortion_witness(InjectionTable::identity(g), default_witnesses(g));
    EXPECT_DOUBLE_EQ(r.lower_bound, 1.0);
    for (double v : r.ratios) EXPECT_DOUBLE_EQ(v, 1.0);
    EXPECT_THROW(distortion_witness(InjectionTable::identity(g), {}), PreconditionError);
}

TEST(Witness, CyclicToElementaryBijections) {
    GroupSpec z4(2, Partition{2}), v4(2, Partition{1, 1});
    auto targets = all_elements(v4);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::vector<CoefficientVector> non_coset;
    for (std::int64_t s = 0; s < 4; ++s) non_coset.push_back(CoefficientVector::indicator(z4, {{s}, {(s + 1) % 4}}));
    double best_cosets = 1e9, best_mixed = 1e9;
    int count = 0;
    do {
        InjectionTable sigma{z4, v4, {}};
        for (std::int64_t s = 0; s < 4; ++s) sigma.map.emplace(Element{s}, targets[perm[static_cast<std::size_t>(s)]]);
        best_cosets = std::min(best_cosets, distortion_witness(sigma, default_witnesses(z4)).lower_bound);
        auto mixed = default_witnesses(z4);
        mixed.insert(mixed.end(), non_coset.begin(), non_coset.end());
        best_mixed = std::min(best_mixed, distortion_witness(sigma, mixed).lower_bound);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(count, 24);
    EXPECT_NEAR(best_cosets, 1.0, 1e-12);
    EXPECT_NEAR(best_mixed, (2 + 2 * kRoot2) / 4, 1e-12);
}

TEST(Witness, AffineCosetMapKeepsRatioOne) {
    GroupSpec z2(2, Partition{1}), z4(2, Partition{2});
    InjectionTable sigma{z2, z4, {{{0}, {1}}, {{1}, {3}}}};
    auto r = distortion_witness(sigma, {CoefficientVector::indicator(z2, {{0}, {1}})});
    EXPECT_NEAR(r.ratios.front(), 1.0, 1e-12);
}

TEST(Survey, Examples) {
    GroupSpec z4(2, Partition{2});
    auto rows = idempotent_survey(z4, 1.25, 3);
    bool seen = false;
    for (const auto& row : rows) {
        EXPECT_NE(row.mask, 0u);
        EXPECT_LE(row.norm, 1.25);
        if (row.mask == 0b11) {
            seen = true;
            EXPECT_NEAR(row.norm, (2 + 2 * kRoot2) / 4, 1e-12);
            EXPECT_EQ(row.min_coset_length, 2);
        }
    }
    EXPECT_TRUE(seen);
    EXPECT_THROW(idempotent_survey(GroupSpec(2, Partition{1, 1, 1, 1, 1, 1}), 2.0, 2, 64), PreconditionError);
}

TEST(Survey, NormOneRowsAreCosets) {
    GroupSpec g(2, Partition{1, 1, 1});
    for (const auto& row : idempotent_survey(g, 1.0 + 1e-9, 3)) EXPECT_EQ(row.min_coset_length, 1) << row.mask;
}
