#include <functional>
#include <random>

#include <gtest/gtest.h>

#include <bc/group.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"

using bc::group;
using bc::perm;

TEST(Group, Orders)
{
    EXPECT_EQ(fx::deg7_group().order(), 168u);
    EXPECT_EQ(group(5, {perm::parse("(1 2)", 5)}).order(), 2u);
    EXPECT_EQ(group(5, {perm::parse("(1 2)", 5), perm::parse("(1 2 3 4 5)", 5)}).order(), 120u);
    EXPECT_EQ(bc::symmetric_group(9).order(), 362880u);
    EXPECT_EQ(bc::alternating_group(6).order(), 360u);
    EXPECT_EQ(bc::dihedral_group(8).order(), 16u);
    EXPECT_EQ(bc::cyclic_group(11).order(), 11u);
}

TEST(Group, OrderCap)
{
    auto saved = bc::caps::get();
    bc::caps::get().group_order = 1000;
    EXPECT_THROW(bc::symmetric_group(8).order(), bc::error);
    bc::caps::get() = saved;
}

TEST(Group, StabilizerOrbitsDegree7)
{
    auto g = fx::deg7_group();
    auto st = g.stabilizer(0);
    EXPECT_EQ(st.order(), 24u);
    auto orbs = st.orbits();
    ASSERT_EQ(orbs.size(), 2u);
    EXPECT_EQ(orbs[0], std::vector<bc::letter>{0});
    EXPECT_EQ(orbs[1].size(), 6u);
}

TEST(Group, OrbitsTrivialCases)
{
    EXPECT_EQ(fx::deg7_group().orbits().size(), 1u);
    EXPECT_EQ(group(6, {}).orbits().size(), 6u);
    EXPECT_EQ(group(6, {}).stabilizer(2).order(), 1u);
}

TEST(Group, StabilizerInS5)
{
    auto st = bc::symmetric_group(5).stabilizer(0);
    EXPECT_EQ(st.order(), 24u);
    for (auto& g : st.generators()) EXPECT_EQ(g(0), 0u);
}

TEST(Group, BlockSystems)
{
    EXPECT_TRUE(fx::deg7_group().block_systems().empty());
    auto d4 = group(4, {perm::parse("(1 2 3 4)", 4), perm::parse("(1 3)", 4)});
    auto bs = d4.block_systems();
    ASSERT_EQ(bs.size(), 1u);
    std::vector<std::vector<bc::letter>> want{{0, 2}, {1, 3}};
    EXPECT_EQ(bs[0].blocks, want);
    EXPECT_TRUE(bc::symmetric_group(6).is_primitive());
}

TEST(Group, CosetActionDegree7)
{
    auto g = fx::deg7_group();
    auto syl = fx::find_subgroup(g, 4, 2, 8);
    auto d3 = fx::find_subgroup(g, 3, 2, 6);
    auto a = g.coset_action(syl);
    auto b = g.coset_action(d3);
    EXPECT_EQ(a.front().degree(), 21u);
    EXPECT_EQ(b.front().degree(), 28u);
    EXPECT_EQ(group(21, a).order(), 168u);
    EXPECT_EQ(group(28, b).order(), 168u);
    auto t = g.coset_action(g);
    EXPECT_EQ(t.front().degree(), 1u);
}

TEST(Group, CosetActionNotSubgroup)
{
    auto g = fx::deg7_group();
    EXPECT_THROW(g.coset_action(group(7, {fx::p7("(1 2)")})), bc::error);
}

TEST(Group, Normalizers)
{
    EXPECT_EQ(bc::normalizer_in_symmetric(bc::alternating_group(5)).order(), 120u);
    EXPECT_EQ(bc::normalizer_in_symmetric(bc::cyclic_group(5)).order(), 20u);
    auto g = fx::deg7_group();
    auto n = bc::normalizer_in_symmetric(g);
    EXPECT_EQ(n.order(), 168u);
    auto s = fx::sigma_inf();
    auto cs = bc::class_stabilizer(n, g, {s});
    for (auto& x : cs.generators()) EXPECT_TRUE(g.are_conjugate(s.conj(x), s));
}

TEST(Group, NormalizerCap)
{
    EXPECT_THROW(bc::normalizer_in_symmetric(bc::cyclic_group(10)), bc::error);
}

TEST(Group, ConjugacyDegree7)
{
    auto g = fx::deg7_group();
    EXPECT_EQ(g.conjugacy_class(fx::p7("(1 3)(4 5)")).size(), 21u);
    EXPECT_FALSE(g.are_conjugate(fx::sigma_inf(), fx::sigma_inf().inverse()));
    EXPECT_TRUE(g.are_conjugate(perm::identity(7), perm::identity(7)));
    EXPECT_EQ(g.conjugacy_classes().size(), 6u);
    EXPECT_THROW(g.conjugacy_class(fx::p7("(1 2)")), bc::error);
}

namespace {

std::vector<perm> random_gens(std::mt19937& rng, std::size_t n)
{
    std::vector<perm> gens;
    std::size_t k = 1 + rng() % 3;
    for (std::size_t i = 0; i < k; ++i) {
        auto p = oracle::random_perm(n, rng);
        // Sparse generators keep many groups small and intransitive.
        if (rng() % 2) {
            std::vector<bc::letter> img(n);
            for (bc::letter j = 0; j < n; ++j) img[j] = j;
            auto a = rng() % n, b = rng() % n;
            std::swap(img[a], img[b]);
            p = perm(img);
        }
        gens.push_back(p);
    }
    return gens;
}

// All partitions of 0..n-1 into blocks of equal size s, 1 < s < n.
void partitions(std::size_t n, std::vector<int>& lab, std::size_t i, int used, const std::function<void()>& fn)
{
    if (i == n) {
        fn();
        return;
    }
    for (int b = 0; b <= used; ++b) {
        lab[i] = b;
        partitions(n, lab, i + 1, std::max(used, b + 1), fn);
    }
}

std::size_t brute_block_systems(std::size_t n, const std::vector<perm>& gens)
{
    std::vector<int> lab(n);
    std::size_t count = 0;
    partitions(n, lab, 0, 0, [&] {
        int k = *std::max_element(lab.begin(), lab.end()) + 1;
        if (k <= 1 || static_cast<std::size_t>(k) == n) return;
        std::vector<std::size_t> size(static_cast<std::size_t>(k));
        for (auto b : lab) ++size[static_cast<std::size_t>(b)];
        for (auto s : size)
            if (s != size[0]) return;
        for (auto& g : gens)
            for (bc::letter x = 0; x < n; ++x)
                for (bc::letter y = 0; y < n; ++y)
                    if (lab[x] == lab[y] && lab[g(x)] != lab[g(y)]) return;
        ++count;
    });
    return count;
}

}  // namespace

TEST(GroupProperty, SchreierSimsMatchesClosure)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 2 + rng() % 6;
        auto gens = random_gens(rng, n);
        group g(n, gens);
        auto all = oracle::closure(n, gens);
        ASSERT_EQ(g.order(), all.size());
        auto els = g.elements();
        std::set<perm> mine(els.begin(), els.end());
        EXPECT_EQ(mine, all);
        for (int k = 0; k < 10; ++k) {
            auto x = oracle::random_perm(n, rng);
            EXPECT_EQ(g.contains(x), all.count(x) == 1);
        }
        EXPECT_EQ(g.orbits(), oracle::orbits(n, gens));
        for (bc::letter i = 0; i < n; ++i) {
            auto st = g.stabilizer(i);
            std::size_t fixing = 0;
            for (auto& x : all) fixing += x(i) == i;
            EXPECT_EQ(st.order(), fixing);
        }
    }
}

TEST(GroupProperty, BlockSystemsMatchBruteForce)
{
    std::mt19937 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
        std::size_t n = 4 + rng() % 5;
        auto gens = random_gens(rng, n);
        if (rng() % 2) gens.push_back(bc::dihedral_group(n).generators()[rng() % 2]);
        group g(n, gens);
        if (!g.is_transitive()) continue;
        ++checked;
        auto bs = g.block_systems();
        EXPECT_EQ(bs.size(), brute_block_systems(n, gens)) << "n=" << n;
        for (auto& b : bs)
            for (auto& x : gens)
                for (auto& blk : b.blocks) {
                    std::set<bc::letter> img;
                    for (auto y : blk) img.insert(x(y));
                    EXPECT_TRUE(std::any_of(b.blocks.begin(), b.blocks.end(), [&](auto& o) {
                        return std::set<bc::letter>(o.begin(), o.end()) == img;
                    }));
                }
    }
    EXPECT_GE(checked, 20);
}

TEST(GroupProperty, ConjugacyClassesPartition)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 3 + rng() % 4;
        auto gens = random_gens(rng, n);
        group g(n, gens);
        auto all = oracle::closure(n, gens);
        std::size_t total = 0;
        for (auto& c : g.conjugacy_classes()) {
            total += c.size();
            std::set<perm> brute;
            for (auto& h : all) brute.insert(c.front().conj(h));
            EXPECT_EQ(brute, std::set<perm>(c.begin(), c.end()));
        }
        EXPECT_EQ(total, all.size());
    }
}
