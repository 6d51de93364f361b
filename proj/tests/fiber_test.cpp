#include <gtest/gtest.h>

#include <bc/catalog.hpp>
#include <bc/fiber.hpp>

#include "fixtures.hpp"

using bc::cover;
using bc::paired_cover;
using bc::perm;

namespace {

paired_cover pair1() { return *bc::catalog_get("deg7-pair-1").as_pair; }
paired_cover pair2() { return *bc::catalog_get("deg7-pair-2").as_pair; }

paired_cover self_pair(const cover& c) { return bc::make_pair(c, c); }

std::vector<std::size_t> sizes(const paired_cover& pc)
{
    std::vector<std::size_t> v;
    for (auto& c : bc::tensor_components(pc)) v.push_back(c.orbit.size());
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::vector<std::size_t>> types(const cover& c)
{
    std::vector<std::vector<std::size_t>> t;
    for (auto& p : c.cycles) t.push_back(p.cycle_type());
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

TEST(Fiber, PairInvariants)
{
    EXPECT_TRUE(bc::check_pair(pair1()).ok());
    EXPECT_TRUE(bc::check_pair(pair2()).ok());
    auto p = pair1();
    p.tau.cycles[0] = fx::p7("(1 2)(3 4)");
    EXPECT_FALSE(bc::check_pair(p).ok());
    EXPECT_THROW(bc::make_pair(p.sigma, p.tau), bc::error);
}

TEST(Fiber, ComponentsDegree7)
{
    for (auto pc : {pair1(), pair2()}) {
        auto comps = bc::tensor_components(pc);
        ASSERT_EQ(comps.size(), 2u);
        EXPECT_EQ(comps[0].orbit.size(), 21u);
        EXPECT_EQ(comps[1].orbit.size(), 28u);
        EXPECT_EQ(comps[0].J, (std::vector<bc::letter>{0, 1, 3}));
        EXPECT_EQ(comps[1].J, (std::vector<bc::letter>{2, 4, 5, 6}));
        std::size_t k = 0, l = 0;
        for (auto& c : comps) {
            k += c.k;
            l += c.l;
            EXPECT_EQ(c.J.size(), c.l);
            EXPECT_EQ(c.I.size(), c.k);
            EXPECT_EQ(bc::component_subgroup_index(pc, c), c.orbit.size());
        }
        EXPECT_EQ(k, 7u);
        EXPECT_EQ(l, 7u);
    }
}

TEST(Fiber, Correspondence)
{
    auto pc = pair1();
    auto comps = bc::tensor_components(pc);
    auto cr = bc::component_correspondence(pc);
    ASSERT_EQ(cr.size(), comps.size());
    for (std::size_t i = 0; i < cr.size(); ++i) {
        EXPECT_EQ(cr[i].J, comps[i].J);
        EXPECT_EQ(cr[i].I, comps[i].I);
    }
}

TEST(Fiber, SelfPairDoublyTransitive)
{
    auto s = bc::make_cover(5, std::vector<std::string>{"(1 2)", "(1 3 4 5)", "(1 5 4 3 2)"});
    auto pc = self_pair(s);
    EXPECT_EQ(sizes(pc), (std::vector<std::size_t>{5, 20}));
    auto comps = bc::tensor_components(pc);
    EXPECT_EQ(comps[0].J, std::vector<bc::letter>{0});
    EXPECT_EQ(comps[1].J, (std::vector<bc::letter>{1, 2, 3, 4}));
    auto one = self_pair(cover{1, {}, {}});
    EXPECT_EQ(sizes(one), std::vector<std::size_t>{1});
}

TEST(Fiber, MethodOneDegree7)
{
    auto pc = pair1();
    auto c = bc::tensor_components(pc)[0];
    auto r = bc::restrict_to_component(pc, c);
    EXPECT_EQ(r[0].index(), 8u);
    EXPECT_EQ(r[1].index(), 14u);
    EXPECT_EQ(r[2].index(), 18u);
    EXPECT_EQ(bc::genus_method1(pc, c), 0);
    auto four = *bc::catalog_get("deg7-4tuple-1").as_pair;
    EXPECT_EQ(bc::genus_method1(four, bc::tensor_components(four)[0]), 1);
    auto six = *bc::catalog_get("deg7-6tuple-1").as_pair;
    EXPECT_EQ(bc::genus_method1(six, bc::tensor_components(six)[0]), 4);
}

TEST(Fiber, MethodTwoDegree7)
{
    auto c1 = bc::tensor_components(pair1());
    auto c2 = bc::tensor_components(pair2());
    EXPECT_EQ(bc::genus_method2(pair1(), c1[0]), 0);
    EXPECT_EQ(bc::genus_method2(pair1(), c1[1]), 1);
    EXPECT_EQ(bc::genus_method2(pair2(), c2[0]), 0);
    EXPECT_EQ(bc::genus_method2(pair2(), c2[1]), 0);
    std::size_t starred = 0;
    for (auto& e : bc::pry_entries(pair1(), c1[0])) starred += e.g.index();
    EXPECT_EQ(starred, 4u);
    std::size_t s1 = 0, s2 = 0;
    for (auto& e : bc::pry_entries(pair1(), c1[1])) s1 += e.g.index();
    for (auto& e : bc::pry_entries(pair2(), c2[1])) s2 += e.g.index();
    EXPECT_EQ(s1, 8u);
    EXPECT_EQ(s2, 6u);
}

TEST(Fiber, RamificationArithmetic)
{
    auto pc = bc::align_covers(bc::make_cover(4, std::vector<std::string>{"(1 2 3 4)", "(1 4 3 2)"}),
                               bc::make_cover(2, std::vector<std::string>{"(1 2)", "(1 2)"}));
    auto prof = bc::ramification_profile(pc);
    ASSERT_FALSE(prof.empty());
    EXPECT_EQ(prof[0].s, 4u);
    EXPECT_EQ(prof[0].t, 2u);
    EXPECT_EQ(prof[0].count, 2u);
    EXPECT_EQ(prof[0].e_over_y, 2u);
    auto same = bc::ramification_profile(self_pair(bc::make_cover(3, std::vector<std::string>{"(1 2 3)", "(1 3 2)"})));
    EXPECT_EQ(same[0].count, 3u);
    EXPECT_EQ(same[0].e_over_y, 1u);
    EXPECT_EQ(same[0].e_over_x, 1u);
    auto pc2 = bc::align_covers(bc::make_cover(2, std::vector<std::string>{"(1 2)", "(1 2)"}),
                                bc::make_cover(2, std::vector<std::string>{"(1 2)", "(1 2)"}, {"a", "b"}));
    for (auto& p : bc::ramification_profile(pc2))
        if (p.s == 2 && p.t == 1) {
            EXPECT_EQ(p.count, 1u);
            EXPECT_EQ(p.e_over_y, 2u);
        }
}

TEST(Fiber, PryCovers)
{
    auto c2 = bc::tensor_components(pair2());
    auto a = bc::pry_branch_cycles(pair2(), c2[0]);
    EXPECT_EQ(a.degree, 3u);
    EXPECT_EQ(types(a), (std::vector<std::vector<std::size_t>>{{2, 1}, {2, 1}, {3}}));
    EXPECT_TRUE(bc::validate(a).valid());
    EXPECT_EQ(a.monodromy().order(), 6u);
    auto b = bc::pry_branch_cycles(pair2(), c2[1]);
    EXPECT_EQ(b.degree, 4u);
    EXPECT_EQ(types(b), (std::vector<std::vector<std::size_t>>{{2, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}}));
    EXPECT_EQ(b.monodromy().order(), 24u);
    auto c1 = bc::tensor_components(pair1());
    auto c = bc::pry_branch_cycles(pair1(), c1[0]);
    EXPECT_EQ(c.degree, 3u);
    EXPECT_EQ(c.r(), 4u);
    for (auto& p : c.cycles) EXPECT_EQ(p.cycle_type(), (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(c.monodromy().order(), 6u);
    EXPECT_EQ(bc::galois_closure_genus(c), 1);
}

TEST(Fiber, DoubleTransitiveComplement)
{
    auto s1 = pair1().sigma;
    auto pc = self_pair(s1);
    auto comps = bc::tensor_components(pc);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(bc::double_transitive_complement(s1), bc::genus_method1(pc, comps[1]));
    auto sm = bc::build_sm_pair(5).sigma;
    auto ps = self_pair(sm);
    EXPECT_EQ(bc::double_transitive_complement(sm), bc::genus_method1(ps, bc::tensor_components(ps)[1]));
    EXPECT_EQ(bc::double_transitive_complement(bc::make_cover(2, std::vector<std::string>{"(1 2)", "(1 2)"})), 0);
    EXPECT_THROW(bc::double_transitive_complement(bc::build_dihedral(5, "C2^2.n")), bc::error);
}

TEST(Fiber, DetectCommonLeftComposite)
{
    auto f = pair1().sigma;
    auto w = bc::detect_clc(f, f);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->degree, 7u);
    EXPECT_FALSE(bc::detect_clc(pair1().sigma, pair1().tau).has_value());
    EXPECT_FALSE(bc::detect_clc(pair2().sigma, pair2().tau).has_value());
    auto t4 = *bc::catalog_get("t4-pair").as_pair;
    EXPECT_FALSE(bc::detect_clc(t4.sigma, t4.tau).has_value());
    auto blocks = t4.sigma.monodromy().block_systems();
    ASSERT_EQ(blocks.size(), 1u);
    auto q = bc::quotient_cover(t4.sigma, blocks[0], true);
    auto d = bc::detect_clc(t4.sigma, q);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(d->degree, 2u);
}

TEST(Fiber, GenusZeroWitness)
{
    auto pc = pair2();
    auto c = bc::tensor_components(pc)[0];
    auto w = bc::genus0_witness(pc, c);
    EXPECT_EQ(w.over_y.degree, 3u);
    EXPECT_EQ(w.over_x.degree, c.k);
    EXPECT_EQ(w.over_x.degree * pc.m(), c.orbit.size());
    EXPECT_EQ(w.over_y.degree * pc.n(), c.orbit.size());
    auto self = self_pair(pc.sigma);
    auto diag = bc::tensor_components(self)[0];
    auto dw = bc::genus0_witness(self, diag);
    EXPECT_EQ(dw.over_x.degree, 1u);
    EXPECT_EQ(dw.over_y.degree, 1u);
    EXPECT_THROW(bc::genus0_witness(pair1(), bc::tensor_components(pair1())[1]), bc::error);
}

TEST(Fiber, ScreenDegree7Projections)
{
    auto pc = pair2();
    auto comps = bc::tensor_components(pc);
    auto cheb = bc::pry_branch_cycles(pc, comps[0]);
    auto s4 = bc::pry_branch_cycles(pc, comps[1]);
    auto g1 = bc::chebychev_cover(3, {"w1", "w2", "w3"});
    auto a = bc::screen_g1(cheb, g1);
    EXPECT_TRUE(a.fail2a);
    EXPECT_EQ(a.pr_ochar, bc::rational(1, 3));
    auto b = bc::screen_g1(s4, g1);
    EXPECT_FALSE(b.fail2a);
    EXPECT_EQ(b.pr_galois_genus, 3);
    EXPECT_FALSE(b.dec_var_not_excluded);
}

TEST(Fiber, ScreenGenusOneInvolutions)
{
    auto prW = bc::make_cover(2, std::vector<std::string>{"(1 2)", "(1 2)", "(1 2)", "(1 2)"});
    auto g1 = bc::make_cover(3, std::vector<std::string>{"(1 2)", "(1 2)", "(1 3)", "(1 3)"});
    auto r = bc::screen_g1(prW, g1);
    EXPECT_EQ(r.pr_genus, 1);
    EXPECT_TRUE(r.fail2c_subset);
    EXPECT_TRUE(r.fail2c_dominated);
    EXPECT_TRUE(r.fail2c_bound);
    EXPECT_TRUE(r.fail2c);
    auto off = g1;
    off.branch_points = {"a", "b", "c", "d"};
    EXPECT_FALSE(bc::screen_g1(prW, off).fail2c);
}

TEST(Fiber, ScreenQuotientAndJoint)
{
    auto d4 = *bc::catalog_get("d4-pair").as_pair;
    auto q = bc::quotient_cover(d4.sigma, d4.sigma.monodromy().block_systems()[0]);
    auto r = bc::screen_g1(d4.sigma, q, d4);
    EXPECT_TRUE(r.fail2b);
    EXPECT_TRUE(r.joint_checked);
    EXPECT_TRUE(r.fail2d);
    EXPECT_TRUE(r.dec_var_not_excluded);
    auto bad = d4;
    bad.tau.cycles[0] = bad.tau.cycles[1];
    EXPECT_THROW(bc::screen_g1(d4.sigma, q, bad), bc::error);
}

TEST(Fiber, JsonRoundTrip)
{
    auto pc = pair1();
    auto j = bc::to_json(pc);
    auto back = bc::paired_from_json(j);
    EXPECT_EQ(back.sigma, pc.sigma);
    EXPECT_EQ(back.tau, pc.tau);
    auto rep = bc::fiber_report(pc);
    ASSERT_EQ(rep["components"].size(), 2u);
    EXPECT_EQ(rep["components"][0]["deg_z"], 21);
    EXPECT_EQ(rep["components"][1]["genus_m1"], 1);
    EXPECT_EQ(rep["components"][1]["genus_m2"], 1);
    EXPECT_EQ(rep["components"][0]["J"], "{1,2,4}");
}
