#include <gtest/gtest.h>

#include "arboreal/ramfilt.hpp"
#include "support.hpp"

using namespace arboreal;

namespace {

BreakFiltration F(std::initializer_list<std::pair<Rat, long>> bs) {
    std::vector<Break> v;
    for (const auto& [u, o] : bs) v.push_back({u, Integer(o)});
    return BreakFiltration(std::move(v));
}

// phi by midpoint-free Riemann sum on a grid fine enough to be exact for
// breaks on that grid.
Rat riemann_phi(const BreakFiltration& f, const Rat& u, long steps_per_unit) {
    Rat acc(0);
    const Rat h = rat(1, steps_per_unit);
    for (Rat t(0); t < u; t += h) {
        const Rat right = std::min(Rat(t + h), u);
        acc += (right - t) / f.index_at(right);
    }
    return acc;
}

BreakFiltration random_filtration(testkit::RatGen& gen) {
    const long count = gen.int_in(0, 5);
    std::vector<Break> bs{{Rat(0), Integer(1)}};
    std::vector<long> factors;
    for (long i = 0; i < count; ++i) factors.push_back(gen.int_in(2, 3));
    Integer order(1);
    for (long f : factors) order *= f;
    bs.front().order = order;
    Rat u(0);
    for (long f : factors) {
        u += rat(gen.int_in(1, 12), gen.int_in(1, 4));
        order /= f;
        bs.push_back({u, order});
    }
    return BreakFiltration(bs);
}

} // namespace

TEST(BreakFiltration, Validation) {
    EXPECT_THROW(F({{Rat(1), 2}}), precondition_error);
    EXPECT_THROW(F({{Rat(0), 4}, {Rat(2), 3}}), precondition_error);
    EXPECT_THROW(F({{Rat(0), 4}, {Rat(2), 2}, {Rat(1), 1}}), precondition_error);
    EXPECT_THROW(F({{Rat(0), 2}, {Rat(1), 2}}), precondition_error);
    const auto f = F({{Rat(0), 4}, {Rat(1), 2}, {Rat(3), 1}});
    EXPECT_EQ(f.order_at(Rat(1)), 4);
    EXPECT_EQ(f.order_at(rat(3, 2)), 2);
    EXPECT_EQ(f.order_at(Rat(3)), 2);
    EXPECT_EQ(f.order_at(Rat(4)), 1);
}

TEST(Herbrand, PhiExamples) {
    for (long p : {2L, 3L, 5L}) EXPECT_EQ(herbrand_phi(F({{Rat(0), p}, {Rat(1), 1}}), Rat(2)), 1 + rat(1, p));
    EXPECT_EQ(herbrand_phi(BreakFiltration(), Rat(5)), Rat(5));
    EXPECT_EQ(herbrand_phi(F({{Rat(0), 4}, {Rat(1), 2}, {Rat(3), 1}}), Rat(3)), Rat(2));
}

TEST(Herbrand, PsiExamples) {
    EXPECT_EQ(herbrand_psi(F({{Rat(0), 2}, {Rat(1), 1}}), rat(3, 2)), Rat(2));
    EXPECT_EQ(herbrand_psi(BreakFiltration(), Rat(5)), Rat(5));
    EXPECT_EQ(herbrand_psi(F({{Rat(0), 4}, {Rat(1), 2}, {Rat(3), 1}}), Rat(2)), Rat(3));
}

TEST(Herbrand, UpperTransportExamples) {
    const auto single = F({{Rat(0), 3}, {Rat(1), 1}});
    EXPECT_EQ(upper_order_function(single), single);
    EXPECT_EQ(upper_order_function(BreakFiltration()), BreakFiltration());
    EXPECT_EQ(upper_order_function(F({{Rat(0), 4}, {Rat(1), 2}, {Rat(3), 1}})),
              F({{Rat(0), 4}, {Rat(1), 2}, {Rat(2), 1}}));
}

TEST(Herbrand, PhiMatchesRiemannSum) {
    testkit::RatGen gen(41);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_filtration(gen);
        for (const Rat& u : {Rat(0), rat(1, 2), Rat(3), rat(17, 4), Rat(25)})
            EXPECT_EQ(herbrand_phi(f, u), riemann_phi(f, u, 12));
    }
}

TEST(Herbrand, RoundTripsAndConcavity) {
    testkit::RatGen gen(42);
    for (int i = 0; i < 300; ++i) {
        const auto f = random_filtration(gen);
        for (int k = 0; k < 10; ++k) {
            const Rat u = rat(gen.int_in(0, 200), gen.int_in(1, 8));
            EXPECT_EQ(herbrand_psi(f, herbrand_phi(f, u)), u);
            EXPECT_EQ(herbrand_phi(f, herbrand_psi(f, u)), u);
        }
        EXPECT_EQ(lower_order_function(upper_order_function(f)), f);
        // slopes of phi on consecutive unit intervals do not increase
        Rat prev_slope(2);
        for (long u = 0; u < 40; ++u) {
            const Rat s = herbrand_phi(f, Rat(u + 1)) - herbrand_phi(f, Rat(u));
            EXPECT_GT(s, 0);
            EXPECT_LE(s, prev_slope);
            prev_slope = s;
        }
    }
}

TEST(Herbrand, PhiBelowIdentity) {
    const std::vector<Rat> samples{Rat(0), rat(1, 2), Rat(1), Rat(2), Rat(10)};
    for (const auto& f : {F({{Rat(0), 2}, {Rat(1), 1}}), F({{Rat(0), 4}, {Rat(1), 2}, {Rat(3), 1}})}) {
        EXPECT_TRUE(phi_leq_identity_check(f, samples).holds);
        EXPECT_LT(herbrand_phi(f, Rat(2)), Rat(2));
        EXPECT_EQ(herbrand_phi(f, Rat(1)), Rat(1));
    }
    for (const auto& u : samples) EXPECT_EQ(herbrand_phi(BreakFiltration(), u), u);
    // strict inequality from the start when G_0 != G_u for all u > 0
    EXPECT_LT(herbrand_phi(F({{Rat(0), 2}, {rat(1, 2), 1}}), Rat(1)), Rat(1));
}

TEST(SubgroupInequality, Examples) {
    EXPECT_TRUE(subgroup_phi_inequality(F({{Rat(0), 4}, {Rat(2), 1}}), F({{Rat(0), 2}, {Rat(2), 1}})));
    const auto g = F({{Rat(0), 4}, {Rat(1), 2}, {Rat(3), 1}});
    EXPECT_TRUE(subgroup_phi_inequality(g, g));
    EXPECT_THROW(subgroup_phi_inequality(F({{Rat(0), 2}, {Rat(1), 1}}), F({{Rat(0), 2}, {Rat(3), 1}})),
                 precondition_error);
}

TEST(Compositum, TrivialWhereBothFactorsAre) {
    testkit::RatGen gen(43);
    for (int i = 0; i < 100; ++i) {
        const auto a = upper_order_function(random_filtration(gen));
        const auto b = upper_order_function(random_filtration(gen));
        const auto c = compositum_upper_bound(a, b);
        for (long k = 0; k < 80; ++k) {
            const Rat w = rat(k, 2);
            EXPECT_EQ(c.order_at(w), a.order_at(w) * b.order_at(w));
        }
    }
}
