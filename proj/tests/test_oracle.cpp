#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "arboreal/corpus.hpp"
#include "arboreal/oracle.hpp"
#include "support.hpp"

using namespace arboreal;
using testkit::V;

namespace {

RatPoly rp(std::initializer_list<Rat> cs) { return RatPoly(std::vector<Rat>(cs)); }

// Multiset of v(r_i - r_j), i != j, straight from the roots.
ValMultiset direct_differences(const std::vector<Rat>& roots, long p) {
    std::vector<Rat> diffs;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (i != j) diffs.push_back(roots[i] - roots[j]);
    return testkit::val_counts(diffs, p);
}

} // namespace

TEST(IteratePoly, Examples) {
    EXPECT_EQ(iterate_poly(2, Rat(1), 1, Rat(0)), rp({Rat(-1), Rat(0), Rat(1)}));
    EXPECT_EQ(iterate_poly(2, Rat(1), 2, Rat(0)), rp({Rat(0), Rat(0), Rat(-2), Rat(0), Rat(1)}));
    EXPECT_EQ(iterate_poly(3, Rat(2), 1, Rat(1)), rp({Rat(-3), Rat(0), Rat(0), Rat(1)}));
    EXPECT_THROW(iterate_poly(2, Rat(1), 9, Rat(0)), cap_exceeded);
    EXPECT_NO_THROW(iterate_poly(2, Rat(1), 9, Rat(0), OracleConfig{512, 256}));
}

TEST(IteratePoly, EvaluatesToIteratedMap) {
    testkit::RatGen gen(71);
    for (int i = 0; i < 50; ++i) {
        const long ell = gen.int_in(2, 3), n = gen.int_in(0, 3);
        const Rat c = gen.nonzero(9), a = gen.nonzero(9), z = gen.nonzero(5);
        Rat x = z;
        for (long k = 0; k < n; ++k) x = rpow(x, static_cast<unsigned long>(ell)) - c;
        EXPECT_EQ(iterate_poly(ell, c, n, a).evaluate(z), x - a);
    }
}

TEST(RootValMultiset, Examples) {
    EXPECT_EQ(root_val_multiset(rp({Rat(0), Rat(0), Rat(-2), Rat(0), Rat(1)}), 2),
              (ValMultiset{{ValExt::infinity(), 2}, {V(1, 2), 2}}));
    EXPECT_EQ(root_val_multiset(iterate_poly(2, rat(1, 8), 2, Rat(1)), 2), (ValMultiset{{V(-3, 2), 4}}));
    EXPECT_EQ(root_val_multiset(rp({rat(-1, 4), Rat(0), Rat(1)}), 2), (ValMultiset{{V(-1), 2}}));
}

TEST(DifferenceMultiset, Examples) {
    EXPECT_EQ(difference_val_multiset(rp({rat(-9, 8), Rat(0), Rat(1)}), 2), (ValMultiset{{V(-1, 2), 2}}));
    EXPECT_EQ(difference_val_multiset(iterate_poly(2, rat(1, 4), 2, Rat(1)), 2), (ValMultiset{{V(0), 12}}));
    EXPECT_EQ(difference_val_multiset(rp({Rat(0), Rat(-1), Rat(1)}), 5), (ValMultiset{{V(0), 2}}));
}

TEST(DifferenceMultiset, RepeatedRootsAndCaps) {
    const auto square = testkit::poly_from_roots({Rat(1), Rat(1), Rat(3)});
    EXPECT_THROW(difference_val_multiset(square, 2), precondition_error);
    EXPECT_EQ(difference_val_multiset(square, 2, {}, true),
              (ValMultiset{{ValExt::infinity(), 2}, {V(1), 4}}));
    EXPECT_THROW(difference_val_multiset(iterate_poly(2, Rat(3), 5, Rat(1), {64, 256}), 2, {64, 256}), cap_exceeded);
}

TEST(DifferenceMultiset, MatchesDirectDifferencesOfRationalRoots) {
    testkit::RatGen gen(72);
    for (long p : {2L, 3L, 5L}) {
        for (int trial = 0; trial < 30; ++trial) {
            const long n = gen.int_in(2, 5);
            std::vector<Rat> roots;
            while (static_cast<long>(roots.size()) < n) {
                Rat r = gen.with_valuation(p, gen.int_in(-2, 3), 6);
                if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
            const auto poly = testkit::poly_from_roots(roots);
            const auto d = difference_val_multiset(poly, p);
            EXPECT_EQ(d, direct_differences(roots, p));
            for (const auto& [v, k] : d) EXPECT_EQ(k % 2, 0u);
        }
    }
}

TEST(DifferenceMultiset, ResultantHasExactZOrderForSeparableQuartics) {
    testkit::RatGen gen(73);
    int done = 0;
    while (done < 100) {
        std::vector<Rat> cs;
        for (int i = 0; i < 4; ++i) cs.push_back(Rat(gen.int_in(-9, 9)));
        cs.push_back(Rat(1));
        const RatPoly p(cs);
        const IntPoly ip = primitive_integer_part(p);
        // separable iff gcd(P, P') is constant; test via the discriminant-like resultant value at z=0 order
        const IntPoly res = self_shift_resultant(ip);
        // the z^N coefficient is, up to sign, lead^? times the discriminant; nonzero iff separable
        IntPoly deriv;
        {
            std::vector<Integer> dc;
            for (std::size_t i = 1; i < ip.coeffs().size(); ++i) dc.push_back(ip.coeffs()[i] * static_cast<long>(i));
            deriv = IntPoly(dc);
        }
        const IntPoly disc = bareiss_determinant(sylvester_matrix(
            [&] { std::vector<IntPoly> v; for (auto& c : ip.coeffs()) v.push_back(IntPoly::constant(c)); return v; }(),
            [&] { std::vector<IntPoly> v; for (auto& c : deriv.coeffs()) v.push_back(IntPoly::constant(c)); return v; }()));
        if (disc.is_zero()) continue;
        EXPECT_EQ(res.low_order(), 4u);
        ++done;
    }
}

TEST(VerifyPredictions, ClassPartition) {
    const auto gf = GroundField::wild(2);
    const auto r = verify_predictions(gf, rat(1, 8), Rat(1), 2);
    EXPECT_TRUE(r.agreement) << r.witnesses.front();
    std::size_t above = 0, at = 0;
    for (const auto& [v, k] : r.diff_vals) (v > V(-1, 2) ? above : at) += k;
    EXPECT_EQ(above, 4u);
    EXPECT_EQ(at, 8u);
}

TEST(VerifyPredictions, BoundaryAllUnitDifferences) {
    const auto r = verify_predictions(GroundField::wild(2), rat(1, 4), Rat(1), 2);
    EXPECT_TRUE(r.agreement);
    EXPECT_EQ(r.diff_vals, (ValMultiset{{V(0), 12}}));
    bool saw_inverse = false;
    for (const auto& c : r.checks) saw_inverse |= c.name == "inverse_differences" && c.passed;
    EXPECT_TRUE(saw_inverse);
}

TEST(VerifyPredictions, RepeatedRootRegime) {
    const auto r = verify_predictions(GroundField::wild(2), Rat(2), Rat(2), 2);
    EXPECT_TRUE(r.agreement);
    EXPECT_TRUE(r.diff_vals.contains(V(1)));
}

TEST(VerifyPredictions, TameInstance) {
    const auto r = verify_predictions(GroundField::tame(3, 5), rat(1, 5), Rat(1), 2);
    EXPECT_TRUE(r.agreement);
}

TEST(VerifyPredictions, IndeterminateLevels) {
    // v(a) = v(c) = -3: level 1 only bounded below
    EXPECT_THROW(verify_predictions(GroundField::wild(2), rat(1, 8), rat(1, 8), 1), indeterminate_regime);
}

TEST(VerifyLevels, HonoursStopRequest) {
    std::stop_source src;
    src.request_stop();
    EXPECT_TRUE(verify_levels(GroundField::wild(2), rat(1, 8), Rat(1), 3, {}, src.get_token()).empty());
    EXPECT_EQ(verify_levels(GroundField::wild(2), rat(1, 8), Rat(1), 2).size(), 2u);
}

TEST(RealCheck, Examples) {
    EXPECT_EQ(real_all_real_check(2, Rat(2), Rat(0), 10).outcome, RealCheckOutcome::AllRealToDepth);
    const auto out = real_all_real_check(2, Rat(2), rat(5, 2), 3);
    EXPECT_EQ(out.outcome, RealCheckOutcome::ComplexAtDepth);
    EXPECT_LE(out.depth, 3);
    const auto one = real_all_real_check(2, Rat(1), Rat(0), 10);
    EXPECT_EQ(one.outcome, RealCheckOutcome::ComplexAtDepth);
    EXPECT_LE(one.depth, 10);
    EXPECT_THROW(real_all_real_check(3, Rat(1), Rat(0), 3), precondition_error);
}

TEST(RealCheck, ExactEndpoints) {
    // a = -c: first preimage is exactly 0, then +-sqrt(c)
    EXPECT_EQ(real_all_real_check(2, Rat(2), Rat(-2), 8).outcome, RealCheckOutcome::AllRealToDepth);
    // a = c^2 - c: preimages c (exact), then +-sqrt(2c)
    EXPECT_EQ(real_all_real_check(2, Rat(2), Rat(2), 8).outcome, RealCheckOutcome::AllRealToDepth);
    EXPECT_EQ(real_all_real_check(2, Rat(3), Rat(6), 8).outcome, RealCheckOutcome::AllRealToDepth);
}

TEST(Corpus, RunsLinesConcurrentlyInOrder) {
    std::istringstream in(R"({"mode":"wild","p":2,"c":"1/8","a":"1","n":2,"expected":{"agreement":true}}

{"mode":"wild","p":2,"c":"1/4","a":"1","n":2,"expected":{"agreement":true}}
{"mode":"wild","p":2,"c":"1/8","a":"1/8","n":1,"expected":{"error":"indeterminate_regime"}}
{"mode":"tame","p":5,"ell":3,"c":"1/5","a":"1","n":1,"expected":{"agreement":false}})");
    const auto out = run_corpus(in);
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0].line, 1u);
    EXPECT_EQ(out[1].line, 3u);
    EXPECT_TRUE(out[0].passed);
    EXPECT_TRUE(out[1].passed);
    EXPECT_TRUE(out[2].passed);
    EXPECT_FALSE(out[3].passed);
    std::istringstream bad("{\"mode\":\"wild\"}");
    EXPECT_THROW(run_corpus(bad), precondition_error);
    std::istringstream mistyped(R"({"mode":"wild","p":"two","c":"1","a":"1","n":1,"expected":{}})");
    EXPECT_THROW(run_corpus(mistyped), precondition_error);
}
