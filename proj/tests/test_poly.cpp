#include <gtest/gtest.h>

#include "arboreal/poly.hpp"
#include "support.hpp"

using namespace arboreal;

namespace {

IntPoly ip(std::initializer_list<long> cs) {
    std::vector<Integer> v;
    for (long c : cs) v.emplace_back(c);
    return IntPoly(std::move(v));
}

// Cofactor expansion; only for tiny matrices.
IntPoly laplace_det(const std::vector<std::vector<IntPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    IntPoly acc;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<IntPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<IntPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        const IntPoly term = m[0][j] * laplace_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

TEST(DensePoly, Arithmetic) {
    const auto a = ip({1, 1});
    EXPECT_EQ(a.pow(3), ip({1, 3, 3, 1}));
    EXPECT_EQ(a * ip({-1, 1}), ip({-1, 0, 1}));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a - a).degree(), -1);
    EXPECT_EQ(ip({-1, 0, 1}).exact_div(a), ip({-1, 1}));
    EXPECT_THROW(ip({1, 0, 1}).exact_div(a), precondition_error);
    EXPECT_EQ(ip({0, 0, 3, 1}).low_order(), 2u);
    EXPECT_EQ(ip({0, 0, 3, 1}).shift_down(2), ip({3, 1}));
    EXPECT_THROW(ip({1, 3}).shift_down(1), precondition_error);
    EXPECT_EQ(ip({2, 0, 1}).evaluate(Integer(3)), 11);
}

TEST(DensePoly, PrimitivePart) {
    const RatPoly p(std::vector<Rat>{rat(-9, 8), Rat(0), Rat(1)});
    EXPECT_EQ(primitive_integer_part(p), ip({-9, 0, 8}));
    const RatPoly q(std::vector<Rat>{Rat(4), Rat(6)});
    EXPECT_EQ(primitive_integer_part(q), ip({2, 3}));
    EXPECT_EQ(to_string(RatPoly(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)})), "z^2 - 1");
}

TEST(Bareiss, AgreesWithCofactorExpansion) {
    testkit::RatGen gen(61);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.int_in(1, 5));
        std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
        for (auto& row : m)
            for (auto& e : row)
                e = (gen.int_in(0, 3) == 0) ? IntPoly() : ip({gen.int_in(-5, 5), gen.int_in(-3, 3)});
        EXPECT_EQ(bareiss_determinant(m), laplace_det(m));
    }
}

TEST(Resultant, DifferencesOfKnownRoots) {
    // Res_x(P(x), P(x+z)) = lead^(2N) prod_{i,j} (z - (r_i - r_j))
    testkit::RatGen gen(62);
    for (int trial = 0; trial < 40; ++trial) {
        const long n = gen.int_in(1, 4);
        std::vector<Rat> roots;
        for (long i = 0; i < n; ++i) roots.push_back(Rat(gen.int_in(-6, 6)));
        const auto p = primitive_integer_part(testkit::poly_from_roots(roots));
        RatPoly expected = RatPoly::constant(Rat(1));
        for (const auto& a : roots)
            for (const auto& b : roots) expected = expected * RatPoly(std::vector<Rat>{Rat(b - a), Rat(1)});
        EXPECT_EQ(to_rat_poly(self_shift_resultant(p)), expected);
    }
}
