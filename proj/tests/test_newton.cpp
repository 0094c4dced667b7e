#include <gtest/gtest.h>

#include "arboreal/newton.hpp"
#include "support.hpp"

using namespace arboreal;
using testkit::R;
using testkit::V;

namespace {

std::vector<Point> pts(std::initializer_list<std::pair<long, long>> xs) {
    std::vector<Point> out;
    for (auto [x, y] : xs) out.emplace_back(x, ValExt(Rat(y)));
    return out;
}

// Height of the lower hull at x, from all point pairs straddling x.
Rat brute_hull_height(const std::vector<Point>& points, long x) {
    std::optional<Rat> best;
    for (const auto& [x1, y1] : points) {
        for (const auto& [x2, y2] : points) {
            if (!y1.is_finite() || !y2.is_finite() || x1 > x || x2 < x) continue;
            Rat h = (x1 == x2) ? y1.value() : Rat(y1.value() + (y2.value() - y1.value()) * (x - x1) / (x2 - x1));
            if (!best || h < *best) best = h;
        }
    }
    return *best;
}

} // namespace

TEST(LowerHull, ThreePointExamples) {
    auto a = lower_hull(pts({{0, 1}, {1, 0}, {2, 0}}));
    EXPECT_EQ(a.vertices, (std::vector<HullVertex>{{0, Rat(1)}, {1, Rat(0)}, {2, Rat(0)}}));
    EXPECT_EQ(a.segments, (std::vector<HullSegment>{{Rat(-1), 1}, {Rat(0), 1}}));

    auto b = lower_hull(pts({{0, 0}, {1, 5}, {2, 0}}));
    EXPECT_EQ(b.vertices, (std::vector<HullVertex>{{0, Rat(0)}, {2, Rat(0)}}));
    EXPECT_EQ(b.segments, (std::vector<HullSegment>{{Rat(0), 2}}));

    auto c = lower_hull(pts({{0, 4}, {1, 1}, {2, 0}}));
    EXPECT_EQ(c.segments, (std::vector<HullSegment>{{Rat(-3), 1}, {Rat(-1), 1}}));
}

TEST(LowerHull, CollinearPointsAreNotVertices) {
    auto h = lower_hull(pts({{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
    EXPECT_EQ(h.vertices.size(), 2u);
    EXPECT_EQ(h.segments, (std::vector<HullSegment>{{Rat(1), 3}}));
}

TEST(LowerHull, Errors) {
    EXPECT_THROW(lower_hull(pts({{0, 1}})), precondition_error);
    EXPECT_THROW(lower_hull({{0, V(1)}, {1, ValExt::infinity()}}), precondition_error);
    EXPECT_THROW(lower_hull(pts({{0, 1}, {0, 2}})), precondition_error);
}

TEST(LowerHull, RandomPointSetsMatchPairwiseEnvelope) {
    testkit::RatGen gen(21);
    for (int trial = 0; trial < 300; ++trial) {
        const long n = gen.int_in(2, 9);
        std::vector<Point> points;
        for (long x = 0; x < n; ++x) {
            if (x > 0 && x + 1 < n && gen.int_in(0, 4) == 0) points.emplace_back(x, ValExt::infinity());
            else points.emplace_back(x, ValExt(rat(gen.int_in(-12, 12), gen.int_in(1, 4))));
        }
        const auto hull = lower_hull(points);
        long width = 0;
        for (std::size_t i = 0; i < hull.segments.size(); ++i) {
            width += hull.segments[i].width;
            if (i > 0) EXPECT_LT(hull.segments[i - 1].slope, hull.segments[i].slope);
        }
        EXPECT_EQ(width, hull.vertices.back().x - hull.vertices.front().x);
        for (long x = 0; x < n; ++x) EXPECT_EQ(hull.height_at(x), brute_hull_height(points, x));
        for (const auto& [x, y] : points)
            if (y.is_finite()) EXPECT_GE(y.value(), hull.height_at(x));

        std::vector<Point> again;
        for (const auto& v : hull.vertices) again.emplace_back(v.x, ValExt(v.y));
        const auto twice = lower_hull(again);
        EXPECT_EQ(twice.vertices, hull.vertices);
        EXPECT_EQ(twice.segments, hull.segments);
    }
}

TEST(RootValuations, ShiftedQuadratic) {
    // z^2 + 2 y z - d with v(y) = -1, v(d) = 1 over Q_2: coefficients v = (1, 0, 0)
    const auto r = root_valuations(pts({{0, 1}, {1, 0}, {2, 0}}));
    EXPECT_EQ(r.values, (ValMultiset{{V(1), 1}, {V(0), 1}}));
    EXPECT_EQ(r.ground_field_roots.size(), 2u);
}

TEST(RootValuations, PureQuadratic) {
    // z^2 - c with v(c) = -3; the linear coefficient is zero
    const auto r = root_valuations({{0, V(-3)}, {1, ValExt::infinity()}, {2, V(0)}});
    EXPECT_EQ(r.values, (ValMultiset{{V(-3, 2), 2}}));
    EXPECT_TRUE(r.ground_field_roots.empty());
}

TEST(RootValuations, ArtinSchreierFixedPointPolynomial) {
    // x^2 - x - c with v(c) = -2: both roots have valuation -1
    const auto r = root_valuations(pts({{0, -2}, {1, 0}, {2, 0}}));
    EXPECT_EQ(r.values, (ValMultiset{{V(-1), 2}}));
}

TEST(RootValuations, ZeroRootsAndErrors) {
    const auto r = root_valuations({{0, ValExt::infinity()}, {1, ValExt::infinity()}, {2, V(1)}, {3, V(0)}, {4, V(0)}});
    EXPECT_EQ(r.zero_roots, 2u);
    EXPECT_EQ(r.values.at(ValExt::infinity()), 2u);
    EXPECT_THROW(root_valuations({{0, V(0)}, {1, ValExt::infinity()}}), precondition_error);
    EXPECT_THROW(root_valuations({}), precondition_error);
}

TEST(RootValuations, MatchValuationsOfKnownRoots) {
    testkit::RatGen gen(22);
    for (long p : {2L, 3L, 5L}) {
        for (int trial = 0; trial < 170; ++trial) {
            const long deg = gen.int_in(1, 6);
            std::vector<Rat> roots;
            for (long i = 0; i < deg; ++i) roots.push_back(gen.with_valuation(p, gen.int_in(-4, 4), 9));
            const auto poly = testkit::poly_from_roots(roots);
            std::vector<Point> points;
            for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
                points.emplace_back(static_cast<long>(i), padic_val(poly.coeffs()[i], Integer(p)));
            const auto got = root_valuations(points);
            EXPECT_EQ(got.values, testkit::val_counts(roots, p));

            // product of roots: sum of valuations = v(constant) - v(leading)
            Rat sum(0);
            for (const auto& [v, k] : got.values) sum += v.value() * static_cast<long>(k);
            EXPECT_EQ(sum, padic_val(poly.coeffs().front(), Integer(p)).value() -
                               padic_val(poly.lead(), Integer(p)).value());
        }
    }
}
