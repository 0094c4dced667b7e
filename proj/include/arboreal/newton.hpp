#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "arboreal/rational.hpp"

namespace arboreal {

struct HullVertex {
    long x = 0;
    Rat y;
    friend bool operator==(const HullVertex&, const HullVertex&) = default;
};

struct HullSegment {
    Rat slope;
    long width = 0;
    friend bool operator==(const HullSegment&, const HullSegment&) = default;
};

/// Lower convex hull of a finite point set; slopes strictly increase.
struct NewtonPolygon {
    std::vector<HullVertex> vertices;
    std::vector<HullSegment> segments;

    /// Height of the hull at an abscissa inside [x_min, x_max].
    Rat height_at(long x) const {
        require(!vertices.empty() && x >= vertices.front().x && x <= vertices.back().x,
                "height_at: abscissa outside hull");
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
            const auto& a = vertices[i];
            const auto& b = vertices[i + 1];
            if (x <= b.x) return Rat(a.y + segments[i].slope * (x - a.x));
        }
        return vertices.back().y;
    }
};

using Point = std::pair<long, ValExt>;

/// Lower convex hull of the finite points; infinite ordinates are dropped.
/// Collinear interior points are not vertices.
inline NewtonPolygon lower_hull(const std::vector<Point>& points) {
    std::vector<HullVertex> pts;
    for (const auto& [x, y] : points)
        if (y.is_finite()) pts.push_back({x, y.value()});
    require(pts.size() >= 2, "lower_hull: need at least two finite points");
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    for (std::size_t i = 1; i < pts.size(); ++i)
        require(pts[i].x != pts[i - 1].x, "lower_hull: duplicate abscissa");

    // Andrew's monotone chain, lower half. Pops on non-left turns so that
    // collinear points are removed.
    auto cross = [](const HullVertex& o, const HullVertex& a, const HullVertex& b) {
        return Rat((a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x));
    };
    std::vector<HullVertex> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }

    NewtonPolygon poly;
    poly.vertices = hull;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        const long w = hull[i + 1].x - hull[i].x;
        poly.segments.push_back({Rat((hull[i + 1].y - hull[i].y) / w), w});
    }
    return poly;
}

using ValMultiset = std::map<ValExt, std::size_t>;

inline std::size_t total_count(const ValMultiset& m) {
    std::size_t n = 0;
    for (const auto& [v, k] : m) n += k;
    return n;
}

/// Root valuations read off a Newton polygon.
struct RootValuations {
    ValMultiset values;             ///< includes inf for roots equal to zero
    std::size_t zero_roots = 0;     ///< number of trailing zero coefficients
    /// Valuations carried by width-1 segments: such a root lies in the
    /// coefficient field.
    std::vector<Rat> ground_field_roots;
};

/// Points are (i, v(coefficient of z^i)). A segment of slope s and width w
/// contributes w roots of valuation -s.
inline RootValuations root_valuations(const std::vector<Point>& coefficient_points) {
    require(!coefficient_points.empty(), "root_valuations: zero polynomial");
    std::vector<Point> pts = coefficient_points;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    require(pts.back().second.is_finite(), "root_valuations: leading coefficient must be nonzero");
    const long degree = pts.back().first;

    long lowest = degree;
    for (const auto& [x, y] : pts)
        if (y.is_finite()) { lowest = x; break; }

    RootValuations out;
    out.zero_roots = static_cast<std::size_t>(lowest - pts.front().first);
    // indices below the first listed point are implicit zero coefficients
    out.zero_roots += static_cast<std::size_t>(pts.front().first);
    if (out.zero_roots > 0) out.values[ValExt::infinity()] = out.zero_roots;
    if (lowest == degree) return out;

    const NewtonPolygon poly = lower_hull(pts);
    for (const auto& seg : poly.segments) {
        out.values[ValExt(Rat(-seg.slope))] += static_cast<std::size_t>(seg.width);
        if (seg.width == 1) out.ground_field_roots.push_back(Rat(-seg.slope));
    }
    return out;
}

} // namespace arboreal
