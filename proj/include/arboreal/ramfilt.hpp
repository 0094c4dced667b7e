#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "arboreal/rational.hpp"

namespace arboreal {

struct Break {
    Rat u;
    Integer order;
    friend bool operator==(const Break&, const Break&) = default;
};

/// Order function u -> |G_u| of a ramification filtration.
///
/// breaks[0] = (0, |G_0|). An entry (u_i, order_i) with i >= 1 means the
/// group has order order_i for u in (u_i, u_{i+1}]: u_i is the largest
/// parameter at which the previous order is still attained. The same type
/// holds upper-numbering order functions.
class BreakFiltration {
public:
    BreakFiltration() : breaks_{{Rat(0), Integer(1)}} {}

    explicit BreakFiltration(std::vector<Break> breaks) : breaks_(std::move(breaks)) {
        require(!breaks_.empty(), "BreakFiltration: empty break list");
        require(breaks_.front().u == 0, "BreakFiltration: first break must be at u = 0");
        for (std::size_t i = 0; i < breaks_.size(); ++i) {
            require(breaks_[i].order >= 1, "BreakFiltration: orders must be positive");
            if (i == 0) continue;
            require(breaks_[i].u > breaks_[i - 1].u, "BreakFiltration: break parameters must increase");
            require(breaks_[i - 1].order % breaks_[i].order == 0,
                    "BreakFiltration: each order must divide the previous one");
            require(breaks_[i].order != breaks_[i - 1].order,
                    "BreakFiltration: a break must change the order");
        }
    }

    const std::vector<Break>& breaks() const { return breaks_; }
    const Integer& inertia_order() const { return breaks_.front().order; }
    const Integer& terminal_order() const { return breaks_.back().order; }

    /// |G_u| for u >= 0.
    Integer order_at(const Rat& u) const {
        require(u >= 0, "BreakFiltration: negative parameter");
        Integer ord = breaks_.front().order;
        for (std::size_t i = 1; i < breaks_.size() && u > breaks_[i].u; ++i) ord = breaks_[i].order;
        return ord;
    }

    /// (G_0 : G_u)
    Rat index_at(const Rat& u) const { return rat(inertia_order(), order_at(u)); }

    friend bool operator==(const BreakFiltration&, const BreakFiltration&) = default;

private:
    std::vector<Break> breaks_;
};

/// phi(u) = integral_0^u dt / (G_0 : G_t), exact.
inline Rat herbrand_phi(const BreakFiltration& F, const Rat& u) {
    require(u >= 0, "herbrand_phi: u must be >= 0");
    const auto& b = F.breaks();
    Rat acc(0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Rat lo = b[i].u;
        if (u <= lo) break;
        const Rat hi = (i + 1 < b.size()) ? std::min(u, b[i + 1].u) : u;
        acc += (hi - lo) * rat(b[i].order, F.inertia_order());
    }
    return acc;
}

/// Inverse of phi.
inline Rat herbrand_psi(const BreakFiltration& F, const Rat& w) {
    require(w >= 0, "herbrand_psi: w must be >= 0");
    const auto& b = F.breaks();
    Rat phi_lo(0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Rat slope = rat(b[i].order, F.inertia_order());
        if (i + 1 < b.size()) {
            const Rat phi_hi = phi_lo + (b[i + 1].u - b[i].u) * slope;
            if (w <= phi_hi) return Rat(b[i].u + (w - phi_lo) / slope);
            phi_lo = phi_hi;
        } else {
            return Rat(b[i].u + (w - phi_lo) / slope);
        }
    }
    return w;
}

/// Upper numbering: G^w = G_{psi(w)}, so each lower break u moves to phi(u).
inline BreakFiltration upper_order_function(const BreakFiltration& lower) {
    std::vector<Break> out;
    for (const auto& b : lower.breaks()) out.push_back({herbrand_phi(lower, b.u), b.order});
    return BreakFiltration(std::move(out));
}

/// Inverse transport: psi(w) = integral_0^w (G^0 : G^s) ds.
inline BreakFiltration lower_order_function(const BreakFiltration& upper) {
    const auto& b = upper.breaks();
    std::vector<Break> out;
    Rat u(0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i > 0) u += (b[i].u - b[i - 1].u) * rat(upper.inertia_order(), b[i - 1].order);
        out.push_back({u, b[i].order});
    }
    return BreakFiltration(std::move(out));
}

struct PhiCheck {
    bool holds = true;
    std::optional<Rat> witness;
};

/// phi(u) <= u at every sample.
inline PhiCheck phi_leq_identity_check(const BreakFiltration& F, const std::vector<Rat>& u_samples) {
    for (const auto& u : u_samples)
        if (herbrand_phi(F, u) > u) return {false, u};
    return {};
}

namespace detail {

// Union of break parameters plus one point past the last.
inline std::vector<Rat> merged_breakpoints(const BreakFiltration& a, const BreakFiltration& b) {
    std::vector<Rat> pts;
    for (const auto& x : a.breaks()) pts.push_back(x.u);
    for (const auto& x : b.breaks()) pts.push_back(x.u);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(Rat(pts.back() + 1));
    return pts;
}

} // namespace detail

/// For H <= G with H_u = G_u cap H: phi_G(u) <= phi_H(u) for all u. Orders
/// are compared on every interval between merged break points.
inline bool subgroup_phi_inequality(const BreakFiltration& G, const BreakFiltration& H) {
    const auto pts = detail::merged_breakpoints(G, H);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // Orders are constant on (pts[i-1], pts[i]]; pts[i] represents it.
        const Integer g = G.order_at(pts[i]);
        const Integer h = H.order_at(pts[i]);
        require(g % h == 0, "subgroup_phi_inequality: H_u order does not divide G_u order");
        require(H.index_at(pts[i]) <= G.index_at(pts[i]),
                "subgroup_phi_inequality: index (H_0:H_u) exceeds (G_0:G_u)");
    }
    for (const auto& u : pts)
        if (herbrand_phi(H, u) < herbrand_phi(G, u)) return false;
    return true;
}

/// Upper bound for the upper order function of a compositum: the Galois
/// group of L1 L2 / K embeds in the product, so |G^w| <= |G1^w| * |G2^w|.
inline BreakFiltration compositum_upper_bound(const BreakFiltration& upper1, const BreakFiltration& upper2) {
    const auto pts = detail::merged_breakpoints(upper1, upper2);
    std::vector<Break> out{{Rat(0), Integer(upper1.inertia_order() * upper2.inertia_order())}};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        // order on (pts[i-1], pts[i]] starts at pts[i-1]
        const Integer ord = upper1.order_at(pts[i]) * upper2.order_at(pts[i]);
        if (ord != out.back().order) out.push_back({pts[i - 1], ord});
    }
    return BreakFiltration(std::move(out));
}

} // namespace arboreal
