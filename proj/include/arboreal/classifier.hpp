#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/dynamics.hpp"
#include "arboreal/residue.hpp"
#include "arboreal/valuation.hpp"

namespace arboreal {

enum class Regime { BelowNuInfty, AtNuInfty, Between, NonNegative, TameNegative, TameNonNegative, Real };
enum class Trilean { False, True, Unknown };
enum class Ramification {
    Unramified,
    IndexDividesEll,
    FinitelyRamified,
    InfinitelyRamified,
    InfinitelyWildlyRamified
};

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::BelowNuInfty: return "BelowNuInfty";
    case Regime::AtNuInfty: return "AtNuInfty";
    case Regime::Between: return "Between";
    case Regime::NonNegative: return "NonNegative";
    case Regime::TameNegative: return "TameNegative";
    case Regime::TameNonNegative: return "TameNonNegative";
    case Regime::Real: return "Real";
    }
    return "?";
}

inline const char* to_string(Trilean t) {
    switch (t) {
    case Trilean::False: return "false";
    case Trilean::True: return "true";
    case Trilean::Unknown: return "unknown";
    }
    return "?";
}

inline const char* to_string(Ramification r) {
    switch (r) {
    case Ramification::Unramified: return "unramified";
    case Ramification::IndexDividesEll: return "index_divides_ell";
    case Ramification::FinitelyRamified: return "finitely_ramified";
    case Ramification::InfinitelyRamified: return "infinitely_ramified";
    case Ramification::InfinitelyWildlyRamified: return "infinitely_wildly_ramified";
    }
    return "?";
}

/// A structural statement about the tower groups, with the hypotheses it rests on.
struct ShapeTag {
    std::string name;
    std::string statement;
    std::vector<std::string> hypotheses;
};

struct RegimeVerdict {
    Regime regime = Regime::BelowNuInfty;
    Trilean extension_finite = Trilean::Unknown;
    std::optional<Cutoff> cutoff;
    std::vector<ShapeTag> tags;
    std::optional<Ramification> ramification;
    std::optional<Rat> shallow_w;
    std::optional<Rat> degree_exponent;
    std::vector<std::string> hypotheses_used;

    bool has_tag(const std::string& name) const {
        return std::any_of(tags.begin(), tags.end(), [&](const ShapeTag& t) { return t.name == name; });
    }

    void use(const std::string& h) {
        if (std::find(hypotheses_used.begin(), hypotheses_used.end(), h) == hypotheses_used.end())
            hypotheses_used.push_back(h);
    }

    void tag(std::string name, std::string statement, std::vector<std::string> hyps) {
        for (const auto& h : hyps) use(h);
        tags.push_back({std::move(name), std::move(statement), std::move(hyps)});
    }
};

/// Data about a fixed point b of f when v(c) = nu_inf.
struct FixedPointData {
    Rat v_b;
    ValExt v_a_minus_b;
    bool b_in_K = false;
};

struct WildInput {
    Rat vc;
    ValExt va;
    std::optional<long> r; ///< largest r with v(c) in p^r v(K^x); computed when absent
    std::optional<FixedPointData> fixed_point;
    bool require_inertia = false; ///< demand an I(inf) verdict at v(c) = nu_inf
};

namespace hyp {
inline const std::string below = "v(c) < nu_inf";
inline const std::string at = "v(c) = nu_inf";
inline const std::string a_gt_c = "v(a) > v(c)";
inline const std::string a_ge_c_over_ell = "v(a) >= v(c)/ell";
inline const std::string a_gt_c_over_ell = "v(a) > v(c)/ell";
inline const std::string mu = "mu_ell in K";
inline const std::string residue_finite = "residue field finite";
inline const std::string a_minus_b_neg = "v(a-b) < 0";
inline const std::string a_minus_b_nonneg = "v(a-b) >= 0";
inline const std::string b_in_K = "b in K";
} // namespace hyp

namespace detail {

// mu_2 is always in K.
inline bool has_roots_of_unity(const GroundField& gf) { return gf.mu_ell_in_K || gf.ell == 2; }

inline void add_elementary_abelian_tags(RegimeVerdict& v) {
    const std::vector<std::string> h{hyp::below, hyp::a_gt_c, hyp::mu};
    v.tag("ElemAbelianExp_ell_rank<=n", "G(n) embeds in (Z/ell)^n for every n", h);
    v.tag("CyclicQuotient<=ell", "G(n)/I(n) is cyclic of order dividing ell", h);
    v.tag("GeneratedByOneRoot", "K_n = K(alpha_n) for any alpha_n in f^-n(a)", h);
}

inline std::string level_str(const std::string& base, long n) {
    return base + "^" + std::to_string(n);
}

} // namespace detail

/// Largest r with p^r dividing e * v(c) (v(c) nonzero, in the value group).
inline long value_group_divisibility(const GroundField& gf, const Rat& vc) {
    require(vc != 0, "value_group_divisibility: v(c) must be nonzero");
    require(gf.in_value_group(vc), "value_group_divisibility: v(c) is not in v(K^x) = (1/e)Z");
    const Rat scaled = vc * gf.e;
    return int_val(scaled.get_num(), Integer(gf.p));
}

inline Rat shallow_ramification_bound(long e, const ValExt& v_a_minus_b) {
    require(e >= 1, "shallow_ramification_bound: e must be positive");
    if (v_a_minus_b >= ValExt(Rat(0))) return Rat(0);
    return Rat(2 * e * abs(v_a_minus_b.value()));
}

struct DegreeStepBound {
    long m = 0;               ///< [K_{m+r+1} : K_{m+r}] <= p^{p_exponent}
    Integer p_exponent;       ///< p^m (p^r - 1)
};

struct DegreeGrowthBound {
    Integer trivial_bound;    ///< B_n = (p-1) prod_{m=1}^n p^{p^m}
    std::string trivial_bound_symbolic;
    long r = 0;               ///< smallest r >= 1 with v(c) < -p/((p^r-1)(p-1))
    Rat exponent;             ///< 1 - p^-r
    long m0 = 1;              ///< first level whose preimages all have v >= v(c)
    std::vector<DegreeStepBound> per_step;
};

/// Threshold -p/((p^r - 1)(p - 1)).
inline Rat degree_threshold(long p, long r) {
    const Integer P(p);
    return Rat(-rat(P, (ipow(P, static_cast<unsigned long>(r)) - 1) * (P - 1)));
}

inline DegreeGrowthBound degree_growth_bound(const GroundField& gf, const Rat& vc, const ValExt& va, long n) {
    require(gf.is_wild(), "degree_growth_bound: wild mode only");
    require(vc < 0, "degree_growth_bound: requires v(c) < 0 (no valid r otherwise)");
    require(n >= 0, "degree_growth_bound: n must be >= 0");
    const Integer P(gf.p);
    DegreeGrowthBound out;

    Integer log_p(0);
    out.trivial_bound_symbolic = std::to_string(gf.p - 1);
    for (long m = 1; m <= n; ++m) {
        log_p += ipow(P, static_cast<unsigned long>(m));
        out.trivial_bound_symbolic += "*" + std::to_string(gf.p) + "^(" + std::to_string(gf.p) + "^" +
                                      std::to_string(m) + ")";
    }
    require(log_p <= 1 << 20, "degree_growth_bound: B_n too large to expand");
    out.trivial_bound = (P - 1) * ipow(P, log_p.get_ui());

    out.r = 1;
    while (!(vc < degree_threshold(gf.p, out.r))) ++out.r;
    out.exponent = 1 - rat(Integer(1), ipow(P, static_cast<unsigned long>(out.r)));

    const auto orbit = val_orbit(va, vc, gf, std::max<long>(n, 1) + 8);
    out.m0 = 0;
    for (std::size_t i = 0; i < orbit.levels.size(); ++i) {
        if (orbit.levels[i].value >= ValExt(vc)) {
            out.m0 = static_cast<long>(i + 1);
            break;
        }
    }
    require(out.m0 >= 1, "degree_growth_bound: preimage valuations did not reach v(c)");
    const Integer step = ipow(P, static_cast<unsigned long>(out.r)) - 1;
    for (long m = out.m0; m + out.r + 1 <= n; ++m)
        out.per_step.push_back({m, ipow(P, static_cast<unsigned long>(m)) * step});
    return out;
}

/// 1 + eps is a p-th power in K whenever v(eps) > p/(p-1).
inline bool is_one_plus_eps_pth_power(const ValExt& v_eps, const GroundField& gf) {
    require(gf.is_wild(), "is_one_plus_eps_pth_power: wild mode only");
    return v_eps > ValExt(rat(gf.p, gf.p - 1));
}

/// Whether the product of alpha_{m+r} + c over f^-r(alpha_m) is a p-th power
/// in K_{m+r}, using v(c + alpha_m) >= min(v(c), v(alpha_m)).
inline bool kummer_product_reduction(const Rat& vc, const ValExt& v_alpha_m, long r, const GroundField& gf) {
    require(gf.is_wild(), "kummer_product_reduction: wild mode only");
    require(vc < 0, "kummer_product_reduction: requires v(c) < 0");
    require(r >= 1, "kummer_product_reduction: r must be >= 1");
    require(v_alpha_m >= ValExt(vc), "kummer_product_reduction: requires v(alpha_m) >= v(c)");
    const ValExt sum_lower = min(ValExt(vc), v_alpha_m);
    const Rat pr(ipow(Integer(gf.p), static_cast<unsigned long>(r)));
    return sum_lower - Rat(pr * vc) > ValExt(rat(gf.p, gf.p - 1));
}

inline RegimeVerdict classify_wild(const GroundField& gf, const WildInput& in) {
    require(gf.is_wild(), "classify_wild: wild-mode field required");
    const Rat& vc = in.vc;
    const ValExt& va = in.va;
    require(gf.in_value_group(vc), "classify_wild: v(c) is not in v(K^x) = (1/e)Z");
    require(!va.is_finite() || gf.in_value_group(va.value()), "classify_wild: v(a) is not in v(K^x)");
    const Rat ell(gf.ell);
    const ValExt vc_over_ell(Rat(vc / ell));
    const bool mu = detail::has_roots_of_unity(gf);
    RegimeVerdict v;

    if (vc < nu_infinity(gf)) {
        v.regime = Regime::BelowNuInfty;
        v.extension_finite = Trilean::True;
        v.use(hyp::below);
        if (va >= vc_over_ell) {
            v.cutoff = cutoff_level(vc, va, gf);
            v.use(hyp::a_ge_c_over_ell);
        } else {
            const auto orbit = val_orbit(va, vc, gf, 64);
            require(orbit.stabilization_level.has_value(), "classify_wild: preimage valuations did not stabilize");
            const long m0 = *orbit.stabilization_level;
            const long n = cutoff_level(vc, vc_over_ell, gf).n;
            v.tag("CutoffAfterStabilization",
                  "every alpha in f^-" + std::to_string(m0) + "(a) has v(alpha) = v(c)/ell, so K_inf = K_" +
                      std::to_string(m0 + n) + (ladder_position(vc, gf).on_rung ? " (+1, unramified)" : ""),
                  {hyp::below});
        }
        if (va > ValExt(vc) && mu) detail::add_elementary_abelian_tags(v);

        const auto pos = ladder_position(vc, gf);
        const long r = value_group_divisibility(gf, vc);
        require(!in.r || *in.r == r, "classify_wild: supplied r = " + std::to_string(in.r.value_or(0)) +
                                         " but v(c) gives r = " + std::to_string(r));
        if (mu && !pos.on_rung && va > vc_over_ell) {
            const std::string band = "nu_" + std::to_string(pos.n - 1) + " < v(c) < nu_" + std::to_string(pos.n);
            if (r == 0) {
                v.tag("G=I=(Z/ell)^n",
                      "G(inf) = G(n) = I(inf) = I(n) = " + detail::level_str("(Z/ell)", pos.n) + ", #G(inf) = " +
                          ipow(Integer(gf.ell), static_cast<unsigned long>(pos.n)).get_str(),
                      {hyp::mu, band, hyp::a_gt_c_over_ell, "v(c) not in ell v(K^x)"});
                v.ramification = Ramification::FinitelyRamified;
            } else {
                v.tag("InertiaLower ell^{n-r}",
                      "ell^" + std::to_string(pos.n - r) + " <= #I(n) <= #G(n) = #G(inf) <= ell^" +
                          std::to_string(pos.n),
                      {hyp::mu, band, hyp::a_gt_c_over_ell, "r = " + std::to_string(r)});
                if (pos.n - r >= 1) v.ramification = Ramification::FinitelyRamified;
            }
        } else if (mu && pos.on_rung && va >= vc_over_ell) {
            const std::string rung = "v(c) = nu_" + std::to_string(pos.n);
            const std::vector<std::string> h{hyp::mu, rung, hyp::a_ge_c_over_ell};
            v.tag("G=G(n+1)<=(Z/ell)^{n+1}",
                  "G(inf) = G(" + std::to_string(pos.n + 1) + ") <= " + detail::level_str("(Z/ell)", pos.n + 1), h);
            v.tag("I=I(n)<=(Z/ell)^n",
                  "I(inf) = I(" + std::to_string(pos.n) + ") <= " + detail::level_str("(Z/ell)", pos.n), h);
            v.tag("GmodI<=Z/ell", "G(inf)/I(inf) <= Z/ell", h);
        }
        return v;
    }

    if (vc == nu_infinity(gf)) {
        v.regime = Regime::AtNuInfty;
        v.use(hyp::at);
        if (gf.k_finite) {
            v.extension_finite = Trilean::False;
            v.use(hyp::residue_finite);
        }
        v.tag("I(n)_p_group", "I(n) is a p-group", {hyp::at});
        if (mu) v.tag("GmodI(n)_cyclic_p", "G(n)/I(n) is a cyclic p-group", {hyp::at, hyp::mu});
        if (va > ValExt(vc))
            v.tag("ElemAbelianExp_ell_rank<=n", "I(n) is elementary abelian of order dividing p^n",
                  {hyp::at, hyp::a_gt_c});
        if (mu) v.tag("GmodI=Z_p", "G(inf)/I(inf) = Z_p", {hyp::at, hyp::mu});

        if (!in.fixed_point) {
            require(!in.require_inertia, "classify_wild: fixed-point data needed for an I(inf) verdict");
            return v;
        }
        const auto& fp = *in.fixed_point;
        require(fp.v_b == vc / gf.p, "classify_wild: a fixed point has v(b) = v(c)/p = " + to_string(Rat(vc / gf.p)));
        // ultrametric consistency of v(a), v(b), v(a-b)
        const ValExt vb(fp.v_b);
        if (va != vb) require(fp.v_a_minus_b == min(va, vb), "classify_wild: v(a-b) inconsistent with v(a), v(b)");
        else require(fp.v_a_minus_b >= vb, "classify_wild: v(a-b) inconsistent with v(a), v(b)");

        if (fp.v_a_minus_b < ValExt(Rat(0))) {
            v.tag("Iinf_infinite_pro_p", "I(inf) is an infinite pro-p group", {hyp::at, hyp::a_minus_b_neg});
            if (va > ValExt(vc))
                v.tag("Iinf=(Z/pZ)^inf", "I(inf) = (Z/pZ)^inf", {hyp::at, hyp::a_minus_b_neg, hyp::a_gt_c});
            v.ramification = Ramification::InfinitelyRamified;
        } else {
            v.tag("Iinf_finite", "I(inf) is finite", {hyp::at, hyp::a_minus_b_nonneg});
            if (fp.b_in_K) {
                v.tag("Iinf_trivial", "I(inf) = {1}", {hyp::at, hyp::a_minus_b_nonneg, hyp::b_in_K});
                v.ramification = Ramification::Unramified;
            } else {
                v.ramification = Ramification::FinitelyRamified;
            }
        }
        if (va > ValExt(vc) && fp.b_in_K) {
            v.shallow_w = shallow_ramification_bound(gf.e, fp.v_a_minus_b);
            v.tag("ShallowRamification", "G(inf)^w = {1} for all w >= " + to_string(*v.shallow_w),
                  {hyp::at, hyp::a_gt_c, hyp::b_in_K});
        }
        return v;
    }

    v.extension_finite = Trilean::False;
    v.ramification = Ramification::InfinitelyWildlyRamified;
    if (vc < 0) {
        v.regime = Regime::Between;
        v.use("nu_inf < v(c) < 0");
        v.degree_exponent = degree_growth_bound(gf, vc, va, 0).exponent;
    } else {
        v.regime = Regime::NonNegative;
        v.use("v(c) >= 0");
    }
    return v;
}

inline RegimeVerdict classify_tame(const GroundField& gf, const Rat& vc, const ValExt& va,
                                   const std::optional<ResidueReport>& residue = std::nullopt,
                                   std::optional<bool> exact_single_cycle = std::nullopt) {
    require(!gf.is_wild(), "classify_tame: tame-mode field required");
    RegimeVerdict v;
    const ValExt vc_over_ell(Rat(vc / gf.ell));
    if (vc < 0) {
        v.regime = Regime::TameNegative;
        v.extension_finite = Trilean::True;
        v.use("v(c) < 0");
        if (va >= vc_over_ell) {
            v.cutoff = Cutoff{1, false};
            v.use(hyp::a_ge_c_over_ell);
        } else {
            const auto orbit = val_orbit(va, vc, gf, 64);
            require(orbit.stabilization_level.has_value(), "classify_tame: preimage valuations did not stabilize");
            v.tag("CutoffAfterStabilization",
                  "every alpha in f^-" + std::to_string(*orbit.stabilization_level) +
                      "(a) has v(alpha) = v(c)/ell, so K_inf = K_" + std::to_string(*orbit.stabilization_level + 1),
                  {"v(c) < 0"});
        }
        if (va > ValExt(vc) && gf.mu_ell_in_K) detail::add_elementary_abelian_tags(v);
        return v;
    }

    v.regime = Regime::TameNonNegative;
    v.use("v(c) >= 0");
    const ValExt lo = min(va, ValExt(vc));
    if (lo != ValExt(Rat(0)) && va != ValExt(vc)) {
        v.use("min(v(a), v(c)) != 0");
        v.use("v(a) != v(c)");
        v.extension_finite = Trilean::False;
        v.ramification = Ramification::InfinitelyRamified;
        return v;
    }
    require(residue.has_value(), "classify_tame: residue report required when v(c) >= 0 and v(a) >= 0");
    v.use("v(a) >= 0");
    switch (tame_verdict(*residue, exact_single_cycle)) {
    case TameCase::Unramified:
        v.use("a mod m not in forward orbit of 0 mod m");
        v.ramification = Ramification::Unramified;
        break;
    case TameCase::IndexDividesL:
        v.use("0 mod m strictly preperiodic");
        v.ramification = Ramification::IndexDividesEll;
        break;
    case TameCase::UnramifiedSingleCycle:
        v.use("0 and a in a single cycle");
        v.ramification = Ramification::Unramified;
        break;
    case TameCase::InfinitelyRamified:
        v.use("0, a in a single cycle mod m but not exactly");
        v.ramification = Ramification::InfinitelyRamified;
        v.extension_finite = Trilean::False;
        break;
    }
    return v;
}

enum class RealVerdict { AllReal, Complex };

inline const char* to_string(RealVerdict r) { return r == RealVerdict::AllReal ? "AllReal" : "Complex"; }

/// Whether every iterated preimage of a under z^k - c is real.
inline RealVerdict classify_real(long k, const Rat& c, const Rat& a) {
    require(k >= 2, "classify_real: k must be >= 2");
    require(c != 0, "classify_real: c must be nonzero");
    if (k > 2 || c < 2) return RealVerdict::Complex;
    return (-c <= a && a <= c * c - c) ? RealVerdict::AllReal : RealVerdict::Complex;
}

} // namespace arboreal
