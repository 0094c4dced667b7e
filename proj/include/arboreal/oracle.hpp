#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "arboreal/dynamics.hpp"
#include "arboreal/newton.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/valuation.hpp"

namespace arboreal {

struct OracleConfig {
    long degree_cap = 256;     ///< max degree of f^n(z) - a
    long resultant_cap = 256;  ///< max (deg P)^2 for the difference resultant
    long precision_cap = 4096; ///< max bits for real-case interval enclosures
};

/// f^n(z) - a for f(z) = z^ell - c, expanded exactly.
inline RatPoly iterate_poly(long ell, const Rat& c, long n, const Rat& a, const OracleConfig& cfg = {}) {
    require(ell >= 2 && n >= 0, "iterate_poly: need ell >= 2 and n >= 0");
    Integer degree = ipow(Integer(ell), static_cast<unsigned long>(n));
    if (degree > cfg.degree_cap)
        throw cap_exceeded("iterate_poly: degree " + degree.get_str() + " exceeds cap " +
                           std::to_string(cfg.degree_cap));
    RatPoly p = RatPoly::monomial(1);
    const RatPoly cpoly = RatPoly::constant(c);
    for (long i = 0; i < n; ++i) p = p.pow(static_cast<unsigned long>(ell)) - cpoly;
    return p - RatPoly::constant(a);
}

inline std::vector<Point> valuation_points(const RatPoly& p, const Integer& prime) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        pts.emplace_back(static_cast<long>(i), padic_val(p.coeffs()[i], prime));
    return pts;
}

inline ValMultiset root_val_multiset(const RatPoly& p, long prime) {
    require(!p.is_zero(), "root_val_multiset: zero polynomial");
    return root_valuations(valuation_points(p, Integer(prime))).values;
}

/// D(z) = Res_x(P(x), P(x+z)) / z^{deg P}; its roots are the ordered
/// differences alpha_j - alpha_i, i != j, counted with multiplicity.
inline IntPoly difference_polynomial(const RatPoly& p, const OracleConfig& cfg = {}) {
    require(p.degree() >= 1, "difference_polynomial: degree must be positive");
    if (p.degree() * p.degree() > cfg.resultant_cap)
        throw cap_exceeded("difference_polynomial: (deg P)^2 = " + std::to_string(p.degree() * p.degree()) +
                           " exceeds cap " + std::to_string(cfg.resultant_cap));
    const IntPoly res = self_shift_resultant(primitive_integer_part(p));
    const auto n = static_cast<std::size_t>(p.degree());
    require(res.low_order() >= n, "difference_polynomial: resultant vanishes to order below deg P");
    return res.shift_down(n);
}

/// Valuations of the deg*(deg-1) ordered root differences. Repeated roots
/// make some differences zero; they are rejected unless allow_repeated, in
/// which case they appear as inf.
inline ValMultiset difference_val_multiset(const RatPoly& p, long prime, const OracleConfig& cfg = {},
                                           bool allow_repeated = false) {
    const IntPoly d = difference_polynomial(p, cfg);
    require(allow_repeated || d.low_order() == 0, "difference_val_multiset: polynomial is not separable");
    return root_val_multiset(to_rat_poly(d), prime);
}

/// z^deg P(1/z): roots are the inverses of the nonzero roots of P.
inline RatPoly reciprocal_poly(const RatPoly& p) {
    require(!p.is_zero() && p.coeffs().front() != 0, "reciprocal_poly: P(0) must be nonzero");
    std::vector<Rat> c(p.coeffs().rbegin(), p.coeffs().rend());
    return RatPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// Prediction harness.
// ---------------------------------------------------------------------------

struct OracleCheck {
    std::string name;
    std::string predicted;
    std::string observed;
    bool passed = false;
};

struct OracleReport {
    long level = 0;
    ValMultiset root_vals;
    ValMultiset diff_vals;
    std::vector<OracleCheck> checks;
    bool agreement = true;
    std::vector<std::string> witnesses;
};

namespace detail {

inline std::string multiset_string(const ValMultiset& m) {
    std::string s = "{";
    bool first = true;
    for (const auto& [v, k] : m) {
        if (!first) s += ", ";
        first = false;
        s += to_string(v) + ": " + std::to_string(k);
    }
    return s + "}";
}

inline void record(OracleReport& rep, OracleCheck check) {
    if (!check.passed) {
        rep.agreement = false;
        rep.witnesses.push_back(check.name + ": predicted " + check.predicted + ", observed " + check.observed);
    }
    rep.checks.push_back(std::move(check));
}

} // namespace detail

/// Compares the valuation-level predictions with the resultant/Newton-polygon
/// oracle at one level n of the preimage tree of a under z^ell - c.
inline OracleReport verify_predictions(const GroundField& gf, const Rat& c, const Rat& a, long n,
                                       const OracleConfig& cfg = {}) {
    require(c != 0, "verify_predictions: c must be nonzero");
    require(n >= 1, "verify_predictions: level must be >= 1");
    require(gf.p != 0, "verify_predictions: residue characteristic must be a prime");
    const Integer prime(gf.p);
    const Rat vc = padic_val(c, prime).value();
    const ValExt va = padic_val(a, prime);
    const Integer size = ipow(Integer(gf.ell), static_cast<unsigned long>(n));
    const std::size_t count = size.get_ui();

    const auto orbit = val_orbit(va, vc, gf, n);
    const LevelVal& level = orbit.levels.back();
    if (vc < 0 && !level.exact)
        throw indeterminate_regime("verify_predictions: v(alpha_k) = v(c) at level " +
                                   std::to_string(*orbit.indeterminate_at) +
                                   "; root valuations at level " + std::to_string(n) + " are undetermined");

    OracleReport rep;
    rep.level = n;
    const RatPoly p = iterate_poly(gf.ell, c, n, a, cfg);
    rep.root_vals = root_val_multiset(p, gf.p);

    if (level.exact) {
        const ValMultiset expected{{level.value, count}};
        detail::record(rep, {"root_valuations", detail::multiset_string(expected),
                             detail::multiset_string(rep.root_vals), rep.root_vals == expected});
    } else {
        const bool ok = rep.root_vals.begin()->first >= level.value;
        detail::record(rep, {"root_valuations_lower_bound", ">= " + to_string(level.value),
                             detail::multiset_string(rep.root_vals), ok});
    }

    const bool below = vc < nu_infinity(gf);
    const bool at_boundary = gf.is_wild() && vc == nu_infinity(gf);
    const auto regime = dn_regime(vc, va, gf);
    const bool need_differences = (below && va > ValExt(vc)) || (at_boundary && va > ValExt(vc)) || regime;
    if (!need_differences) return rep;

    rep.diff_vals = difference_val_multiset(p, gf.p, cfg, /*allow_repeated=*/regime.has_value());
    const std::size_t total = count * (count - 1);
    detail::record(rep, {"difference_count", std::to_string(total), std::to_string(total_count(rep.diff_vals)),
                         total_count(rep.diff_vals) == total});

    if (below && va > ValExt(vc)) {
        const auto pred = class_partition_prediction(vc, gf, n);
        std::size_t above = 0, at = 0, under = 0;
        for (const auto& [v, k] : rep.diff_vals) {
            if (v > ValExt(pred.delta)) above += k;
            else if (v == ValExt(pred.delta)) at += k;
            else under += k;
        }
        detail::record(rep, {"class_partition",
                             "within " + pred.within_pairs.get_str() + " > " + to_string(pred.delta) + ", cross " +
                                 pred.cross_pairs.get_str() + " = " + to_string(pred.delta),
                             "above " + std::to_string(above) + ", at " + std::to_string(at) + ", below " +
                                 std::to_string(under),
                             under == 0 && Integer(above) == pred.within_pairs && Integer(at) == pred.cross_pairs});
    }

    if (at_boundary && va > ValExt(vc)) {
        const ValMultiset expected{{ValExt(Rat(0)), total}};
        detail::record(rep, {"unit_differences", detail::multiset_string(expected),
                             detail::multiset_string(rep.diff_vals), rep.diff_vals == expected});
        // differences of inverses: v(x) = v(y) = -eps and v(x - y) = 0 give v(1/x - 1/y) = 2 eps
        const Rat eps = -vc / gf.p;
        const auto inv = difference_val_multiset(reciprocal_poly(p), gf.p, cfg);
        const ValMultiset inv_expected{{ValExt(Rat(2 * eps)), total}};
        detail::record(rep, {"inverse_differences", detail::multiset_string(inv_expected),
                             detail::multiset_string(inv), inv == inv_expected});
    }

    if (regime) {
        const Rat dn = dn_sequence(vc, va, gf, n).back();
        const bool present = rep.diff_vals.contains(ValExt(dn));
        detail::record(rep, {std::string("dn_present_") + to_string(*regime), to_string(dn),
                             detail::multiset_string(rep.diff_vals), present});
    }
    return rep;
}

/// Levels 1..n_max; stops between levels once stop is requested.
inline std::vector<OracleReport> verify_levels(const GroundField& gf, const Rat& c, const Rat& a, long n_max,
                                               const OracleConfig& cfg = {}, std::stop_token stop = {}) {
    std::vector<OracleReport> out;
    for (long n = 1; n <= n_max; ++n) {
        if (stop.stop_requested()) break;
        out.push_back(verify_predictions(gf, c, a, n, cfg));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Real preimage trees of z^2 - c.
// ---------------------------------------------------------------------------

enum class RealCheckOutcome { AllRealToDepth, ComplexAtDepth, Undecided };

inline const char* to_string(RealCheckOutcome o) {
    switch (o) {
    case RealCheckOutcome::AllRealToDepth: return "AllRealToDepth";
    case RealCheckOutcome::ComplexAtDepth: return "ComplexAtDepth";
    case RealCheckOutcome::Undecided: return "Undecided";
    }
    return "?";
}

struct RealCheckResult {
    RealCheckOutcome outcome = RealCheckOutcome::AllRealToDepth;
    long depth = 0;          ///< level of the first non-real preimage, or the depth explored
    long precision_bits = 0; ///< precision of the deciding pass
};

namespace detail {

// Closed interval [lo, hi] with endpoints on the grid 2^-bits (the root
// node is exact), plus the exact value when the node is rational.
struct RealNode {
    Rat lo, hi;
    std::optional<Rat> exact;
};

inline Integer floor_rat(const Rat& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Integer ceil_rat(const Rat& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// floor(sqrt(x) * 2^bits) / 2^bits and the matching ceiling, for x >= 0.
inline Rat sqrt_down(const Rat& x, long bits) {
    const Integer scale = ipow(Integer(2), static_cast<unsigned long>(bits));
    Integer s;
    const Integer t = floor_rat(Rat(x * scale * scale));
    mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
    return rat(s, scale);
}
inline Rat sqrt_up(const Rat& x, long bits) {
    const Integer scale = ipow(Integer(2), static_cast<unsigned long>(bits));
    const Integer t = ceil_rat(Rat(x * scale * scale));
    Integer s;
    mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
    if (s * s < t) s += 1;
    return rat(s, scale);
}

inline std::optional<Rat> exact_sqrt(const Rat& x) {
    if (x < 0) return std::nullopt;
    if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
    return rat(n, d);
}

struct RealPass {
    std::optional<long> complex_level;
    bool unresolved = false;
};

inline RealPass real_pass(const Rat& c, const Rat& a, long depth, long bits) {
    RealPass out;
    std::vector<RealNode> frontier{{a, a, a}};
    for (long level = 0; level < depth; ++level) {
        std::vector<RealNode> next;
        next.reserve(frontier.size() * 2);
        for (const auto& node : frontier) {
            Rat lo = node.lo + c, hi = node.hi + c;
            std::optional<Rat> ex;
            if (node.exact) {
                ex = *node.exact + c;
                lo = hi = *ex;
            }
            if (hi < 0) {
                out.complex_level = level + 1;
                return out;
            }
            if (lo < 0) {
                out.unresolved = true;
                lo = 0;
            }
            RealNode plus{sqrt_down(lo, bits), sqrt_up(hi, bits), std::nullopt};
            if (ex) {
                if (auto r = exact_sqrt(*ex)) plus = {*r, *r, *r};
            }
            RealNode minus{Rat(-plus.hi), Rat(-plus.lo), std::nullopt};
            if (plus.exact) minus.exact = Rat(-*plus.exact);
            next.push_back(std::move(plus));
            next.push_back(std::move(minus));
        }
        frontier = std::move(next);
    }
    return out;
}

} // namespace detail

/// Explores the binary preimage tree of a under z^2 - c down to the given
/// depth with rigorous dyadic enclosures, doubling the precision up to the
/// cap while some sign c + x cannot be decided.
inline RealCheckResult real_all_real_check(long k, const Rat& c, const Rat& a, long depth, long start_bits = 32,
                                           const OracleConfig& cfg = {}) {
    require(k == 2, "real_all_real_check: only k = 2 is explored");
    require(c != 0, "real_all_real_check: c must be nonzero");
    require(depth >= 0 && start_bits >= 1, "real_all_real_check: bad depth or precision");
    for (long bits = start_bits;; bits *= 2) {
        const bool last = bits * 2 > cfg.precision_cap;
        const auto pass = detail::real_pass(c, a, depth, bits);
        if (pass.complex_level && (!pass.unresolved || last))
            return {RealCheckOutcome::ComplexAtDepth, *pass.complex_level, bits};
        if (!pass.complex_level && !pass.unresolved) return {RealCheckOutcome::AllRealToDepth, depth, bits};
        if (last) return {RealCheckOutcome::Undecided, depth, bits};
    }
}

} // namespace arboreal
