#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arboreal/newton.hpp"
#include "arboreal/valuation.hpp"

namespace arboreal {

// ---------------------------------------------------------------------------
// Differences between the solutions of f(x) - f(y) = d and y.
// ---------------------------------------------------------------------------

enum class SplitCase { AllEqual, OneCloseRest, UnramifiedBoundary };

inline const char* to_string(SplitCase c) {
    switch (c) {
    case SplitCase::AllEqual: return "AllEqual";
    case SplitCase::OneCloseRest: return "OneCloseRest";
    case SplitCase::UnramifiedBoundary: return "UnramifiedBoundary";
    }
    return "?";
}

struct DiffSplit {
    SplitCase which = SplitCase::AllEqual;
    ValExt close_val;             ///< OneCloseRest only: the one closest solution
    ValExt far_val;               ///< every other solution (all of them otherwise)
    bool ground_field_member = false;

    /// Multiset of v(x - y) over the ell solutions x.
    ValMultiset multiset(long ell) const {
        ValMultiset m;
        if (which == SplitCase::OneCloseRest) {
            m[close_val] += 1;
            m[far_val] += static_cast<std::size_t>(ell - 1);
        } else {
            m[far_val] += static_cast<std::size_t>(ell);
        }
        return m;
    }
};

/// Splits on vd against the boundary ell*vy - nu_inf: at or below it all
/// ell differences have valuation vd/ell (exactly on it, in wild mode, the
/// solutions generate an unramified extension); above it one solution is
/// close and the remaining ell-1 are at vy + v(ell)/(ell-1).
inline DiffSplit difference_split(const ValExt& vd, const ValExt& vy, const GroundField& gf) {
    require(vy.is_finite(), "difference_split: v(y) must be finite");
    const Rat ell(gf.ell);
    const Rat boundary = ell * vy.value() - nu_infinity(gf);
    DiffSplit s;
    if (vd.is_finite() && vd.value() <= boundary) {
        s.which = (gf.is_wild() && vd.value() == boundary) ? SplitCase::UnramifiedBoundary
                                                           : SplitCase::AllEqual;
        s.far_val = vd / ell;
        return s;
    }
    s.which = SplitCase::OneCloseRest;
    s.close_val = vd - Rat((ell - 1) * vy.value() + gf.v_ell());
    s.far_val = ValExt(Rat(vy.value() + gf.v_ell() / (ell - 1)));
    s.ground_field_member = true;
    return s;
}

// ---------------------------------------------------------------------------
// Valuations of preimages.
// ---------------------------------------------------------------------------

/// v(alpha) = v(c) leaves the preimage valuation undetermined beyond a
/// lower bound of v(c)/ell.
struct Indeterminate {
    Rat lower_bound;
};

using PreimageVals = std::variant<ValMultiset, Indeterminate>;

inline PreimageVals preimage_valuations(const ValExt& v_alpha, const Rat& vc, const GroundField& gf) {
    const Rat ell(gf.ell);
    const ValExt vcv(vc);
    const auto count = static_cast<std::size_t>(gf.ell);
    if (v_alpha < vcv) return ValMultiset{{v_alpha / ell, count}};
    if (v_alpha > vcv) return ValMultiset{{ValExt(Rat(vc / ell)), count}};
    return Indeterminate{Rat(vc / ell)};
}

/// A per-level valuation: exact, or only a lower bound.
struct LevelVal {
    ValExt value;
    bool exact = true;
    friend bool operator==(const LevelVal&, const LevelVal&) = default;
};

struct ValOrbitReport {
    std::vector<LevelVal> levels;              ///< levels[i] is v(alpha_{i+1})
    std::optional<long> stabilization_level;   ///< first m with every later level exactly vc/ell
    std::optional<long> indeterminate_at;      ///< level n with v(alpha_n) = v(c)
    bool indeterminate = false;
};

/// Follows one preimage chain a = alpha_0, alpha_1, ... through depth levels.
/// A bound L on v(alpha) maps to an exact vc/ell when L > vc and to a bound
/// min(L, vc)/ell otherwise.
inline ValOrbitReport val_orbit(const ValExt& va, const Rat& vc, const GroundField& gf, long depth) {
    require(depth >= 0, "val_orbit: negative depth");
    const Rat ell(gf.ell);
    const ValExt target(Rat(vc / ell));
    ValOrbitReport rep;
    LevelVal cur{va, true};
    for (long n = 1; n <= depth; ++n) {
        LevelVal next;
        if (cur.exact) {
            const auto pre = preimage_valuations(cur.value, vc, gf);
            if (const auto* m = std::get_if<ValMultiset>(&pre)) {
                next = {m->begin()->first, true};
            } else {
                next = {ValExt(std::get<Indeterminate>(pre).lower_bound), false};
                if (!rep.indeterminate) rep.indeterminate_at = n - 1;
                rep.indeterminate = true;
            }
        } else if (cur.value > ValExt(vc)) {
            next = {target, true};
        } else {
            next = {min(cur.value, ValExt(vc)) / ell, false};
        }
        rep.levels.push_back(next);
        cur = next;
    }
    for (long m = depth; m >= 1; --m) {
        const auto& lv = rep.levels[static_cast<std::size_t>(m - 1)];
        if (!(lv.exact && lv.value == target)) break;
        rep.stabilization_level = m;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Closest-preimage distances q_m = v(alpha_m - alpha_{m-1}).
// ---------------------------------------------------------------------------

struct QTerm {
    Rat value;
    bool exact = true; ///< false: value is a lower bound
    bool additive = false; ///< the step producing the next term used the additive branch
    friend bool operator==(const QTerm&, const QTerm&) = default;
};

/// q_1 = vc/ell (a lower bound when va = vc/ell); then q_{m+1} = q_m/ell while
/// q_m <= vc - nu_inf, else q_m - (ell-1)vc/ell - v(ell). The step map is
/// non-decreasing, so a lower bound propagates to a lower bound.
inline std::vector<QTerm> q_sequence(const Rat& vc, const ValExt& va, const GroundField& gf, long n_max) {
    require(vc < nu_infinity(gf), "q_sequence: requires v(c) < nu_inf");
    const Rat ell(gf.ell);
    require(va >= ValExt(Rat(vc / ell)), "q_sequence: requires v(a) >= v(c)/ell");
    const Rat threshold = vc - nu_infinity(gf);
    const Rat increment = -(ell - 1) * vc / ell - gf.v_ell();
    std::vector<QTerm> out;
    QTerm q{Rat(vc / ell), va > ValExt(Rat(vc / ell)), false};
    for (long m = 1; m <= n_max; ++m) {
        q.additive = q.value > threshold;
        out.push_back(q);
        q = QTerm{q.additive ? Rat(q.value + increment) : Rat(q.value / ell), q.exact, false};
    }
    return out;
}

/// Index m of the first term that takes the additive branch (1-based).
inline std::optional<long> additive_switch_index(const std::vector<QTerm>& qs) {
    for (std::size_t i = 0; i < qs.size(); ++i)
        if (qs[i].additive) return static_cast<long>(i + 1);
    return std::nullopt;
}

/// Cutoff level: K_inf = K_n when vc < nu_n (minimal n); K_inf = K_{n+1}
/// with K_{n+1}/K_n unramified when vc = nu_n. Requires va >= vc/ell.
struct Cutoff {
    long n = 0;
    bool unramified_top = false;
    friend bool operator==(const Cutoff&, const Cutoff&) = default;
};

inline Cutoff cutoff_level(const Rat& vc, const ValExt& va, const GroundField& gf) {
    require(vc < nu_infinity(gf), "cutoff_level: requires v(c) < nu_inf");
    require(va >= ValExt(Rat(vc / gf.ell)), "cutoff_level: requires v(a) >= v(c)/ell");
    const auto pos = ladder_position(vc, gf);
    if (pos.on_rung) return {pos.n + 1, true};
    return {pos.n, false};
}

// ---------------------------------------------------------------------------
// v(d_n) for two preimage chains that split at level 1 (wild mode).
// ---------------------------------------------------------------------------

enum class DnRegime { SlightlyNegative, PositiveUnitA, EqualNonNegative };

inline const char* to_string(DnRegime r) {
    switch (r) {
    case DnRegime::SlightlyNegative: return "SlightlyNegative";
    case DnRegime::PositiveUnitA: return "PositiveUnitA";
    case DnRegime::EqualNonNegative: return "EqualNonNegative";
    }
    return "?";
}

inline std::optional<DnRegime> dn_regime(const Rat& vc, const ValExt& va, const GroundField& gf) {
    if (!gf.is_wild()) return std::nullopt;
    if (nu_infinity(gf) < vc && vc < 0 && va > ValExt(vc)) return DnRegime::SlightlyNegative;
    if (vc > 0 && va == ValExt(Rat(0))) return DnRegime::PositiveUnitA;
    if (vc >= 0 && va == ValExt(vc)) return DnRegime::EqualNonNegative;
    return std::nullopt;
}

/// v(d_1) per regime, then v(d_n) = v(d_1)/p^{n-1}. The EqualNonNegative
/// regime additionally assumes a chain whose members all have valuation v(c).
inline std::vector<Rat> dn_sequence(const Rat& vc, const ValExt& va, const GroundField& gf, long n_max) {
    require(gf.is_wild(), "dn_sequence: wild mode only");
    const auto regime = dn_regime(vc, va, gf);
    require(regime.has_value(), "dn_sequence: (v(c), v(a)) outside the three d_n regimes");
    const Rat p(gf.p);
    const Rat unit_gap = 1 / (p - 1);
    Rat d1;
    switch (*regime) {
    case DnRegime::SlightlyNegative: d1 = vc / p + unit_gap; break;
    case DnRegime::PositiveUnitA: d1 = unit_gap; break;
    case DnRegime::EqualNonNegative: d1 = vc + unit_gap; break;
    }
    std::vector<Rat> out;
    Rat d = d1;
    for (long n = 1; n <= n_max; ++n) {
        out.push_back(d);
        d /= p;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Equivalence classes v(x - y) > delta at a fixed level.
// ---------------------------------------------------------------------------

struct ClassPartitionPrediction {
    long level = 0;
    Rat delta;
    Integer class_count;
    Integer class_size;
    Integer cross_pairs;   ///< ordered pairs in distinct classes, each at exactly delta
    Integer within_pairs;  ///< ordered distinct pairs in one class, each strictly above delta
    Rat cross_pair_val;
    Rat within_pair_val_bound;
};

/// Caller vouches for v(a) > v(c).
inline ClassPartitionPrediction class_partition_prediction(const Rat& vc, const GroundField& gf, long n) {
    require(vc < nu_infinity(gf), "class_partition_prediction: requires v(c) < nu_inf");
    require(n >= 1, "class_partition_prediction: level must be >= 1");
    const Integer ell(gf.ell);
    ClassPartitionPrediction c;
    c.level = n;
    c.delta = vc / gf.ell + gf.v_ell() / (gf.ell - 1);
    c.class_count = ell;
    c.class_size = ipow(ell, static_cast<unsigned long>(n - 1));
    const Integer total = ipow(ell, static_cast<unsigned long>(n));
    c.within_pairs = ell * c.class_size * (c.class_size - 1);
    c.cross_pairs = total * (total - 1) - c.within_pairs;
    c.cross_pair_val = c.delta;
    c.within_pair_val_bound = c.delta;
    return c;
}

} // namespace arboreal
