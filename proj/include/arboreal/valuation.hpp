#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "arboreal/rational.hpp"

namespace arboreal {

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

/// Exponent of the prime p in an integer; the integer must be nonzero.
inline long int_val(Integer n, const Integer& p) {
    require(n != 0, "valuation of zero integer");
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

/// p-adic valuation of a rational, normalized so that v(p) = 1; v(0) = inf.
inline ValExt padic_val(const Rat& q, const Integer& p) {
    require(is_prime(p), "padic_val: " + p.get_str() + " is not prime");
    if (q == 0) return ValExt::infinity();
    return ValExt(Rat(int_val(q.get_num(), p) - int_val(q.get_den(), p)));
}

enum class FieldMode { tame, wild };

/// The local ground field K, described by the data the classification needs.
///
/// Wild mode: ell = p is prime, v(p) = 1 and v(K^x) = (1/e) Z.
/// Tame mode: p does not divide ell (p = 0 allowed), v(ell) = 0.
struct GroundField {
    FieldMode mode = FieldMode::tame;
    long ell = 2;
    long p = 0;
    long e = 1;
    bool mu_ell_in_K = false;
    bool k_finite = true;

    static GroundField wild(long p, long e = 1, bool mu_p_in_K = false, bool k_finite = true) {
        GroundField gf{FieldMode::wild, p, p, e, mu_p_in_K, k_finite};
        gf.validate();
        return gf;
    }
    static GroundField tame(long ell, long p, bool mu_ell_in_K = false, bool k_finite = true) {
        GroundField gf{FieldMode::tame, ell, p, 1, mu_ell_in_K, k_finite};
        gf.validate();
        return gf;
    }

    void validate() const {
        require(ell >= 2, "ell must be at least 2");
        require(e >= 1, "ramification index e must be positive");
        if (mode == FieldMode::wild) {
            require(is_prime(Integer(p)), "wild mode requires a prime p");
            require(ell == p, "wild mode requires ell = p");
        } else {
            require(p == 0 || is_prime(Integer(p)), "tame mode requires p prime or 0");
            require(p == 0 || ell % p != 0, "tame mode requires p not dividing ell");
        }
    }

    bool is_wild() const { return mode == FieldMode::wild; }

    /// v(ell): 1 in wild mode, 0 in tame mode.
    Rat v_ell() const { return is_wild() ? Rat(1) : Rat(0); }

    /// Whether x lies in v(K^x) = (1/e) Z.
    bool in_value_group(const Rat& x) const {
        Rat scaled = x * e;
        return scaled.get_den() == 1;
    }
};

/// nu_n = -ell^{n+1} / ((ell^n - 1)(ell - 1)) * v(ell), for n >= 1.
inline Rat nu(long n, const GroundField& gf) {
    require(n >= 1, "nu_n is defined for n >= 1 (nu_0 is -inf)");
    const Integer ell(gf.ell);
    const Integer num = ipow(ell, static_cast<unsigned long>(n + 1));
    const Integer den = (ipow(ell, static_cast<unsigned long>(n)) - 1) * (ell - 1);
    return Rat(-rat(num, den) * gf.v_ell());
}

/// nu_inf = -ell/(ell - 1) * v(ell).
inline Rat nu_infinity(const GroundField& gf) {
    return Rat(-rat(Integer(gf.ell), Integer(gf.ell - 1)) * gf.v_ell());
}

/// nu_n with the convention nu_0 = -inf (returned as nullopt).
inline std::optional<Rat> nu_or_minus_infinity(long n, const GroundField& gf) {
    if (n == 0) return std::nullopt;
    return nu(n, gf);
}

/// Position of v(c) on the wild threshold ladder nu_1 < nu_2 < ... < nu_inf.
struct LadderPosition {
    long n = 0;          ///< nu_{n-1} < vc <= nu_n
    bool on_rung = false; ///< vc == nu_n
};

/// Requires vc < nu_inf in wild mode. In tame mode every nu_n is 0, so the
/// answer is n = 1 for vc < 0.
inline LadderPosition ladder_position(const Rat& vc, const GroundField& gf) {
    require(vc < nu_infinity(gf), "ladder_position: vc must lie below nu_inf");
    if (!gf.is_wild()) return {1, false};
    for (long n = 1;; ++n) {
        const Rat t = nu(n, gf);
        if (vc <= t) return {n, vc == t};
    }
}

} // namespace arboreal
