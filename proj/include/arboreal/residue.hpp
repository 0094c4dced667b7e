#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arboreal/valuation.hpp"

namespace arboreal {

/// F_q for q = p^d, d <= 4, in a polynomial basis over F_p. Elements are
/// encoded as integers 0..q-1 whose base-p digits are the coefficients
/// (constant term first).
class FiniteField {
public:
    using Elem = std::uint32_t;

    FiniteField(long p, int d = 1) : p_(p), d_(d) {
        require(is_prime(Integer(p)), "FiniteField: characteristic must be prime");
        require(d >= 1 && d <= 4, "FiniteField: degree must be in 1..4");
        q_ = 1;
        for (int i = 0; i < d; ++i) q_ *= p;
        require(q_ <= (1L << 24), "FiniteField: field too large");
        modulus_ = find_irreducible();
    }

    long p() const { return p_; }
    int degree() const { return d_; }
    long q() const { return q_; }
    const std::vector<long>& modulus() const { return modulus_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    std::vector<long> coeffs(Elem x) const {
        std::vector<long> c(static_cast<std::size_t>(d_));
        for (int i = 0; i < d_; ++i) {
            c[static_cast<std::size_t>(i)] = static_cast<long>(x % static_cast<Elem>(p_));
            x /= static_cast<Elem>(p_);
        }
        return c;
    }

    Elem from_coeffs(const std::vector<long>& c) const {
        require(static_cast<int>(c.size()) <= d_, "FiniteField: too many coefficients");
        Elem x = 0;
        for (std::size_t i = c.size(); i-- > 0;)
            x = x * static_cast<Elem>(p_) + static_cast<Elem>(mod(c[i]));
        return x;
    }

    Elem from_int(long n) const { return static_cast<Elem>(mod(n)); }

    /// Reduction of a p-integral rational.
    Elem from_rat(const Rat& x) const {
        const Integer P(p_);
        require(int_val(x.get_den(), P) == 0, "FiniteField: rational is not p-integral");
        Integer num = x.get_num() % P;
        Integer den = x.get_den() % P;
        Integer inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
        Integer r = (num * inv) % P;
        if (r < 0) r += P;
        return static_cast<Elem>(r.get_si());
    }

    Elem add(Elem a, Elem b) const {
        auto x = coeffs(a), y = coeffs(b);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i] + y[i]);
        return from_coeffs(x);
    }
    Elem neg(Elem a) const {
        auto x = coeffs(a);
        for (auto& v : x) v = mod(-v);
        return from_coeffs(x);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        const auto x = coeffs(a), y = coeffs(b);
        std::vector<long> prod(static_cast<std::size_t>(2 * d_ - 1), 0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j)
                prod[i + j] = mod(prod[i + j] + x[i] * y[j]);
        reduce(prod);
        prod.resize(static_cast<std::size_t>(d_));
        return from_coeffs(prod);
    }

    Elem pow(Elem a, long e) const {
        Elem out = one();
        for (long i = 0; i < e; ++i) out = mul(out, a);
        return out;
    }

private:
    long mod(long v) const {
        long r = v % p_;
        return r < 0 ? r + p_ : r;
    }

    // Reduce a coefficient vector modulo the monic modulus.
    void reduce(std::vector<long>& poly) const {
        const auto dd = static_cast<std::size_t>(d_);
        for (std::size_t k = poly.size(); k-- > dd;) {
            const long lead = poly[k];
            if (lead == 0) continue;
            for (std::size_t i = 0; i <= dd; ++i)
                poly[k - dd + i] = mod(poly[k - dd + i] - lead * modulus_[i]);
        }
    }

    // Remainder of a by monic b over F_p (coefficients constant term first).
    std::vector<long> poly_rem(std::vector<long> a, const std::vector<long>& b) const {
        const std::size_t db = b.size() - 1;
        for (std::size_t k = a.size(); k-- > db;) {
            const long lead = a[k];
            if (lead == 0) continue;
            for (std::size_t i = 0; i <= db; ++i) a[k - db + i] = mod(a[k - db + i] - lead * b[i]);
        }
        a.resize(db);
        return a;
    }

    // Monic polynomial of degree deg from index t (base-p digits are the
    // lower coefficients).
    std::vector<long> monic_from_index(long t, int deg) const {
        std::vector<long> c(static_cast<std::size_t>(deg + 1), 0);
        for (int i = 0; i < deg; ++i) {
            c[static_cast<std::size_t>(i)] = t % p_;
            t /= p_;
        }
        c[static_cast<std::size_t>(deg)] = 1;
        return c;
    }

    // Lexicographically first monic irreducible of degree d.
    std::vector<long> find_irreducible() const {
        if (d_ == 1) return {0, 1};
        for (long t = 0; t < q_; ++t) {
            const auto cand = monic_from_index(t, d_);
            bool irreducible = true;
            for (int k = 1; k <= d_ / 2 && irreducible; ++k) {
                long count = 1;
                for (int i = 0; i < k; ++i) count *= p_;
                for (long s = 0; s < count && irreducible; ++s) {
                    const auto rem = poly_rem(cand, monic_from_index(s, k));
                    bool zero = true;
                    for (long v : rem) zero = zero && v == 0;
                    if (zero) irreducible = false;
                }
            }
            if (irreducible) return cand;
        }
        throw precondition_error("FiniteField: no irreducible polynomial found");
    }

    long p_;
    int d_;
    long q_ = 1;
    std::vector<long> modulus_;
};

struct ResidueReport {
    long q = 0;
    long p = 0;
    int degree = 1;
    std::vector<FiniteField::Elem> orbit_of_zero; ///< 0, f(0), ..., tail then one full cycle
    long tail_length = 0;
    long cycle_length = 0;
    bool a_in_forward_orbit_of_zero = false;
    bool zero_strictly_preperiodic = false;
    bool zero_and_a_in_single_cycle_mod_m = false;
    std::optional<bool> exact_single_cycle;
};

/// Forward orbit of 0 under x -> x^ell - c_bar over F_q.
inline ResidueReport orbit_analysis(long ell, FiniteField::Elem c_bar, FiniteField::Elem a_bar,
                                    const FiniteField& field) {
    require(ell >= 2, "orbit_analysis: ell must be >= 2");
    require(ell % field.p() != 0, "orbit_analysis: wild parameters (p divides ell)");
    ResidueReport rep;
    rep.q = field.q();
    rep.p = field.p();
    rep.degree = field.degree();
    std::vector<long> first_seen(static_cast<std::size_t>(field.q()), -1);
    FiniteField::Elem x = field.zero();
    for (long i = 0;; ++i) {
        if (first_seen[x] >= 0) {
            rep.tail_length = first_seen[x];
            rep.cycle_length = i - first_seen[x];
            break;
        }
        first_seen[x] = i;
        rep.orbit_of_zero.push_back(x);
        x = field.sub(field.pow(x, ell), c_bar);
    }
    rep.a_in_forward_orbit_of_zero = first_seen[a_bar] >= 0;
    rep.zero_strictly_preperiodic = rep.tail_length >= 1;
    rep.zero_and_a_in_single_cycle_mod_m = rep.tail_length == 0 && rep.a_in_forward_orbit_of_zero;
    return rep;
}

namespace detail {

// Whether the exact orbit of x under z^ell - c provably never returns to a
// bounded set: archimedean escape (|x| >= 2 + |c|) or q-adic escape at a
// prime q of the denominator of c (v_q(x) < 0 and ell*v_q(x) < v_q(c)).
inline bool escapes(const Rat& x, const Rat& c, long ell, const std::vector<Integer>& den_primes) {
    if (abs(x) >= abs(c) + 2) return true;
    for (const auto& q : den_primes) {
        if (x == 0) break;
        const Rat vx = padic_val(x, q).value();
        const Rat vcq = c == 0 ? Rat(0) : padic_val(c, q).value();
        if (vx < 0 && ell * vx < vcq) return true;
    }
    return false;
}

inline std::vector<Integer> prime_factors(Integer n) {
    std::vector<Integer> out;
    if (n < 0) n = -n;
    for (Integer d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace detail

/// Whether 0 and a lie in one exact cycle of z^ell - c over Q. With m0 the
/// period of 0 mod p, Hensel uniqueness makes this equivalent to
/// f^{m0}(0) = 0 together with a = f^i(0) for some i < m0.
inline bool exact_cycle_check(long ell, const Rat& c, const Rat& a, long p, const ResidueReport& report) {
    const Integer P(p);
    require(is_prime(P), "exact_cycle_check: p must be prime");
    require(padic_val(c, P) >= ValExt(0) && padic_val(a, P) >= ValExt(0),
            "exact_cycle_check: c and a must be p-integral");
    require(report.tail_length == 0, "exact_cycle_check: 0 is not periodic mod p");
    require(report.zero_and_a_in_single_cycle_mod_m,
            "exact_cycle_check: 0 and a are not in a single cycle mod p");
    const auto den_primes = detail::prime_factors(c.get_den());
    std::vector<Rat> orbit{Rat(0)};
    Rat x(0);
    for (long i = 1; i <= report.cycle_length; ++i) {
        x = rpow(x, static_cast<unsigned long>(ell)) - c;
        if (x != 0 && detail::escapes(x, c, ell, den_primes)) return false;
        if (i < report.cycle_length) orbit.push_back(x);
    }
    if (x != 0) return false;
    for (const auto& y : orbit)
        if (y == a) return true;
    return false;
}

enum class TameCase { Unramified, IndexDividesL, UnramifiedSingleCycle, InfinitelyRamified };

inline const char* to_string(TameCase t) {
    switch (t) {
    case TameCase::Unramified: return "Unramified";
    case TameCase::IndexDividesL: return "IndexDividesL";
    case TameCase::UnramifiedSingleCycle: return "UnramifiedSingleCycle";
    case TameCase::InfinitelyRamified: return "InfinitelyRamified";
    }
    return "?";
}

inline TameCase tame_verdict(const ResidueReport& report, std::optional<bool> exact = std::nullopt) {
    if (!report.a_in_forward_orbit_of_zero) return TameCase::Unramified;
    if (report.zero_strictly_preperiodic) return TameCase::IndexDividesL;
    if (!exact) exact = report.exact_single_cycle;
    require(exact.has_value(), "tame_verdict: exact single-cycle flag needed in the single-cycle branch");
    return *exact ? TameCase::UnramifiedSingleCycle : TameCase::InfinitelyRamified;
}

/// Residue report over F_p for p-integral rationals c, a, with the exact
/// single-cycle flag filled in when it is needed.
inline ResidueReport residue_report(long ell, const Rat& c, const Rat& a, long p) {
    const FiniteField field(p);
    auto rep = orbit_analysis(ell, field.from_rat(c), field.from_rat(a), field);
    if (rep.zero_and_a_in_single_cycle_mod_m) rep.exact_single_cycle = exact_cycle_check(ell, c, a, p, rep);
    return rep;
}

} // namespace arboreal
