#pragma once

#include <random>
#include <string_view>
#include <vector>

#include "arboreal/newton.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/valuation.hpp"

namespace testkit {

using namespace arboreal;

inline Rat R(const char* s) { return parse_rat(s); }
inline ValExt V(std::string_view s) { return parse_val(s); }
inline ValExt V(long n, long d = 1) { return ValExt(rat(n, d)); }

/// Deterministic random rationals with small height.
class RatGen {
public:
    explicit RatGen(unsigned seed) : rng_(seed) {}

    long int_in(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rat nonzero(long height = 50) {
        long n = 0;
        while (n == 0) n = int_in(-height, height);
        return rat(n, int_in(1, height));
    }

    /// u * p^k with u a p-unit.
    Rat with_valuation(long p, long k, long height = 20) {
        Rat u(0);
        while (u == 0 || padic_val(u, Integer(p)) != ValExt(Rat(0))) u = nonzero(height);
        Rat pk = rpow(Rat(p), static_cast<unsigned long>(k < 0 ? -k : k));
        return k < 0 ? Rat(u / pk) : Rat(u * pk);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// prod (z - r_i)
inline RatPoly poly_from_roots(const std::vector<Rat>& roots) {
    RatPoly p = RatPoly::constant(Rat(1));
    for (const auto& r : roots) p = p * RatPoly(std::vector<Rat>{Rat(-r), Rat(1)});
    return p;
}

/// Valuations of the given values, counted.
inline ValMultiset val_counts(const std::vector<Rat>& xs, long p) {
    ValMultiset m;
    for (const auto& x : xs) m[padic_val(x, Integer(p))] += 1;
    return m;
}

/// Exponent of p by repeated division, independent of mpz_remove.
inline long slow_val(Integer n, long p) {
    if (n < 0) n = -n;
    long k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

} // namespace testkit
