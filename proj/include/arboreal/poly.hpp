#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/rational.hpp"

namespace arboreal {

/// Dense univariate polynomial, coefficient i multiplies z^i. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
template <class Coeff>
class DensePoly {
public:
    DensePoly() = default;
    explicit DensePoly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

    static DensePoly monomial(std::size_t degree, Coeff coeff = Coeff(1)) {
        std::vector<Coeff> c(degree + 1, Coeff(0));
        c[degree] = std::move(coeff);
        return DensePoly(std::move(c));
    }
    static DensePoly constant(Coeff coeff) { return DensePoly(std::vector<Coeff>{std::move(coeff)}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Coeff>& coeffs() const { return c_; }
    const Coeff& lead() const { return c_.back(); }

    Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        std::vector<Coeff> out(std::max(a.c_.size(), b.c_.size()), Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
        return DensePoly(std::move(out));
    }
    friend DensePoly operator-(const DensePoly& a, const DensePoly& b) {
        std::vector<Coeff> out(std::max(a.c_.size(), b.c_.size()), Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
        return DensePoly(std::move(out));
    }
    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Coeff> out(a.c_.size() + b.c_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return DensePoly(std::move(out));
    }
    friend DensePoly operator*(const Coeff& k, const DensePoly& a) {
        std::vector<Coeff> out = a.c_;
        for (auto& x : out) x *= k;
        return DensePoly(std::move(out));
    }
    friend bool operator==(const DensePoly&, const DensePoly&) = default;

    DensePoly pow(unsigned long e) const {
        DensePoly out = constant(Coeff(1));
        DensePoly base = *this;
        while (e > 0) {
            if (e & 1UL) out = out * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return out;
    }

    Coeff evaluate(const Coeff& x) const {
        Coeff acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// Exact quotient by a divisor known to divide this polynomial. The
    /// leading-coefficient divisions must be exact for Integer coefficients.
    DensePoly exact_div(const DensePoly& d) const {
        require(!d.is_zero(), "exact_div: division by zero polynomial");
        if (is_zero()) return {};
        require(degree() >= d.degree(), "exact_div: divisor degree too large");
        std::vector<Coeff> rem = c_;
        std::vector<Coeff> q(static_cast<std::size_t>(degree() - d.degree() + 1), Coeff(0));
        const std::size_t dd = static_cast<std::size_t>(d.degree());
        for (std::size_t k = rem.size(); k-- > dd;) {
            if (rem[k] == 0) continue;
            Coeff factor = rem[k] / d.lead();
            require(Coeff(factor * d.lead()) == rem[k], "exact_div: inexact coefficient division");
            q[k - dd] = factor;
            for (std::size_t i = 0; i <= dd; ++i) rem[k - dd + i] -= factor * d.c_[i];
        }
        for (std::size_t i = 0; i < dd && i < rem.size(); ++i)
            require(rem[i] == 0, "exact_div: nonzero remainder");
        return DensePoly(std::move(q));
    }

    /// z-adic valuation: number of trailing zero coefficients.
    std::size_t low_order() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        return k;
    }

    /// Divides by z^k, dropping the (zero) low coefficients.
    DensePoly shift_down(std::size_t k) const {
        for (std::size_t i = 0; i < k && i < c_.size(); ++i) require(c_[i] == 0, "shift_down: nonzero low term");
        if (k >= c_.size()) return {};
        return DensePoly(std::vector<Coeff>(c_.begin() + static_cast<long>(k), c_.end()));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Coeff> c_;
};

using RatPoly = DensePoly<Rat>;
using IntPoly = DensePoly<Integer>;

inline std::string to_string(const RatPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        const Rat& c = p.coeffs()[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        std::string term = c.get_str();
        if (i > 0) term = (c == 1 ? std::string() : (c == -1 ? std::string("-") : term + "*")) + "z" +
                          (i > 1 ? "^" + std::to_string(i) : std::string());
        if (!out.empty()) out += (term[0] == '-') ? " - " + term.substr(1) : " + " + term;
        else out = term;
    }
    return out;
}

/// Scales by the lcm of the denominators and divides out the content, giving
/// a primitive integer polynomial with the same roots.
inline IntPoly primitive_integer_part(const RatPoly& p) {
    require(!p.is_zero(), "primitive_integer_part: zero polynomial");
    Integer l(1);
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> ints;
    Integer g(0);
    for (const auto& c : p.coeffs()) {
        Integer v = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    for (auto& v : ints) v /= g;
    return IntPoly(std::move(ints));
}

inline RatPoly to_rat_poly(const IntPoly& p) {
    std::vector<Rat> c;
    for (const auto& x : p.coeffs()) c.emplace_back(x);
    return RatPoly(std::move(c));
}

/// Determinant of a square matrix over Z[z] by fraction-free (Bareiss)
/// elimination with row pivoting. Every division is exact.
inline IntPoly bareiss_determinant(std::vector<std::vector<IntPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return IntPoly::constant(Integer(1));
    int sign = 1;
    IntPoly prev = IntPoly::constant(Integer(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return {};
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                IntPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num.exact_div(prev);
            }
            m[i][k] = IntPoly();
        }
        prev = m[k][k];
    }
    IntPoly det = m[n - 1][n - 1];
    return sign > 0 ? det : Integer(-1) * det;
}

/// Sylvester matrix of A and B (coefficients over Z[z], as polynomials in x).
inline std::vector<std::vector<IntPoly>> sylvester_matrix(const std::vector<IntPoly>& a,
                                                          const std::vector<IntPoly>& b) {
    require(a.size() >= 2 && b.size() >= 2, "sylvester_matrix: both polynomials need positive degree");
    const std::size_t da = a.size() - 1;
    const std::size_t db = b.size() - 1;
    const std::size_t n = da + db;
    std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
    // rows hold coefficients from the leading one down
    for (std::size_t r = 0; r < db; ++r)
        for (std::size_t i = 0; i <= da; ++i) m[r][r + i] = a[da - i];
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t i = 0; i <= db; ++i) m[db + r][r + i] = b[db - i];
    return m;
}

/// Res_x(P(x), P(x + z)) as a polynomial in z; P is taken primitive integral.
inline IntPoly self_shift_resultant(const IntPoly& p) {
    require(p.degree() >= 1, "self_shift_resultant: degree must be positive");
    const std::size_t n = static_cast<std::size_t>(p.degree());
    std::vector<IntPoly> a;
    for (const auto& c : p.coeffs()) a.push_back(IntPoly::constant(c));
    // coefficient of x^j in P(x + z) is sum_{k >= j} p_k C(k, j) z^{k-j}
    std::vector<IntPoly> b(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        std::vector<Integer> zc(n - j + 1, Integer(0));
        for (std::size_t k = j; k <= n; ++k) {
            Integer binom;
            mpz_bin_uiui(binom.get_mpz_t(), k, j);
            zc[k - j] = p.coeffs()[k] * binom;
        }
        b[j] = IntPoly(std::move(zc));
    }
    return bareiss_determinant(sylvester_matrix(a, b));
}

} // namespace arboreal
