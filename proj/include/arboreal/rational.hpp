#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "arboreal/errors.hpp"

namespace arboreal {

using Integer = mpz_class;
using Rat = mpq_class;

/// Builds a canonical rational num/den.
inline Rat rat(long num, long den = 1) {
    require(den != 0, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const Integer& num, const Integer& den = 1) {
    require(den != 0, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Always "num/den", also for integers, so the wire format is uniform.
inline std::string to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "num/den" or "num". Throws precondition_error on malformed input.
inline Rat parse_rat(std::string_view text) {
    auto valid_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string_view s) {
        return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || (den[0] == '-'))
        throw precondition_error("malformed rational '" + std::string(text) + "'");
    Integer n(std::string(strip_plus(num)));
    Integer d(std::string(strip_plus(den)));
    require(d != 0, "rational with zero denominator '" + std::string(text) + "'");
    return rat(n, d);
}

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline Rat rpow(const Rat& base, unsigned long exp) {
    Rat out(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
    out.canonicalize();
    return out;
}

inline Rat abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

/// A valuation value: a finite rational or +infinity (the valuation of 0).
class ValExt {
public:
    ValExt() = default; // infinity
    ValExt(const Rat& v) : value_(v) {}
    ValExt(long v) : value_(Rat(v)) {}

    static ValExt infinity() { return ValExt(); }

    bool is_finite() const { return value_.has_value(); }
    bool is_infinite() const { return !value_.has_value(); }

    /// Precondition: finite.
    const Rat& value() const {
        require(is_finite(), "finite valuation expected, got inf");
        return *value_;
    }

    friend ValExt operator+(const ValExt& a, const ValExt& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return ValExt(Rat(*a.value_ + *b.value_));
    }
    friend ValExt operator-(const ValExt& a, const Rat& b) {
        if (a.is_infinite()) return infinity();
        return ValExt(Rat(*a.value_ - b));
    }
    friend ValExt operator*(const Rat& k, const ValExt& a) {
        require(k > 0, "valuations scale by positive rationals only");
        if (a.is_infinite()) return infinity();
        return ValExt(Rat(k * *a.value_));
    }
    friend ValExt operator/(const ValExt& a, const Rat& k) {
        require(k > 0, "valuations scale by positive rationals only");
        if (a.is_infinite()) return infinity();
        return ValExt(Rat(*a.value_ / k));
    }

    friend bool operator==(const ValExt& a, const ValExt& b) {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
        return *a.value_ == *b.value_;
    }
    friend std::strong_ordering operator<=>(const ValExt& a, const ValExt& b) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        if (a.is_infinite()) return std::strong_ordering::greater;
        if (b.is_infinite()) return std::strong_ordering::less;
        const int c = cmp(*a.value_, *b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    std::optional<Rat> value_;
};

inline ValExt min(const ValExt& a, const ValExt& b) { return a <= b ? a : b; }

inline std::string to_string(const ValExt& v) {
    return v.is_finite() ? to_string(v.value()) : std::string("inf");
}

/// "inf" or a rational.
inline ValExt parse_val(std::string_view text) {
    if (text == "inf" || text == "+inf" || text == "oo") return ValExt::infinity();
    return ValExt(parse_rat(text));
}

inline std::ostream& operator<<(std::ostream& os, const ValExt& v) { return os << to_string(v); }

} // namespace arboreal
