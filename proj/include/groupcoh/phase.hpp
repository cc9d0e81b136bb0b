#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "groupcoh/bigint.hpp"
#include "groupcoh/errors.hpp"

namespace groupcoh {

/**
 * An element of Q/Z in canonical reduced form: 0 <= num < den, gcd(num,den)=1.
 * Interpreted as the root of unity exp(2*pi*i*num/den); addition here is
 * multiplication of roots of unity.
 */
struct PhaseExponent {
    std::int64_t num{0};
    std::int64_t den{1};

    bool is_zero() const { return num == 0; }

    friend bool operator==(const PhaseExponent&, const PhaseExponent&) = default;

    // value order; denominators stay desk-scale so the products cannot overflow
    friend bool operator<(const PhaseExponent& a, const PhaseExponent& b) {
        return a.num * b.den < b.num * a.den;
    }
};

inline PhaseExponent phase_make(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw NonPositiveModulus("phase denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    std::int64_t g = std::gcd(num, den);
    return PhaseExponent{num / g, den / g};
}

inline PhaseExponent phase_zero() { return PhaseExponent{0, 1}; }

/// The phase of zeta_m^a, i.e. a/m reduced into [0,1).
inline PhaseExponent phase_zeta(std::int64_t m, std::int64_t a) { return phase_make(a, m); }

inline PhaseExponent phase_add(const PhaseExponent& p, const PhaseExponent& q) {
    std::int64_t l = std::lcm(p.den, q.den);
    return phase_make(p.num * (l / p.den) + q.num * (l / q.den), l);
}

inline PhaseExponent phase_neg(const PhaseExponent& p) { return phase_make(-p.num, p.den); }

inline PhaseExponent phase_sub(const PhaseExponent& p, const PhaseExponent& q) {
    return phase_add(p, phase_neg(q));
}

inline PhaseExponent phase_scale(const PhaseExponent& p, std::int64_t k) {
    k %= p.den;
    return phase_make(p.num * k, p.den);
}

inline PhaseExponent phase_scale(const PhaseExponent& p, const BigInt& k) {
    return phase_scale(p, static_cast<std::int64_t>(k % p.den));
}

inline std::string phase_to_string(const PhaseExponent& p) {
    return std::to_string(p.num) + "/" + std::to_string(p.den);
}

inline PhaseExponent phase_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
        throw ParseError("phase must be written num/den, got '" + s + "'");
    std::int64_t num, den;
    try {
        num = std::stoll(s.substr(0, slash));
        den = std::stoll(s.substr(slash + 1));
    } catch (const std::exception&) {
        throw ParseError("bad phase string '" + s + "'");
    }
    if (den <= 0) throw ParseError("phase denominator must be positive in '" + s + "'");
    return phase_make(num, den);
}

} // namespace groupcoh
