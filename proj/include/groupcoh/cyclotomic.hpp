#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "groupcoh/bigint.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/phase.hpp"

namespace groupcoh {

/**
 * An exact element of Z[zeta_E] stored as Sum_j counts[j] * zeta_E^j with
 * residues j in [0, E). No explicit zero entries are kept.
 */
struct CyclotomicSum {
    std::int64_t order{1};
    std::map<std::int64_t, BigInt> counts;
};

inline CyclotomicSum cyclo_new(std::int64_t order) {
    if (order <= 0) throw NonPositiveModulus("cyclotomic order must be positive");
    return CyclotomicSum{order, {}};
}

inline void cyclo_add(CyclotomicSum& s, std::int64_t residue, const BigInt& count) {
    residue %= s.order;
    if (residue < 0) residue += s.order;
    auto it = s.counts.find(residue);
    if (it == s.counts.end()) {
        if (count != 0) s.counts.emplace(residue, count);
        return;
    }
    it->second += count;
    if (it->second == 0) s.counts.erase(it);
}

/// Adds count at the residue of phase p; requires den(p) | order.
inline void cyclo_add_phase(CyclotomicSum& s, const PhaseExponent& p, const BigInt& count) {
    if (s.order % p.den != 0)
        throw DegreeMismatch("phase denominator does not divide cyclotomic order");
    cyclo_add(s, p.num * (s.order / p.den), count);
}

namespace detail {

// polynomials as coefficient vectors, index = degree, no trailing zeros
inline void poly_trim(std::vector<BigInt>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Exact division by a monic divisor; quotient returned, remainder must be 0.
inline std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    poly_trim(num);
    std::vector<BigInt> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, BigInt(0));
    while (num.size() >= den.size() && !num.empty()) {
        BigInt c = num.back();
        std::size_t shift = num.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        poly_trim(num);
    }
    if (!num.empty()) throw NonIntegral("cyclotomic division left a remainder");
    return q;
}

/// Remainder of p modulo a monic divisor.
inline std::vector<BigInt> poly_mod(std::vector<BigInt> p, const std::vector<BigInt>& den) {
    poly_trim(p);
    while (p.size() >= den.size() && !p.empty()) {
        BigInt c = p.back();
        std::size_t shift = p.size() - den.size();
        for (std::size_t i = 0; i < den.size(); ++i) p[shift + i] -= c * den[i];
        poly_trim(p);
    }
    return p;
}

} // namespace detail

/**
 * The E-th cyclotomic polynomial, computed by iterated exact division of
 * x^E - 1 by Phi_e over the proper divisors e | E.
 */
inline std::vector<BigInt> cyclotomic_polynomial(std::int64_t E) {
    if (E <= 0) throw NonPositiveModulus("cyclotomic index must be positive");
    std::map<std::int64_t, std::vector<BigInt>> phi;
    for (std::int64_t e = 1; e <= E; ++e) {
        if (E % e != 0) continue;
        std::vector<BigInt> num(static_cast<std::size_t>(e) + 1, BigInt(0));
        num[0] = -1;
        num[static_cast<std::size_t>(e)] = 1;
        for (auto& [d, pd] : phi)
            if (e % d == 0) num = detail::poly_div_exact(std::move(num), pd);
        phi[e] = std::move(num);
    }
    return phi[E];
}

/**
 * If s equals a rational integer inside Z[zeta_E], returns it; otherwise
 * nullopt. Decided by reducing modulo Phi_E and checking for a constant.
 */
inline std::optional<BigInt> cyclo_as_integer(const CyclotomicSum& s) {
    std::vector<BigInt> p(static_cast<std::size_t>(s.order), BigInt(0));
    if (p.empty()) p.resize(1, BigInt(0));
    for (auto& [j, c] : s.counts) p[static_cast<std::size_t>(j)] = c;
    auto rem = detail::poly_mod(std::move(p), cyclotomic_polynomial(s.order));
    if (rem.empty()) return BigInt(0);
    if (rem.size() == 1) return rem[0];
    return std::nullopt;
}

inline bool cyclo_equals_integer(const CyclotomicSum& s, const BigInt& n) {
    auto v = cyclo_as_integer(s);
    return v.has_value() && *v == n;
}

} // namespace groupcoh
