#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "groupcoh/bigint.hpp"
#include "groupcoh/errors.hpp"

namespace groupcoh {

/**
 * A finite abelian group in invariant-factor form Z_{m_1} x ... x Z_{m_n}
 * with m_i | m_{i+1}. The trivial group is represented by an empty list.
 */
struct FiniteAbelianGroup {
    std::vector<std::int64_t> moduli;

    std::size_t n() const { return moduli.size(); }

    BigInt order() const {
        BigInt o = 1;
        for (auto m : moduli) o *= m;
        return o;
    }

    /// Group order when it fits in a machine word; all desk-scale uses do.
    std::int64_t order_small() const {
        std::int64_t o = 1;
        for (auto m : moduli) o *= m;
        return o;
    }

    friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

/// Exponent vector of g_1^{e_1} ... g_n^{e_n}, componentwise reduced.
struct GroupElement {
    std::vector<std::int64_t> exps;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

    bool is_identity() const {
        for (auto e : exps)
            if (e != 0) return false;
        return true;
    }
};

inline FiniteAbelianGroup group_new(const std::vector<std::int64_t>& moduli) {
    for (auto m : moduli)
        if (m < 2) throw InvalidModulus("modulus " + std::to_string(m) + " is smaller than 2");
    for (std::size_t i = 0; i + 1 < moduli.size(); ++i)
        if (moduli[i + 1] % moduli[i] != 0)
            throw DivisibilityViolation(std::to_string(moduli[i]) + " does not divide " +
                                        std::to_string(moduli[i + 1]));
    return FiniteAbelianGroup{moduli};
}

/**
 * Invariant factors of Z_{d_1} x ... x Z_{d_k} for arbitrary moduli >= 1,
 * via prime-power regrouping. Factors equal to 1 are dropped; the result is
 * empty for the trivial group.
 */
inline std::vector<std::int64_t> invariant_factors(const std::vector<std::int64_t>& moduli) {
    for (auto d : moduli)
        if (d < 1) throw InvalidModulus("modulus " + std::to_string(d) + " is smaller than 1");
    // prime -> exponents contributed by each cyclic factor, largest first
    std::map<std::int64_t, std::vector<int>> primes;
    std::size_t slots = 0;
    for (auto d : moduli) {
        std::int64_t x = d;
        for (std::int64_t p = 2; p * p <= x; ++p) {
            if (x % p != 0) continue;
            int e = 0;
            while (x % p == 0) { x /= p; ++e; }
            primes[p].push_back(e);
        }
        if (x > 1) primes[x].push_back(1);
    }
    for (auto& [p, es] : primes) {
        std::sort(es.begin(), es.end(), std::greater<>());
        slots = std::max(slots, es.size());
    }
    std::vector<std::int64_t> out;
    for (std::size_t j = 0; j < slots; ++j) {
        std::int64_t f = 1;
        for (auto& [p, es] : primes) {
            if (j < es.size()) {
                for (int e = 0; e < es[j]; ++e) f *= p;
            }
        }
        if (f > 1) out.push_back(f);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

inline void require_member(const FiniteAbelianGroup& G, const GroupElement& g) {
    if (g.exps.size() != G.n())
        throw GroupMismatch("element has " + std::to_string(g.exps.size()) +
                            " exponents, group has rank " + std::to_string(G.n()));
    for (std::size_t i = 0; i < G.n(); ++i)
        if (g.exps[i] < 0 || g.exps[i] >= G.moduli[i])
            throw GroupMismatch("exponent " + std::to_string(g.exps[i]) +
                                " out of range for modulus " + std::to_string(G.moduli[i]));
}

inline GroupElement elem_identity(const FiniteAbelianGroup& G) {
    return GroupElement{std::vector<std::int64_t>(G.n(), 0)};
}

inline GroupElement elem_make(const FiniteAbelianGroup& G, std::vector<std::int64_t> exps) {
    if (exps.size() != G.n()) throw GroupMismatch("exponent count does not match group rank");
    for (std::size_t i = 0; i < G.n(); ++i) {
        exps[i] %= G.moduli[i];
        if (exps[i] < 0) exps[i] += G.moduli[i];
    }
    return GroupElement{std::move(exps)};
}

/// The generator g_i (position 1-based).
inline GroupElement elem_generator(const FiniteAbelianGroup& G, std::size_t i) {
    if (i < 1 || i > G.n()) throw IndexOutOfRange("generator position out of range");
    auto g = elem_identity(G);
    g.exps[i - 1] = 1;
    return g;
}

inline GroupElement elem_mul(const FiniteAbelianGroup& G, const GroupElement& a,
                             const GroupElement& b) {
    require_member(G, a);
    require_member(G, b);
    GroupElement r = a;
    for (std::size_t i = 0; i < G.n(); ++i) r.exps[i] = (r.exps[i] + b.exps[i]) % G.moduli[i];
    return r;
}

inline GroupElement elem_pow(const FiniteAbelianGroup& G, const GroupElement& g, std::int64_t k) {
    require_member(G, g);
    GroupElement r = g;
    for (std::size_t i = 0; i < G.n(); ++i) {
        std::int64_t e = (g.exps[i] % G.moduli[i]) * (k % G.moduli[i]) % G.moduli[i];
        if (e < 0) e += G.moduli[i];
        r.exps[i] = e;
    }
    return r;
}

inline GroupElement elem_inv(const FiniteAbelianGroup& G, const GroupElement& g) {
    return elem_pow(G, g, -1);
}

/// Mixed-radix rank of an element, for dense tables; inverse of elem_unrank.
inline std::size_t elem_rank(const FiniteAbelianGroup& G, const GroupElement& g) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < G.n(); ++i)
        r = r * static_cast<std::size_t>(G.moduli[i]) + static_cast<std::size_t>(g.exps[i]);
    return r;
}

inline GroupElement elem_unrank(const FiniteAbelianGroup& G, std::size_t rank) {
    GroupElement g = elem_identity(G);
    for (std::size_t i = G.n(); i-- > 0;) {
        g.exps[i] = static_cast<std::int64_t>(rank % static_cast<std::size_t>(G.moduli[i]));
        rank /= static_cast<std::size_t>(G.moduli[i]);
    }
    return g;
}

/// All group elements in rank order.
inline std::vector<GroupElement> all_elements(const FiniteAbelianGroup& G) {
    std::size_t o = static_cast<std::size_t>(G.order_small());
    std::vector<GroupElement> out;
    out.reserve(o);
    for (std::size_t r = 0; r < o; ++r) out.push_back(elem_unrank(G, r));
    return out;
}

/// floor((s+t)/m) for naturals s, t; the carry of adding residues.
inline std::int64_t carry(std::int64_t s, std::int64_t t, std::int64_t m) {
    if (m <= 0) throw NonPositiveModulus("carry modulus must be positive");
    return (s + t) / m;
}

inline std::string elem_to_string(const GroupElement& g) {
    std::string s;
    for (std::size_t i = 0; i < g.exps.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(g.exps[i]);
    }
    return s;
}

inline GroupElement elem_from_string(const FiniteAbelianGroup& G, const std::string& s) {
    std::vector<std::int64_t> exps;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw ParseError("empty exponent in element string '" + s + "'");
        try {
            exps.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw ParseError("bad exponent '" + tok + "' in element string");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (s.empty()) exps.clear();
    if (exps.size() != G.n()) throw GroupMismatch("element string has wrong rank for group");
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] < 0 || exps[i] >= G.moduli[i])
            throw ParseError("exponent out of range in element string '" + s + "'");
    return GroupElement{std::move(exps)};
}

} // namespace groupcoh
