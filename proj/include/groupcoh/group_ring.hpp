#pragma once

#include <map>
#include <string>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/bigint.hpp"

namespace groupcoh {

/// Element of the integral group ring ZG, stored sparsely.
struct GroupRingElement {
    std::map<GroupElement, BigInt> terms;

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;
};

inline GroupRingElement gr_zero() { return {}; }

inline GroupRingElement gr_mono(const GroupElement& g, const BigInt& c = 1) {
    GroupRingElement r;
    if (c != 0) r.terms.emplace(g, c);
    return r;
}

inline GroupRingElement gr_one(const FiniteAbelianGroup& G) { return gr_mono(elem_identity(G)); }

inline void gr_add_term(GroupRingElement& a, const GroupElement& g, const BigInt& c) {
    if (c == 0) return;
    auto it = a.terms.find(g);
    if (it == a.terms.end()) {
        a.terms.emplace(g, c);
        return;
    }
    it->second += c;
    if (it->second == 0) a.terms.erase(it);
}

inline GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement r = a;
    for (auto& [g, c] : b.terms) gr_add_term(r, g, c);
    return r;
}

inline GroupRingElement gr_scale(const GroupRingElement& a, const BigInt& k) {
    GroupRingElement r;
    if (k == 0) return r;
    for (auto& [g, c] : a.terms) r.terms.emplace(g, c * k);
    return r;
}

inline GroupRingElement gr_mul(const FiniteAbelianGroup& G, const GroupRingElement& a,
                               const GroupRingElement& b) {
    GroupRingElement r;
    for (auto& [ga, ca] : a.terms)
        for (auto& [gb, cb] : b.terms) gr_add_term(r, elem_mul(G, ga, gb), ca * cb);
    return r;
}

/// N_i = sum_j g_i^j, the norm of the i-th cyclic factor (1-based position).
inline GroupRingElement norm_element(const FiniteAbelianGroup& G, std::size_t i) {
    GroupRingElement r;
    GroupElement gi = elem_generator(G, i);
    for (std::int64_t j = 0; j < G.moduli[i - 1]; ++j)
        gr_add_term(r, elem_pow(G, gi, j), 1);
    return r;
}

/// T_i = g_i - 1.
inline GroupRingElement tee_element(const FiniteAbelianGroup& G, std::size_t i) {
    GroupRingElement r = gr_mono(elem_generator(G, i));
    gr_add_term(r, elem_identity(G), -1);
    return r;
}

/// Augmentation ZG -> Z: sum of integer coefficients.
inline BigInt augmentation(const GroupRingElement& a) {
    BigInt s = 0;
    for (auto& [g, c] : a.terms) s += c;
    return s;
}

/// (g_i)_c = 1 + g_i + ... + g_i^{c-1}; the empty sum (c = 0) is zero.
inline GroupRingElement partial_geometric(const FiniteAbelianGroup& G, std::size_t i,
                                          std::int64_t c) {
    GroupRingElement r;
    GroupElement gi = elem_generator(G, i);
    for (std::int64_t j = 0; j < c; ++j) gr_add_term(r, elem_pow(G, gi, j), 1);
    return r;
}

} // namespace groupcoh
