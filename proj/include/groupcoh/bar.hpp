#pragma once

#include <compare>
#include <map>
#include <vector>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/group_ring.hpp"

namespace groupcoh {

/// Basis symbol [h_1,...,h_k] of the bar resolution; [] in degree 0.
struct BarSymbol {
    std::vector<GroupElement> entries;

    std::size_t degree() const { return entries.size(); }

    bool contains_identity() const {
        for (auto& g : entries)
            if (g.is_identity()) return true;
        return false;
    }

    friend bool operator==(const BarSymbol&, const BarSymbol&) = default;
    friend auto operator<=>(const BarSymbol&, const BarSymbol&) = default;
};

/**
 * Homogeneous element of the normalized bar resolution B_k. Symbols that
 * contain the identity are identified with zero at insertion time.
 */
struct BarChain {
    std::map<BarSymbol, GroupRingElement> terms;

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const BarChain&, const BarChain&) = default;
};

inline void bar_chain_add(BarChain& c, const BarSymbol& sym, const GroupRingElement& coeff) {
    if (coeff.is_zero() || sym.contains_identity()) return;
    auto it = c.terms.find(sym);
    if (it == c.terms.end()) {
        c.terms.emplace(sym, coeff);
        return;
    }
    it->second = gr_add(it->second, coeff);
    if (it->second.is_zero()) c.terms.erase(it);
}

/**
 * Normalized bar differential: [g_1|...|g_k] goes to g_1 [g_2|...|g_k], then
 * the alternating merged symbols, then (-1)^k [g_1|...|g_{k-1}].
 */
inline BarChain bar_diff(const FiniteAbelianGroup& G, const BarSymbol& sym) {
    BarChain out;
    std::size_t k = sym.degree();
    if (k == 0) return out;

    BarSymbol head{std::vector<GroupElement>(sym.entries.begin() + 1, sym.entries.end())};
    bar_chain_add(out, head, gr_mono(sym.entries.front()));

    for (std::size_t u = 1; u < k; ++u) {
        BarSymbol merged;
        merged.entries.reserve(k - 1);
        for (std::size_t i = 0; i + 1 < u; ++i) merged.entries.push_back(sym.entries[i]);
        merged.entries.push_back(elem_mul(G, sym.entries[u - 1], sym.entries[u]));
        for (std::size_t i = u + 1; i < k; ++i) merged.entries.push_back(sym.entries[i]);
        bar_chain_add(out, merged, gr_mono(elem_identity(G), (u % 2 == 0) ? 1 : -1));
    }

    BarSymbol tail{std::vector<GroupElement>(sym.entries.begin(), sym.entries.end() - 1)};
    bar_chain_add(out, tail, gr_mono(elem_identity(G), (k % 2 == 0) ? 1 : -1));
    return out;
}

inline BarChain bar_diff_chain(const FiniteAbelianGroup& G, const BarChain& c) {
    BarChain out;
    for (auto& [sym, coeff] : c.terms) {
        BarChain d = bar_diff(G, sym);
        for (auto& [sym2, coeff2] : d.terms)
            bar_chain_add(out, sym2, gr_mul(G, coeff, coeff2));
    }
    return out;
}

/// All degree-k symbols over non-identity entries (the normalized basis).
inline std::vector<BarSymbol> bar_basis(const FiniteAbelianGroup& G, std::size_t k) {
    std::vector<GroupElement> nonid;
    for (auto& g : all_elements(G))
        if (!g.is_identity()) nonid.push_back(g);
    std::vector<BarSymbol> out;
    BarSymbol cur;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (auto& g : nonid) {
            cur.entries.push_back(g);
            self(self, depth + 1);
            cur.entries.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace groupcoh
