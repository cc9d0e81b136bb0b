#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/group_ring.hpp"

namespace groupcoh {

/**
 * Index of a Koszul generator Phi_{r_1^{lambda_1} ... r_l^{lambda_l}}:
 * strictly increasing positions with multiplicities lambda_i >= 1.
 */
struct KoszulIndex {
    std::vector<std::pair<std::size_t, std::int64_t>> pairs; // (position 1..n, lambda)

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (auto& [r, l] : pairs) d += l;
        return d;
    }

    friend bool operator==(const KoszulIndex&, const KoszulIndex&) = default;
    friend auto operator<=>(const KoszulIndex&, const KoszulIndex&) = default;
};

inline void koszul_index_validate(const KoszulIndex& idx, std::size_t n) {
    std::size_t prev = 0;
    for (auto& [r, l] : idx.pairs) {
        if (r < 1 || r > n) throw IndexOutOfRange("Koszul position out of range");
        if (r <= prev) throw IndexOutOfRange("Koszul positions must strictly increase");
        if (l < 1) throw IndexOutOfRange("Koszul multiplicity must be positive");
        prev = r;
    }
}

/// Canonical key "r1^l1 r2^l2 ..." with the multiplicity always written.
inline std::string koszul_key(const KoszulIndex& idx) {
    std::string s;
    for (auto& [r, l] : idx.pairs) {
        if (!s.empty()) s += ' ';
        s += std::to_string(r) + "^" + std::to_string(l);
    }
    return s;
}

inline KoszulIndex koszul_key_parse(const std::string& key) {
    KoszulIndex idx;
    std::size_t pos = 0;
    while (pos < key.size()) {
        std::size_t sp = key.find(' ', pos);
        std::string tok = key.substr(pos, sp == std::string::npos ? std::string::npos : sp - pos);
        auto caret = tok.find('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size())
            throw ParseError("bad Koszul key token '" + tok + "'");
        try {
            idx.pairs.emplace_back(static_cast<std::size_t>(std::stoull(tok.substr(0, caret))),
                                   std::stoll(tok.substr(caret + 1)));
        } catch (const std::exception&) {
            throw ParseError("bad Koszul key token '" + tok + "'");
        }
        if (sp == std::string::npos) break;
        pos = sp + 1;
    }
    std::size_t prev = 0;
    for (auto& [r, l] : idx.pairs) {
        if (r <= prev || l < 1) throw ParseError("Koszul key '" + key + "' is not canonical");
        prev = r;
    }
    return idx;
}

/// Homogeneous element of K_m: sparse ZG-combination of Koszul generators.
struct KoszulChain {
    std::map<KoszulIndex, GroupRingElement> terms;

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const KoszulChain&, const KoszulChain&) = default;
};

inline void koszul_chain_add(KoszulChain& c, const KoszulIndex& idx, const GroupRingElement& coeff) {
    if (coeff.is_zero()) return;
    auto it = c.terms.find(idx);
    if (it == c.terms.end()) {
        c.terms.emplace(idx, coeff);
        return;
    }
    it->second = gr_add(it->second, coeff);
    if (it->second.is_zero()) c.terms.erase(it);
}

/**
 * Differential of a Koszul generator: the position with multiplicity lambda
 * contributes (-1)^{sum of earlier multiplicities} E Phi_{... lambda-1 ...}
 * where E = N_r for lambda even and E = T_r for lambda odd.
 */
inline KoszulChain koszul_diff(const FiniteAbelianGroup& G, const KoszulIndex& idx) {
    koszul_index_validate(idx, G.n());
    KoszulChain out;
    std::int64_t prior = 0;
    for (std::size_t u = 0; u < idx.pairs.size(); ++u) {
        auto [r, lambda] = idx.pairs[u];
        GroupRingElement e = (lambda % 2 == 0) ? norm_element(G, r) : tee_element(G, r);
        if (prior % 2 != 0) e = gr_scale(e, -1);
        KoszulIndex lower = idx;
        if (lambda == 1)
            lower.pairs.erase(lower.pairs.begin() + static_cast<std::ptrdiff_t>(u));
        else
            lower.pairs[u].second = lambda - 1;
        koszul_chain_add(out, lower, e);
        prior += lambda;
    }
    return out;
}

inline KoszulChain koszul_diff_chain(const FiniteAbelianGroup& G, const KoszulChain& c) {
    KoszulChain out;
    for (auto& [idx, coeff] : c.terms) {
        KoszulChain d = koszul_diff(G, idx);
        for (auto& [idx2, coeff2] : d.terms)
            koszul_chain_add(out, idx2, gr_mul(G, coeff, coeff2));
    }
    return out;
}

/// All Koszul indices of the given degree, in canonical order.
inline std::vector<KoszulIndex> koszul_indices(const FiniteAbelianGroup& G, std::int64_t degree) {
    std::vector<KoszulIndex> out;
    KoszulIndex cur;
    auto rec = [&](auto&& self, std::size_t minpos, std::int64_t remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t r = minpos; r <= G.n(); ++r)
            for (std::int64_t l = 1; l <= remaining; ++l) {
                cur.pairs.emplace_back(r, l);
                self(self, r + 1, remaining - l);
                cur.pairs.pop_back();
            }
    };
    if (degree == 0) return {KoszulIndex{}};
    rec(rec, 1, degree);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace groupcoh
