#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/bar.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/group_ring.hpp"
#include "groupcoh/koszul.hpp"

namespace groupcoh {

namespace detail {

inline void check_block(const FiniteAbelianGroup& G, std::size_t r, std::size_t a, std::size_t b,
                        const std::vector<GroupElement>& alpha) {
    if (r < 1 || r > G.n()) throw IndexOutOfRange("position out of range");
    if (a < 1 || a > b || b > alpha.size()) throw IndexOutOfRange("block out of range");
}

} // namespace detail

/**
 * xi^alpha_{r,[a,b]}: the product of carries at position r over the disjoint
 * adjacent row pairs of the block, paired from the top row downwards, times
 * the group-ring prefix on positions before r. When b-a is even the lowest
 * row is left unpaired and contributes the trailing factor (g_r)_{alpha_{a,r}}
 * instead. Indices a, b are 1-based into alpha.
 */
inline GroupRingElement xi(const FiniteAbelianGroup& G, std::size_t r, std::size_t a,
                           std::size_t b, const std::vector<GroupElement>& alpha) {
    detail::check_block(G, r, a, b, alpha);
    std::int64_t m = G.moduli[r - 1];
    std::int64_t carries = 1;
    std::size_t lo = ((b - a) % 2 == 1) ? a : a + 1;
    for (std::size_t u = lo; u + 1 <= b && carries != 0; u += 2)
        carries *= carry(alpha[u].exps[r - 1], alpha[u - 1].exps[r - 1], m);
    if (carries == 0) return gr_zero();

    std::vector<std::int64_t> prefix(G.n(), 0);
    for (std::size_t pos = 0; pos + 1 < r; ++pos)
        for (std::size_t u = a; u <= b; ++u) prefix[pos] += alpha[u - 1].exps[pos];
    GroupRingElement out = gr_mono(elem_make(G, prefix), carries);
    if ((b - a) % 2 == 0)
        out = gr_mul(G, out, partial_geometric(G, r, alpha[a - 1].exps[r - 1]));
    return out;
}

/**
 * eta^alpha_{r,[a,b]}: the integer shadow of xi under augmentation; the
 * pairwise carry product alone when b-a is odd, times alpha_{a,r} when
 * b-a is even.
 */
inline std::int64_t eta(const FiniteAbelianGroup& G, std::size_t r, std::size_t a, std::size_t b,
                        const std::vector<GroupElement>& alpha) {
    detail::check_block(G, r, a, b, alpha);
    std::int64_t m = G.moduli[r - 1];
    std::int64_t out = 1;
    std::size_t lo = ((b - a) % 2 == 1) ? a : a + 1;
    for (std::size_t u = lo; u + 1 <= b && out != 0; u += 2)
        out *= carry(alpha[u].exps[r - 1], alpha[u - 1].exps[r - 1], m);
    if ((b - a) % 2 == 0) out *= alpha[a - 1].exps[r - 1];
    return out;
}

/**
 * Enumerates the index families of the chain map sum: for each l, each
 * strictly increasing position tuple r_1 < ... < r_l and each composition
 * lambda_1 + ... + lambda_l = k, reports the sign (-1)^{sum lambda_i lambda_j}
 * and the block intervals [a_u, b_u].
 */
inline void for_each_koszul_family(
    const FiniteAbelianGroup& G, std::size_t k,
    const std::function<void(const KoszulIndex&, std::int64_t,
                             const std::vector<std::pair<std::size_t, std::size_t>>&)>& fn) {
    KoszulIndex idx;
    auto rec = [&](auto&& self, std::size_t minpos, std::int64_t remaining) -> void {
        if (remaining == 0) {
            std::size_t l = idx.pairs.size();
            std::int64_t cross = 0;
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = i + 1; j < l; ++j)
                    cross += idx.pairs[i].second * idx.pairs[j].second;
            std::int64_t sign = (cross % 2 == 0) ? 1 : -1;
            std::vector<std::pair<std::size_t, std::size_t>> blocks(l);
            std::size_t after = 0; // sum of lambda_i for i > u
            for (std::size_t u = l; u-- > 0;) {
                std::size_t lam = static_cast<std::size_t>(idx.pairs[u].second);
                blocks[u] = {after + 1, after + lam};
                after += lam;
            }
            fn(idx, sign, blocks);
            return;
        }
        for (std::size_t r = minpos; r <= G.n(); ++r)
            for (std::int64_t lam = 1; lam <= remaining; ++lam) {
                idx.pairs.emplace_back(r, lam);
                self(self, r + 1, remaining - lam);
                idx.pairs.pop_back();
            }
    };
    if (k > 0) rec(rec, 1, static_cast<std::int64_t>(k));
}

/**
 * The chain map F_k from the normalized bar resolution to the Koszul-like
 * resolution, evaluated on the symbol [g^{alpha_1},...,g^{alpha_k}].
 */
inline KoszulChain chain_map_F(const FiniteAbelianGroup& G,
                               const std::vector<GroupElement>& alpha) {
    KoszulChain out;
    if (alpha.empty()) {
        koszul_chain_add(out, KoszulIndex{}, gr_one(G));
        return out;
    }
    for (auto& g : alpha) require_member(G, g);
    for_each_koszul_family(G, alpha.size(), [&](const KoszulIndex& idx, std::int64_t sign,
                                                const auto& blocks) {
        GroupRingElement coeff = gr_mono(elem_identity(G), sign);
        for (std::size_t u = 0; u < idx.pairs.size() && !coeff.is_zero(); ++u)
            coeff = gr_mul(G, coeff, xi(G, idx.pairs[u].first, blocks[u].first, blocks[u].second, alpha));
        koszul_chain_add(out, idx, coeff);
    });
    return out;
}

inline KoszulChain chain_map_F_chain(const FiniteAbelianGroup& G, const BarChain& c) {
    KoszulChain out;
    for (auto& [sym, coeff] : c.terms) {
        KoszulChain f = chain_map_F(G, sym.entries);
        for (auto& [idx, coeff2] : f.terms)
            koszul_chain_add(out, idx, gr_mul(G, coeff, coeff2));
    }
    return out;
}

namespace detail {

/// One block of the reverse chain map: alternating (..., N_r, g_r) letters.
struct GLetter {
    std::size_t position; // 1-based
    bool is_norm;
};

inline std::vector<GLetter> g_letters(const KoszulIndex& idx) {
    std::vector<GLetter> letters;
    for (auto& [r, lambda] : idx.pairs) {
        // last letter is always g_r and the letters alternate backwards
        for (std::int64_t p = 0; p < lambda; ++p) {
            bool is_norm = ((lambda - 1 - p) % 2 == 1);
            letters.push_back(GLetter{r, is_norm});
        }
    }
    return letters;
}

/**
 * Expands G_k(Phi_idx) symbol by symbol: every shuffle of the blocks with its
 * sign, every multilinear expansion of the norm letters. The sink sees raw
 * symbols, including ones containing the identity.
 */
template <typename Sink>
inline void chain_map_G_expand(const FiniteAbelianGroup& G, const KoszulIndex& idx, Sink&& sink) {
    koszul_index_validate(idx, G.n());
    auto letters = g_letters(idx);
    std::size_t k = letters.size();
    std::size_t l = idx.pairs.size();

    std::vector<std::size_t> block_size(l), block_used(l, 0);
    for (std::size_t u = 0; u < l; ++u)
        block_size[u] = static_cast<std::size_t>(idx.pairs[u].second);

    std::vector<std::size_t> word; // source letter index per target slot
    word.reserve(k);

    auto expand_word = [&]() {
        // inversions of the source-index word give the shuffle's sign
        std::int64_t inv = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (word[i] > word[j]) ++inv;
        std::int64_t sign = (inv % 2 == 0) ? 1 : -1;

        std::vector<std::size_t> norm_slots;
        for (std::size_t t = 0; t < k; ++t)
            if (letters[word[t]].is_norm) norm_slots.push_back(t);

        BarSymbol sym;
        sym.entries.assign(k, elem_identity(G));
        for (std::size_t t = 0; t < k; ++t)
            if (!letters[word[t]].is_norm) sym.entries[t] = elem_generator(G, letters[word[t]].position);

        auto odometer = [&](auto&& self, std::size_t slot) -> void {
            if (slot == norm_slots.size()) {
                sink(sym, sign);
                return;
            }
            std::size_t t = norm_slots[slot];
            std::size_t r = letters[word[t]].position;
            GroupElement gr = elem_generator(G, r);
            for (std::int64_t j = 0; j < G.moduli[r - 1]; ++j) {
                sym.entries[t] = elem_pow(G, gr, j);
                self(self, slot + 1);
            }
        };
        odometer(odometer, 0);
    };

    auto shuffle = [&](auto&& self) -> void {
        if (word.size() == k) {
            expand_word();
            return;
        }
        std::size_t base = 0;
        for (std::size_t u = 0; u < l; ++u) {
            if (block_used[u] < block_size[u]) {
                word.push_back(base + block_used[u]);
                ++block_used[u];
                self(self);
                --block_used[u];
                word.pop_back();
            }
            base += block_size[u];
        }
    };
    shuffle(shuffle);
}

} // namespace detail

/**
 * The chain map G_k from the Koszul-like resolution to the normalized bar
 * resolution: the signed shuffle sum of the alternating letter blocks, with
 * norm letters expanded multilinearly and identity symbols normalized away.
 */
inline BarChain chain_map_G(const FiniteAbelianGroup& G, const KoszulIndex& idx) {
    BarChain out;
    detail::chain_map_G_expand(G, idx, [&](const BarSymbol& sym, std::int64_t sign) {
        bar_chain_add(out, sym, gr_mono(elem_identity(G), sign));
    });
    return out;
}

/// Number of expanded symbols before normalization; a counting cross-check.
inline std::uint64_t chain_map_G_raw_count(const FiniteAbelianGroup& G, const KoszulIndex& idx) {
    std::uint64_t count = 0;
    detail::chain_map_G_expand(G, idx, [&](const BarSymbol&, std::int64_t) { ++count; });
    return count;
}

inline BarChain chain_map_G_chain(const FiniteAbelianGroup& G, const KoszulChain& c) {
    BarChain out;
    for (auto& [idx, coeff] : c.terms) {
        BarChain b = chain_map_G(G, idx);
        for (auto& [sym, coeff2] : b.terms)
            bar_chain_add(out, sym, gr_mul(G, coeff, coeff2));
    }
    return out;
}

/// Outcome of an exhaustive chain-map commutativity check.
struct ChainMapReport {
    std::vector<std::string> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

/// Checks F_{k-1} after the bar differential equals d after F_k on every
/// normalized bar basis symbol of degree <= max_degree.
inline ChainMapReport verify_chain_map_F(const FiniteAbelianGroup& G, std::size_t max_degree) {
    ChainMapReport report;
    for (std::size_t k = 1; k <= max_degree; ++k) {
        for (auto& sym : bar_basis(G, k)) {
            KoszulChain lhs = chain_map_F_chain(G, bar_diff(G, sym));
            KoszulChain rhs = koszul_diff_chain(G, chain_map_F(G, sym.entries));
            if (!(lhs == rhs)) {
                std::string desc = "degree " + std::to_string(k) + " symbol [";
                for (std::size_t i = 0; i < sym.entries.size(); ++i) {
                    if (i) desc += "|";
                    desc += elem_to_string(sym.entries[i]);
                }
                desc += "]";
                report.counterexamples.push_back(desc);
            }
        }
    }
    return report;
}

/// Checks G_{k-1} after d equals the bar differential after G_k on every
/// Koszul generator of degree <= max_degree.
inline ChainMapReport verify_chain_map_G(const FiniteAbelianGroup& G, std::size_t max_degree) {
    ChainMapReport report;
    for (std::size_t k = 1; k <= max_degree; ++k) {
        for (auto& idx : koszul_indices(G, static_cast<std::int64_t>(k))) {
            BarChain lhs = chain_map_G_chain(G, koszul_diff(G, idx));
            BarChain rhs = bar_diff_chain(G, chain_map_G(G, idx));
            if (!(lhs == rhs))
                report.counterexamples.push_back("degree " + std::to_string(k) + " generator " +
                                                 koszul_key(idx));
        }
    }
    return report;
}

} // namespace groupcoh
