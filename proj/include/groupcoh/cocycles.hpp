#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/bigint.hpp"
#include "groupcoh/chain_maps.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/koszul.hpp"
#include "groupcoh/matrix.hpp"
#include "groupcoh/phase.hpp"

namespace groupcoh {

inline constexpr std::uint64_t kDefaultTableBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultMatrixBudget = 1'000'000;

/**
 * A cocycle representative on the Koszul side: one reduced coefficient
 * a in [0, m_{r_1}) per degree-k index whose leading multiplicity is odd.
 * Indices with even leading multiplicity carry the forced value 1 and may
 * not appear.
 */
struct CocycleSpec {
    FiniteAbelianGroup group;
    std::int64_t degree{1};
    std::map<KoszulIndex, std::int64_t> coeffs;
};

inline bool koszul_leading_odd(const KoszulIndex& idx) {
    return !idx.pairs.empty() && idx.pairs.front().second % 2 == 1;
}

inline void cocycle_spec_validate(const CocycleSpec& spec) {
    if (spec.degree < 1) throw DegreeMismatch("cocycle degree must be at least 1");
    for (auto& [idx, a] : spec.coeffs) {
        koszul_index_validate(idx, spec.group.n());
        if (idx.degree() != spec.degree)
            throw DegreeMismatch("coefficient key " + koszul_key(idx) + " has wrong degree");
        if (!koszul_leading_odd(idx))
            throw ParseError("coefficient key " + koszul_key(idx) +
                             " has even leading multiplicity; its value is forced");
        std::int64_t m = spec.group.moduli[idx.pairs.front().first - 1];
        if (a < 0 || a >= m)
            throw ParseError("coefficient for " + koszul_key(idx) + " out of range [0," +
                             std::to_string(m) + ")");
    }
}

/// Degree-k Koszul indices with odd leading multiplicity: the free keys.
inline std::vector<KoszulIndex> cocycle_keys(const FiniteAbelianGroup& G, std::int64_t degree) {
    std::vector<KoszulIndex> keys;
    for (auto& idx : koszul_indices(G, degree))
        if (koszul_leading_odd(idx)) keys.push_back(idx);
    return keys;
}

/**
 * All representatives of H^k: every assignment of reduced coefficients over
 * the free keys. Zero coefficients are stored implicitly (omitted).
 */
inline std::vector<CocycleSpec> enumerate_representatives(const FiniteAbelianGroup& G,
                                                          std::int64_t degree) {
    if (degree < 1) throw DegreeMismatch("cocycle degree must be at least 1");
    auto keys = cocycle_keys(G, degree);
    std::vector<CocycleSpec> out;
    std::vector<std::int64_t> values(keys.size(), 0);
    while (true) {
        CocycleSpec spec{G, degree, {}};
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (values[i] != 0) spec.coeffs.emplace(keys[i], values[i]);
        out.push_back(std::move(spec));
        std::size_t i = 0;
        for (; i < keys.size(); ++i) {
            std::int64_t m = G.moduli[keys[i].pairs.front().first - 1];
            if (++values[i] < m) break;
            values[i] = 0;
        }
        if (i == keys.size()) break;
    }
    return out;
}

/// Block intervals [a_u, b_u] of an index: a_u = sum_{i>u} lambda_i + 1,
/// b_u = sum_{i>=u} lambda_i.
inline std::vector<std::pair<std::size_t, std::size_t>> koszul_blocks(const KoszulIndex& idx) {
    std::size_t l = idx.pairs.size();
    std::vector<std::pair<std::size_t, std::size_t>> blocks(l);
    std::size_t after = 0;
    for (std::size_t u = l; u-- > 0;) {
        std::size_t lam = static_cast<std::size_t>(idx.pairs[u].second);
        blocks[u] = {after + 1, after + lam};
        after += lam;
    }
    return blocks;
}

inline std::int64_t koszul_cross_sign(const KoszulIndex& idx) {
    std::int64_t cross = 0;
    for (std::size_t i = 0; i < idx.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < idx.pairs.size(); ++j)
            cross += idx.pairs[i].second * idx.pairs[j].second;
    return (cross % 2 == 0) ? 1 : -1;
}

/**
 * The unified normalized k-cocycle formula: for each stored key the phase
 * gains sign * eta-product * a / m_{r_1}.
 */
inline PhaseExponent eval_cocycle(const CocycleSpec& spec, const std::vector<GroupElement>& args) {
    if (static_cast<std::int64_t>(args.size()) != spec.degree)
        throw DegreeMismatch("argument count does not match cocycle degree");
    for (auto& g : args) require_member(spec.group, g);
    PhaseExponent phase = phase_zero();
    for (auto& [idx, a] : spec.coeffs) {
        if (a == 0) continue;
        auto blocks = koszul_blocks(idx);
        std::int64_t e = koszul_cross_sign(idx);
        for (std::size_t u = 0; u < idx.pairs.size() && e != 0; ++u)
            e *= eta(spec.group, idx.pairs[u].first, blocks[u].first, blocks[u].second, args);
        if (e == 0) continue;
        std::int64_t m = spec.group.moduli[idx.pairs.front().first - 1];
        phase = phase_add(phase, phase_zeta(m, (e % m) * (a % m)));
    }
    return phase;
}

/**
 * Pairs the Koszul cocycle f of the representative with a chain: group-ring
 * coefficients act through their augmentation, f(Phi_key) = a_key / m_{r_1}
 * on odd-leading keys and 0 on even-leading ones.
 */
inline PhaseExponent eval_koszul_pairing(const CocycleSpec& spec, const KoszulChain& chain) {
    PhaseExponent phase = phase_zero();
    for (auto& [idx, coeff] : chain.terms) {
        if (idx.degree() != spec.degree)
            throw DegreeMismatch("chain degree does not match cocycle degree");
        if (!koszul_leading_odd(idx)) continue;
        auto it = spec.coeffs.find(idx);
        if (it == spec.coeffs.end() || it->second == 0) continue;
        std::int64_t m = spec.group.moduli[idx.pairs.front().first - 1];
        PhaseExponent value = phase_zeta(m, it->second);
        phase = phase_add(phase, phase_scale(value, augmentation(coeff)));
    }
    return phase;
}

/// Dense table of a Q/Z-valued k-cochain over all of G^k.
struct CochainTable {
    FiniteAbelianGroup group;
    std::int64_t degree{0};
    std::vector<PhaseExponent> values;
};

inline std::uint64_t tuple_count(const FiniteAbelianGroup& G, std::int64_t degree,
                                 std::uint64_t budget) {
    std::uint64_t count = 1;
    std::uint64_t order = static_cast<std::uint64_t>(G.order_small());
    for (std::int64_t i = 0; i < degree; ++i) {
        if (order != 0 && count > budget / order)
            throw BudgetExceeded("cochain table would exceed the entry budget");
        count *= order;
    }
    if (count > budget) throw BudgetExceeded("cochain table would exceed the entry budget");
    return count;
}

inline CochainTable cochain_table_new(const FiniteAbelianGroup& G, std::int64_t degree,
                                      std::uint64_t budget = kDefaultTableBudget) {
    CochainTable t{G, degree, {}};
    t.values.assign(tuple_count(G, degree, budget), phase_zero());
    return t;
}

inline std::size_t tuple_rank(const FiniteAbelianGroup& G,
                              const std::vector<GroupElement>& args) {
    std::size_t order = static_cast<std::size_t>(G.order_small());
    std::size_t r = 0;
    for (auto& g : args) r = r * order + elem_rank(G, g);
    return r;
}

inline std::vector<GroupElement> tuple_unrank(const FiniteAbelianGroup& G, std::int64_t degree,
                                              std::size_t rank) {
    std::size_t order = static_cast<std::size_t>(G.order_small());
    std::vector<GroupElement> args(static_cast<std::size_t>(degree));
    for (std::size_t i = args.size(); i-- > 0;) {
        args[i] = elem_unrank(G, rank % order);
        rank /= order;
    }
    return args;
}

inline CochainTable table_from_spec(const CocycleSpec& spec,
                                    std::uint64_t budget = kDefaultTableBudget) {
    cocycle_spec_validate(spec);
    CochainTable t = cochain_table_new(spec.group, spec.degree, budget);
    for (std::size_t r = 0; r < t.values.size(); ++r)
        t.values[r] = eval_cocycle(spec, tuple_unrank(spec.group, spec.degree, r));
    return t;
}

/**
 * The coboundary of a (k-1)-table: (dh)(g_1,...,g_k) alternates the k+1
 * face evaluations with trivial coefficients action.
 */
inline CochainTable coboundary(const CochainTable& h,
                               std::uint64_t budget = kDefaultTableBudget) {
    const FiniteAbelianGroup& G = h.group;
    CochainTable out = cochain_table_new(G, h.degree + 1, budget);
    for (std::size_t r = 0; r < out.values.size(); ++r) {
        auto args = tuple_unrank(G, out.degree, r);
        PhaseExponent v = phase_zero();
        std::vector<GroupElement> face(args.begin() + 1, args.end());
        v = phase_add(v, h.values[tuple_rank(G, face)]);
        std::int64_t sign = -1;
        for (std::size_t u = 0; u + 1 < args.size(); ++u) {
            face = args;
            face[u] = elem_mul(G, args[u], args[u + 1]);
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(u) + 1);
            PhaseExponent f = h.values[tuple_rank(G, face)];
            v = (sign > 0) ? phase_add(v, f) : phase_sub(v, f);
            sign = -sign;
        }
        face.assign(args.begin(), args.end() - 1);
        PhaseExponent f = h.values[tuple_rank(G, face)];
        v = (sign > 0) ? phase_add(v, f) : phase_sub(v, f);
        out.values[r] = v;
    }
    return out;
}

inline bool table_is_normalized(const CochainTable& t) {
    for (std::size_t r = 0; r < t.values.size(); ++r) {
        if (t.values[r].is_zero()) continue;
        auto args = tuple_unrank(t.group, t.degree, r);
        for (auto& g : args)
            if (g.is_identity()) return false;
    }
    return true;
}

/// True iff the table is normalized and its coboundary vanishes identically.
inline bool is_cocycle(const CochainTable& t, std::uint64_t budget = kDefaultTableBudget) {
    if (!table_is_normalized(t)) return false;
    const FiniteAbelianGroup& G = t.group;
    std::uint64_t count = tuple_count(G, t.degree + 1, budget);
    for (std::size_t r = 0; r < count; ++r) {
        auto args = tuple_unrank(G, t.degree + 1, r);
        PhaseExponent v = phase_zero();
        std::vector<GroupElement> face(args.begin() + 1, args.end());
        v = phase_add(v, t.values[tuple_rank(G, face)]);
        std::int64_t sign = -1;
        for (std::size_t u = 0; u + 1 < args.size(); ++u) {
            face = args;
            face[u] = elem_mul(G, args[u], args[u + 1]);
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(u) + 1);
            PhaseExponent f = t.values[tuple_rank(G, face)];
            v = (sign > 0) ? phase_add(v, f) : phase_sub(v, f);
            sign = -sign;
        }
        face.assign(args.begin(), args.end() - 1);
        PhaseExponent f = t.values[tuple_rank(G, face)];
        v = (sign > 0) ? phase_add(v, f) : phase_sub(v, f);
        if (!v.is_zero()) return false;
    }
    return true;
}

namespace detail {

/// Tuples over non-identity elements in odometer order, as flat indices.
inline std::uint64_t normalized_tuple_count(const FiniteAbelianGroup& G, std::int64_t degree) {
    std::uint64_t base = static_cast<std::uint64_t>(G.order_small()) - 1;
    std::uint64_t c = 1;
    for (std::int64_t i = 0; i < degree; ++i) c *= base;
    return c;
}

inline std::vector<GroupElement> normalized_tuple_unrank(const FiniteAbelianGroup& G,
                                                         std::int64_t degree, std::uint64_t rank) {
    std::uint64_t base = static_cast<std::uint64_t>(G.order_small()) - 1;
    std::vector<GroupElement> args(static_cast<std::size_t>(degree));
    for (std::size_t i = args.size(); i-- > 0;) {
        args[i] = elem_unrank(G, static_cast<std::size_t>(rank % base) + 1);
        rank /= base;
    }
    return args;
}

inline std::uint64_t normalized_tuple_rank(const FiniteAbelianGroup& G,
                                           const std::vector<GroupElement>& args) {
    std::uint64_t base = static_cast<std::uint64_t>(G.order_small()) - 1;
    std::uint64_t r = 0;
    for (auto& g : args) r = r * base + (elem_rank(G, g) - 1);
    return r;
}

/**
 * Integer matrix of the normalized coboundary C^j -> C^{j+1}: rows are
 * (j+1)-tuples, columns are j-tuples, entries the alternating face signs.
 * Faces containing the identity are dropped.
 */
inline IntegerMatrix normalized_delta_matrix(const FiniteAbelianGroup& G, std::int64_t j,
                                             std::uint64_t budget) {
    std::uint64_t rows = normalized_tuple_count(G, j + 1);
    std::uint64_t cols = normalized_tuple_count(G, j);
    if (cols != 0 && rows > budget / std::max<std::uint64_t>(cols, 1))
        throw BudgetExceeded("coboundary matrix would exceed the entry budget");
    IntegerMatrix M(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::uint64_t r = 0; r < rows; ++r) {
        auto args = normalized_tuple_unrank(G, j + 1, r);
        std::vector<GroupElement> face(args.begin() + 1, args.end());
        M.at(static_cast<std::size_t>(r), static_cast<std::size_t>(normalized_tuple_rank(G, face))) += 1;
        std::int64_t sign = -1;
        for (std::size_t u = 0; u + 1 < args.size(); ++u) {
            face = args;
            face[u] = elem_mul(G, args[u], args[u + 1]);
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(u) + 1);
            if (!face[u].is_identity())
                M.at(static_cast<std::size_t>(r),
                     static_cast<std::size_t>(normalized_tuple_rank(G, face))) += sign;
            sign = -sign;
        }
        face.assign(args.begin(), args.end() - 1);
        M.at(static_cast<std::size_t>(r), static_cast<std::size_t>(normalized_tuple_rank(G, face))) += sign;
    }
    return M;
}

} // namespace detail

/**
 * Decides whether a cocycle table is a coboundary over Q/Z: with U M V = S
 * for the coboundary matrix M into degree k, the table is a coboundary iff
 * the components of U * table past the rank vanish in Q/Z.
 */
inline bool is_coboundary(const CochainTable& t, std::uint64_t budget = kDefaultMatrixBudget) {
    if (t.degree < 1) throw DegreeMismatch("coboundary membership needs degree >= 1");
    if (!is_cocycle(t)) throw NotACocycle("table is not a cocycle");
    const FiniteAbelianGroup& G = t.group;
    IntegerMatrix M = detail::normalized_delta_matrix(G, t.degree - 1, budget);
    SmithNormalForm f = smith_normal_form(M);

    std::uint64_t rows = detail::normalized_tuple_count(G, t.degree);
    std::vector<BigRational> tv(static_cast<std::size_t>(rows));
    for (std::uint64_t r = 0; r < rows; ++r) {
        auto args = detail::normalized_tuple_unrank(G, t.degree, r);
        const PhaseExponent& p = t.values[tuple_rank(G, args)];
        tv[static_cast<std::size_t>(r)] = BigRational(p.num, p.den);
    }
    for (std::size_t i = f.rank; i < f.U.rows; ++i) {
        BigRational acc = 0;
        for (std::size_t j = 0; j < f.U.cols; ++j) {
            if (f.U.at(i, j) == 0) continue;
            acc += BigRational(f.U.at(i, j)) * tv[j];
        }
        if (denominator(acc) != 1) return false;
    }
    return true;
}

/// Binomial coefficient with the usual conventions for small arguments.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

struct CohomologyOrder {
    BigInt order;
    // one (modulus, exponent) entry per position r
    std::vector<std::pair<std::int64_t, std::int64_t>> factors;
};

/// |H^k(G, k*)| = prod_r m_r^{N_{k,r}} with the alternating binomial exponent.
inline CohomologyOrder cohomology_order_closed(const FiniteAbelianGroup& G, std::int64_t k) {
    if (k < 1) throw DegreeMismatch("cohomology degree must be at least 1");
    CohomologyOrder res;
    res.order = 1;
    std::int64_t n = static_cast<std::int64_t>(G.n());
    for (std::int64_t r = 1; r <= n; ++r) {
        BigInt e = 0;
        for (std::int64_t j = 1; j <= k; ++j) {
            BigInt term = binomial(n - r + j - 1, j - 1);
            e += ((k + j) % 2 == 0) ? term : -term;
        }
        std::int64_t ei = static_cast<std::int64_t>(e);
        res.factors.emplace_back(G.moduli[static_cast<std::size_t>(r - 1)], ei);
        res.order *= big_pow(BigInt(G.moduli[static_cast<std::size_t>(r - 1)]), ei);
    }
    return res;
}

/**
 * |H^k(G, k*)| by an independent route: the torsion of H^{k+1}(G, Z) on
 * normalized integer cochains, computed from Smith normal forms.
 */
inline BigInt cohomology_order_bruteforce(const FiniteAbelianGroup& G, std::int64_t k,
                                          std::uint64_t budget = kDefaultMatrixBudget) {
    if (k < 1) throw DegreeMismatch("cohomology degree must be at least 1");
    std::uint64_t guard = detail::normalized_tuple_count(G, k + 2);
    if (guard > budget) throw BudgetExceeded("brute-force cohomology exceeds the matrix budget");

    IntegerMatrix M2 = detail::normalized_delta_matrix(G, k + 1, budget);
    IntegerMatrix M1 = detail::normalized_delta_matrix(G, k, budget);

    SmithNormalForm f2 = smith_normal_form(M2);
    std::size_t t = M2.cols - f2.rank; // dim of the kernel lattice
    IntegerMatrix K(M2.cols, t);
    for (std::size_t i = 0; i < M2.cols; ++i)
        for (std::size_t j = 0; j < t; ++j) K.at(i, j) = f2.V.at(i, f2.rank + j);

    if (t == 0) {
        for (auto& e : M1.entries)
            if (e != 0) throw Error("image does not lie in the kernel");
        return 1;
    }

    // solve K * Y = M1 exactly; solutions exist because d compose d = 0
    SmithNormalForm fk = smith_normal_form(K);
    if (fk.rank != t) throw Error("kernel basis is not full column rank");
    IntegerMatrix Z = mat_mul(fk.U, M1);
    for (std::size_t i = t; i < Z.rows; ++i)
        for (std::size_t j = 0; j < Z.cols; ++j)
            if (Z.at(i, j) != 0) throw Error("image does not lie in the kernel");
    IntegerMatrix Zp(t, M1.cols);
    for (std::size_t i = 0; i < t; ++i) {
        const BigInt& s = fk.S.at(i, i);
        for (std::size_t j = 0; j < M1.cols; ++j) {
            if (Z.at(i, j) % s != 0) throw Error("kernel coordinates are not integral");
            Zp.at(i, j) = Z.at(i, j) / s;
        }
    }
    IntegerMatrix Y = mat_mul(fk.V, Zp);

    SmithNormalForm fy = smith_normal_form(Y);
    if (fy.rank != t) throw Error("cohomology has unexpected free rank");
    BigInt order = 1;
    for (std::size_t i = 0; i < fy.rank; ++i) order *= fy.S.at(i, i);
    return order;
}

} // namespace groupcoh
