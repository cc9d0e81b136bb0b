#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/cocycles.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/phase.hpp"

namespace groupcoh {

/**
 * Degree-3 coefficients in abbreviated form: a[r-1] for the key r^3,
 * ab[{r,s}] for r^1 s^2, abc[{r,s,t}] for r^1 s^1 t^1. All values reduced
 * into [0, m_r) for the smallest position r involved.
 */
struct ThreeCocycleParams {
    FiniteAbelianGroup group;
    std::vector<std::int64_t> a;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> ab;
    std::map<std::array<std::size_t, 3>, std::int64_t> abc;
};

inline void three_params_validate(const ThreeCocycleParams& p) {
    std::size_t n = p.group.n();
    if (p.a.size() != n) throw ParseError("diagonal coefficient list has wrong length");
    for (std::size_t r = 1; r <= n; ++r)
        if (p.a[r - 1] < 0 || p.a[r - 1] >= p.group.moduli[r - 1])
            throw ParseError("a_" + std::to_string(r) + " out of range");
    for (auto& [rs, v] : p.ab) {
        auto [r, s] = rs;
        if (r < 1 || r >= s || s > n) throw ParseError("pair coefficient index out of order");
        if (v < 0 || v >= p.group.moduli[r - 1])
            throw ParseError("a_" + std::to_string(r) + "," + std::to_string(s) + " out of range");
    }
    for (auto& [rst, v] : p.abc) {
        auto [r, s, t] = rst;
        if (r < 1 || r >= s || s >= t || t > n)
            throw ParseError("triple coefficient index out of order");
        if (v < 0 || v >= p.group.moduli[r - 1]) throw ParseError("triple coefficient out of range");
    }
}

inline ThreeCocycleParams three_params_from_spec(const CocycleSpec& spec) {
    cocycle_spec_validate(spec);
    if (spec.degree != 3) throw DegreeMismatch("three-cocycle parameters need degree 3");
    ThreeCocycleParams p{spec.group, std::vector<std::int64_t>(spec.group.n(), 0), {}, {}};
    for (auto& [idx, v] : spec.coeffs) {
        if (v == 0) continue;
        if (idx.pairs.size() == 1) {
            p.a[idx.pairs[0].first - 1] = v;
        } else if (idx.pairs.size() == 2) {
            p.ab[{idx.pairs[0].first, idx.pairs[1].first}] = v;
        } else {
            p.abc[{idx.pairs[0].first, idx.pairs[1].first, idx.pairs[2].first}] = v;
        }
    }
    return p;
}

inline CocycleSpec three_params_to_spec(const ThreeCocycleParams& p) {
    three_params_validate(p);
    CocycleSpec spec{p.group, 3, {}};
    for (std::size_t r = 1; r <= p.group.n(); ++r)
        if (p.a[r - 1] != 0) spec.coeffs.emplace(KoszulIndex{{{r, 3}}}, p.a[r - 1]);
    for (auto& [rs, v] : p.ab)
        if (v != 0) spec.coeffs.emplace(KoszulIndex{{{rs.first, 1}, {rs.second, 2}}}, v);
    for (auto& [rst, v] : p.abc)
        if (v != 0)
            spec.coeffs.emplace(KoszulIndex{{{rst[0], 1}, {rst[1], 1}, {rst[2], 1}}}, v);
    return spec;
}

/**
 * The degree-3 specialization evaluated directly: for exponent vectors i, j,
 * k of x, y, z the phase is
 *   sum_r a_r i_r [(j_r+k_r)/m_r] / m_r
 * + sum_{r<s} a_rs k_r [(i_s+j_s)/m_s] / m_r
 * - sum_{r<s<t} a_rst k_r j_s i_t / m_r.
 */
inline PhaseExponent eval_three_cocycle(const ThreeCocycleParams& p, const GroupElement& x,
                                        const GroupElement& y, const GroupElement& z) {
    require_member(p.group, x);
    require_member(p.group, y);
    require_member(p.group, z);
    const auto& m = p.group.moduli;
    PhaseExponent phase = phase_zero();
    std::size_t n = p.group.n();
    for (std::size_t r = 0; r < n; ++r) {
        if (p.a[r] == 0) continue;
        std::int64_t e = p.a[r] * x.exps[r] % m[r] * carry(y.exps[r], z.exps[r], m[r]);
        phase = phase_add(phase, phase_zeta(m[r], e));
    }
    for (auto& [rs, v] : p.ab) {
        if (v == 0) continue;
        std::size_t r = rs.first - 1, s = rs.second - 1;
        std::int64_t e = v * z.exps[r] % m[r] * carry(x.exps[s], y.exps[s], m[s]);
        phase = phase_add(phase, phase_zeta(m[r], e));
    }
    for (auto& [rst, v] : p.abc) {
        if (v == 0) continue;
        std::size_t r = rst[0] - 1, s = rst[1] - 1, t = rst[2] - 1;
        std::int64_t e = v * z.exps[r] % m[r] * y.exps[s] % m[r] * x.exps[t] % m[r];
        phase = phase_add(phase, phase_zeta(m[r], -e));
    }
    return phase;
}

/// Dense table of the associator over all of G^3, for residual checks.
inline CochainTable three_cocycle_table(const ThreeCocycleParams& p,
                                        std::uint64_t budget = kDefaultTableBudget) {
    three_params_validate(p);
    CochainTable t = cochain_table_new(p.group, 3, budget);
    for (std::size_t r = 0; r < t.values.size(); ++r) {
        auto args = tuple_unrank(p.group, 3, r);
        t.values[r] = eval_three_cocycle(p, args[0], args[1], args[2]);
    }
    return t;
}

/// Full braiding table R over G x G, indexed by rank(x) * |G| + rank(y).
struct BraidingTable {
    FiniteAbelianGroup group;
    std::vector<PhaseExponent> values;
};

inline const PhaseExponent& braiding_at(const BraidingTable& R, const GroupElement& x,
                                        const GroupElement& y) {
    std::size_t order = static_cast<std::size_t>(R.group.order_small());
    return R.values[elem_rank(R.group, x) * order + elem_rank(R.group, y)];
}

struct HexagonViolation {
    GroupElement x, y, z;
    int hexagon; // 1 or 2
};

/**
 * Residuals of both hexagon identities at every triple:
 *   R(xy,z) - R(x,z) - R(y,z) + w(x,z,y) - w(x,y,z) - w(z,x,y) = 0
 *   R(x,yz) - R(x,y) - R(x,z) + w(x,y,z) + w(y,z,x) - w(y,x,z) = 0.
 */
inline std::vector<HexagonViolation> hexagon_residuals(const CochainTable& omega,
                                                       const BraidingTable& R) {
    if (omega.degree != 3) throw DegreeMismatch("hexagon check needs a degree-3 table");
    const FiniteAbelianGroup& G = omega.group;
    std::vector<HexagonViolation> bad;
    auto w = [&](const GroupElement& a, const GroupElement& b, const GroupElement& c) {
        return omega.values[tuple_rank(G, {a, b, c})];
    };
    for (auto& x : all_elements(G))
        for (auto& y : all_elements(G))
            for (auto& z : all_elements(G)) {
                PhaseExponent h1 = braiding_at(R, elem_mul(G, x, y), z);
                h1 = phase_sub(h1, braiding_at(R, x, z));
                h1 = phase_sub(h1, braiding_at(R, y, z));
                h1 = phase_add(h1, w(x, z, y));
                h1 = phase_sub(h1, w(x, y, z));
                h1 = phase_sub(h1, w(z, x, y));
                if (!h1.is_zero()) bad.push_back({x, y, z, 1});
                PhaseExponent h2 = braiding_at(R, x, elem_mul(G, y, z));
                h2 = phase_sub(h2, braiding_at(R, x, y));
                h2 = phase_sub(h2, braiding_at(R, x, z));
                h2 = phase_add(h2, w(x, y, z));
                h2 = phase_add(h2, w(y, z, x));
                h2 = phase_sub(h2, w(y, x, z));
                if (!h2.is_zero()) bad.push_back({x, y, z, 2});
            }
    return bad;
}

struct BraidingExistence {
    bool exists;
    std::string reason;
};

/**
 * The classification criterion: braidings exist iff every triple coefficient
 * vanishes, every pair coefficient vanishes, and 2 a_r = 0 mod m_r for all r.
 */
inline BraidingExistence braiding_exists(const FiniteAbelianGroup& G,
                                         const ThreeCocycleParams& p) {
    three_params_validate(p);
    if (G.moduli != p.group.moduli) throw GroupMismatch("parameter group differs");
    for (auto& [rst, v] : p.abc)
        if (v != 0)
            return {false, "a_{" + std::to_string(rst[0]) + " " + std::to_string(rst[1]) + " " +
                               std::to_string(rst[2]) + "} must vanish"};
    for (auto& [rs, v] : p.ab)
        if (v != 0)
            return {false,
                    "a_{" + std::to_string(rs.first) + " " + std::to_string(rs.second) + "} must vanish"};
    for (std::size_t r = 1; r <= p.group.n(); ++r) {
        std::int64_t m = p.group.moduli[r - 1];
        if ((2 * p.a[r - 1]) % m != 0)
            return {false, "2 a_{" + std::to_string(r) + "} must be 0 mod " + std::to_string(m)};
    }
    return {true, ""};
}

/// Generator values r[i][j] = R(g_{i+1}, g_{j+1}) determining a braiding.
struct QuasiBicharacter {
    FiniteAbelianGroup group;
    std::vector<PhaseExponent> r; // n*n, row-major
};

/**
 * All braidings for the given associator, as generator matrices: diagonal
 * entries are the m_i-th roots of zeta_{m_i}^{a_i} (phases (a_i + m_i t)/m_i^2),
 * off-diagonal entries arbitrary m_min(i,j)-th roots of unity.
 */
inline std::vector<QuasiBicharacter> enumerate_braidings(const FiniteAbelianGroup& G,
                                                         const ThreeCocycleParams& p) {
    if (!braiding_exists(G, p).exists) return {};
    std::size_t n = G.n();
    std::vector<std::int64_t> limit(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            limit[i * n + j] = (i == j) ? G.moduli[i] : G.moduli[std::min(i, j)];
    std::vector<std::int64_t> choice(n * n, 0);
    std::vector<QuasiBicharacter> out;
    while (true) {
        QuasiBicharacter Q{G, std::vector<PhaseExponent>(n * n)};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::int64_t m = G.moduli[std::min(i, j)];
                if (i == j)
                    Q.r[i * n + j] = phase_make(p.a[i] + G.moduli[i] * choice[i * n + j],
                                                G.moduli[i] * G.moduli[i]);
                else
                    Q.r[i * n + j] = phase_make(choice[i * n + j], m);
            }
        out.push_back(std::move(Q));
        if (choice.empty()) return out;
        std::size_t s = n * n;
        while (s-- > 0) {
            if (++choice[s] < limit[s]) break;
            choice[s] = 0;
            if (s == 0) return out;
        }
    }
}

namespace detail {

/// Word structure of canonical elements: the leftmost generator and the rest.
struct WordStep {
    std::size_t gen_rank;  // rank of the leftmost generator g_i
    std::size_t rest_rank; // rank of the element with that letter removed
    std::size_t gen_index; // i, 0-based; only valid for non-identity
    bool is_identity;
    bool is_generator;
};

inline std::vector<WordStep> word_table(const FiniteAbelianGroup& G) {
    std::size_t order = static_cast<std::size_t>(G.order_small());
    std::vector<WordStep> steps(order);
    for (std::size_t r = 0; r < order; ++r) {
        GroupElement g = elem_unrank(G, r);
        WordStep st{};
        st.is_identity = g.is_identity();
        if (!st.is_identity) {
            std::size_t i = 0;
            while (g.exps[i] == 0) ++i;
            st.gen_index = i;
            st.gen_rank = elem_rank(G, elem_generator(G, i + 1));
            GroupElement rest = g;
            rest.exps[i] -= 1;
            st.rest_rank = elem_rank(G, rest);
            st.is_generator = elem_unrank(G, st.rest_rank).is_identity();
        }
        steps[r] = st;
    }
    return steps;
}

} // namespace detail

/**
 * Extends generator values to the full table by the hexagon recursions,
 * peeling the leftmost letter of the canonical word: first in the first
 * argument, then in the second.
 */
inline BraidingTable braiding_extend(const FiniteAbelianGroup& G, const ThreeCocycleParams& p,
                                     const QuasiBicharacter& Q) {
    std::size_t order = static_cast<std::size_t>(G.order_small());
    std::size_t n = G.n();
    auto steps = detail::word_table(G);
    auto elems = all_elements(G);
    std::vector<PhaseExponent> memo(order * order);
    std::vector<char> known(order * order, 0);
    auto w = [&](std::size_t a, std::size_t b, std::size_t c) {
        return eval_three_cocycle(p, elems[a], elems[b], elems[c]);
    };
    auto rec = [&](auto&& self, std::size_t x, std::size_t z) -> PhaseExponent {
        if (known[x * order + z]) return memo[x * order + z];
        PhaseExponent v = phase_zero();
        if (!steps[x].is_identity && !steps[z].is_identity) {
            if (!steps[x].is_generator) {
                std::size_t head = steps[x].gen_rank, rest = steps[x].rest_rank;
                v = phase_add(self(self, head, z), self(self, rest, z));
                v = phase_sub(v, w(head, z, rest));
                v = phase_add(v, w(head, rest, z));
                v = phase_add(v, w(z, head, rest));
            } else if (!steps[z].is_generator) {
                std::size_t head = steps[z].gen_rank, rest = steps[z].rest_rank;
                v = phase_add(self(self, x, head), self(self, x, rest));
                v = phase_sub(v, w(x, head, rest));
                v = phase_sub(v, w(head, rest, x));
                v = phase_add(v, w(head, x, rest));
            } else {
                v = Q.r[steps[x].gen_index * n + steps[z].gen_index];
            }
        }
        known[x * order + z] = 1;
        memo[x * order + z] = v;
        return v;
    };
    BraidingTable R{G, std::vector<PhaseExponent>(order * order)};
    for (std::size_t x = 0; x < order; ++x)
        for (std::size_t z = 0; z < order; ++z) R.values[x * order + z] = rec(rec, x, z);
    return R;
}

inline constexpr std::int64_t kDefaultBraidingGroupBound = 9;

/**
 * Independent search: every generator matrix over all E-th roots of unity,
 * E = lcm(moduli)^2, extended by the same recursions and kept when both
 * hexagons hold at every triple. Arithmetic runs on integer numerators mod E,
 * which is exact on this phase lattice.
 */
inline std::vector<BraidingTable> bruteforce_braidings(
    const FiniteAbelianGroup& G, const ThreeCocycleParams& p,
    std::int64_t group_bound = kDefaultBraidingGroupBound) {
    three_params_validate(p);
    if (G.order_small() > group_bound)
        throw BudgetExceeded("brute-force braiding search exceeds the group bound");
    std::size_t order = static_cast<std::size_t>(G.order_small());
    std::size_t n = G.n();
    std::int64_t lcm = 1;
    for (auto m : G.moduli) lcm = std::lcm(lcm, m);
    const std::int64_t E = lcm * lcm;

    auto elems = all_elements(G);
    auto steps = detail::word_table(G);
    std::vector<std::int64_t> omega(order * order * order);
    for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y)
            for (std::size_t z = 0; z < order; ++z) {
                PhaseExponent ph = eval_three_cocycle(p, elems[x], elems[y], elems[z]);
                omega[(x * order + y) * order + z] = ph.num * (E / ph.den);
            }
    std::vector<std::size_t> mul(order * order);
    for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y)
            mul[x * order + y] = elem_rank(G, elem_mul(G, elems[x], elems[y]));

    std::vector<std::int64_t> memo(order * order, 0);
    std::vector<std::uint32_t> stamp(order * order, 0);
    std::uint32_t epoch = 0;
    std::vector<std::int64_t> cand(n * n, 0);

    auto rec = [&](auto&& self, std::size_t x, std::size_t z) -> std::int64_t {
        std::size_t key = x * order + z;
        if (stamp[key] == epoch) return memo[key];
        std::int64_t v = 0;
        if (!steps[x].is_identity && !steps[z].is_identity) {
            if (!steps[x].is_generator) {
                std::size_t head = steps[x].gen_rank, rest = steps[x].rest_rank;
                v = self(self, head, z) + self(self, rest, z) -
                    omega[(head * order + z) * order + rest] +
                    omega[(head * order + rest) * order + z] +
                    omega[(z * order + head) * order + rest];
            } else if (!steps[z].is_generator) {
                std::size_t head = steps[z].gen_rank, rest = steps[z].rest_rank;
                v = self(self, x, head) + self(self, x, rest) -
                    omega[(x * order + head) * order + rest] -
                    omega[(head * order + rest) * order + x] +
                    omega[(head * order + x) * order + rest];
            } else {
                v = cand[steps[x].gen_index * n + steps[z].gen_index];
            }
            v %= E;
            if (v < 0) v += E;
        }
        stamp[key] = epoch;
        memo[key] = v;
        return v;
    };

    std::vector<BraidingTable> out;
    while (true) {
        ++epoch;
        bool ok = true;
        for (std::size_t x = 1; x < order && ok; ++x)
            for (std::size_t y = 1; y < order && ok; ++y)
                for (std::size_t z = 1; z < order && ok; ++z) {
                    const std::int64_t wxyz = omega[(x * order + y) * order + z];
                    std::int64_t h1 = rec(rec, mul[x * order + y], z) - rec(rec, x, z) -
                                      rec(rec, y, z) + omega[(x * order + z) * order + y] - wxyz -
                                      omega[(z * order + x) * order + y];
                    if (h1 % E != 0) { ok = false; break; }
                    std::int64_t h2 = rec(rec, x, mul[y * order + z]) - rec(rec, x, y) -
                                      rec(rec, x, z) + wxyz + omega[(y * order + z) * order + x] -
                                      omega[(y * order + x) * order + z];
                    if (h2 % E != 0) { ok = false; break; }
                }
        if (ok) {
            BraidingTable R{G, std::vector<PhaseExponent>(order * order)};
            for (std::size_t x = 0; x < order; ++x)
                for (std::size_t z = 0; z < order; ++z)
                    R.values[x * order + z] = phase_make(rec(rec, x, z), E);
            out.push_back(std::move(R));
        }
        if (cand.empty()) return out;
        std::size_t s = n * n;
        while (s-- > 0) {
            if (++cand[s] < E) break;
            cand[s] = 0;
            if (s == 0) return out;
        }
    }
}

/// Every valid assignment of degree-3 parameters for the group.
inline std::vector<ThreeCocycleParams> enumerate_three_cocycle_params(
    const FiniteAbelianGroup& G) {
    std::vector<ThreeCocycleParams> out;
    for (auto& spec : enumerate_representatives(G, 3)) out.push_back(three_params_from_spec(spec));
    return out;
}

} // namespace groupcoh
