#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/bigint.hpp"
#include "groupcoh/cocycles.hpp"
#include "groupcoh/cyclotomic.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/matrix.hpp"
#include "groupcoh/phase.hpp"

namespace groupcoh {

inline constexpr std::uint64_t kDefaultPhaseEvalBudget = 100'000'000;

/// Degree-2 coefficients: a[{r,s}] for the key r^1 s^1, reduced into [0, m_r).
struct TwoCocycleParams {
    FiniteAbelianGroup group;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> a;
};

inline void two_params_validate(const TwoCocycleParams& p) {
    std::size_t n = p.group.n();
    for (auto& [rs, v] : p.a) {
        auto [r, s] = rs;
        if (r < 1 || r >= s || s > n) throw ParseError("pair coefficient index out of order");
        if (v < 0 || v >= p.group.moduli[r - 1])
            throw ParseError("a_" + std::to_string(r) + "," + std::to_string(s) + " out of range");
    }
}

inline TwoCocycleParams two_params_from_spec(const CocycleSpec& spec) {
    cocycle_spec_validate(spec);
    if (spec.degree != 2) throw DegreeMismatch("two-cocycle parameters need degree 2");
    TwoCocycleParams p{spec.group, {}};
    for (auto& [idx, v] : spec.coeffs)
        if (v != 0) p.a[{idx.pairs[0].first, idx.pairs[1].first}] = v;
    return p;
}

inline CocycleSpec two_params_to_spec(const TwoCocycleParams& p) {
    two_params_validate(p);
    CocycleSpec spec{p.group, 2, {}};
    for (auto& [rs, v] : p.a)
        if (v != 0) spec.coeffs.emplace(KoszulIndex{{{rs.first, 1}, {rs.second, 1}}}, v);
    return spec;
}

/// The degree-2 display: omega(g^i, g^j) = prod_{r<s} zeta_{m_r}^{-a_rs i_s j_r}.
inline PhaseExponent eval_two_cocycle(const TwoCocycleParams& p, const GroupElement& x,
                                      const GroupElement& y) {
    require_member(p.group, x);
    require_member(p.group, y);
    PhaseExponent phase = phase_zero();
    for (auto& [rs, v] : p.a) {
        if (v == 0) continue;
        std::size_t r = rs.first - 1, s = rs.second - 1;
        std::int64_t m = p.group.moduli[r];
        phase = phase_add(phase, phase_zeta(m, -(v * x.exps[s] % m) * y.exps[r]));
    }
    return phase;
}

struct DWResult {
    BigInt value;
    CyclotomicSum histogram;
    std::string method;
};

namespace detail {

inline std::vector<std::pair<std::vector<std::size_t>, int>> signed_permutations(std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::pair<std::vector<std::size_t>, int>> out;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        out.emplace_back(perm, inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Exact determinant of a small row-major integer matrix by Laplace expansion.
inline std::int64_t det_small(const std::vector<std::int64_t>& a, std::size_t n) {
    if (n == 0) return 1;
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    std::int64_t det = 0;
    std::vector<std::int64_t> sub((n - 1) * (n - 1));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t w = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) sub[(i - 1) * (n - 1) + w++] = a[i * n + j];
        }
        std::int64_t term = a[c] * det_small(sub, n - 1);
        det += (c % 2 == 0) ? term : -term;
    }
    return det;
}

inline BigInt dw_certify(const CyclotomicSum& acc, const BigInt& order) {
    auto c = cyclo_as_integer(acc);
    if (!c) throw NonIntegral("torus sum is not an integer");
    if (*c % order != 0) throw NonIntegral("torus sum is not divisible by the group order");
    BigInt value = *c / order;
    if (value < 0) throw NonIntegral("torus invariant is negative");
    return value;
}

} // namespace detail

/**
 * The invariant as the alternating product over all permutations: for each
 * tuple (f_1,...,f_n) in G^n the summand is
 * prod_{sigma even} omega(f_sigma) / prod_{sigma odd} omega(f_sigma),
 * accumulated exactly as a cyclotomic sum and certified to be |G| times an
 * integer.
 */
inline DWResult dw_bruteforce(const FiniteAbelianGroup& G, const CocycleSpec& spec,
                              std::int64_t n,
                              std::uint64_t budget = kDefaultPhaseEvalBudget) {
    cocycle_spec_validate(spec);
    if (G.moduli != spec.group.moduli) throw GroupMismatch("parameter group differs");
    if (spec.degree != n) throw DegreeMismatch("cocycle degree must equal the torus dimension");
    if (n < 1) throw DegreeMismatch("torus dimension must be at least 1");

    BigInt evals = big_pow(G.order(), n);
    for (std::int64_t i = 2; i <= n; ++i) evals *= i;
    if (evals > budget) throw BudgetExceeded("torus brute force exceeds the phase budget");

    auto perms = detail::signed_permutations(static_cast<std::size_t>(n));
    std::int64_t E = G.n() == 0 ? 1 : G.moduli.back();
    CyclotomicSum acc = cyclo_new(E);
    std::uint64_t tuples = 1;
    for (std::int64_t i = 0; i < n; ++i) tuples *= static_cast<std::uint64_t>(G.order_small());
    std::vector<GroupElement> f(static_cast<std::size_t>(n)), permuted(static_cast<std::size_t>(n));
    for (std::uint64_t t = 0; t < tuples; ++t) {
        f = tuple_unrank(G, n, static_cast<std::size_t>(t));
        PhaseExponent total = phase_zero();
        for (auto& [perm, sign] : perms) {
            for (std::size_t i = 0; i < perm.size(); ++i) permuted[i] = f[perm[i]];
            PhaseExponent w = eval_cocycle(spec, permuted);
            total = (sign > 0) ? phase_add(total, w) : phase_sub(total, w);
        }
        cyclo_add_phase(acc, total, 1);
    }
    return {detail::dw_certify(acc, G.order()), acc, "brute"};
}

/// N_n(d): closed recursion over prime powers, multiplicative across primes.
inline BigInt n_closed(std::int64_t n, std::int64_t d) {
    if (n < 1 || d < 1) throw ParseError("N_n(d) needs n >= 1 and d >= 1");
    // N_n(p^m) with N_n(1) = 1 and N_1(p^i) = 0 for i >= 1
    auto prime_power = [](auto&& self, std::int64_t nn, std::int64_t p,
                          std::int64_t mm) -> BigInt {
        if (mm == 0) return 1;
        if (nn == 1) return 0;
        BigInt total = big_pow(BigInt(p), mm * (nn - 2) * nn);
        for (std::int64_t i = 1; i <= mm; ++i) {
            BigInt term = big_pow(BigInt(p), mm * (nn - 2));
            term *= big_pow(BigInt(p), (mm - i) * (nn - 2) * (nn - 1));
            term *= self(self, nn - 1, p, i);
            term *= big_pow(BigInt(p), nn * i) - big_pow(BigInt(p), nn * (i - 1));
            total += term;
        }
        return total;
    };
    BigInt result = 1;
    std::int64_t rest = d;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        std::int64_t mm = 0;
        while (rest % p == 0) { rest /= p; ++mm; }
        result *= prime_power(prime_power, n, p, mm);
    }
    if (rest > 1) result *= prime_power(prime_power, n, rest, 1);
    return result;
}

/// N_n(d) by the defining exponential sum over all of M_n(Z_d).
inline BigInt n_bruteforce_det(std::int64_t n, std::int64_t d,
                               std::uint64_t budget = kDefaultPhaseEvalBudget) {
    if (n < 1 || d < 1) throw ParseError("N_n(d) needs n >= 1 and d >= 1");
    std::uint64_t count = 1;
    for (std::int64_t i = 0; i < n * n; ++i) {
        if (count > budget / static_cast<std::uint64_t>(d))
            throw BudgetExceeded("determinant sum exceeds the budget");
        count *= static_cast<std::uint64_t>(d);
    }
    CyclotomicSum acc = cyclo_new(d);
    std::vector<std::int64_t> a(static_cast<std::size_t>(n * n), 0);
    while (true) {
        std::int64_t det = detail::det_small(a, static_cast<std::size_t>(n));
        std::int64_t r = det % d;
        if (r < 0) r += d;
        acc.counts[r] += 1;
        if (acc.counts[r] == 0) acc.counts.erase(r);
        std::size_t s = a.size();
        bool done = true;
        while (s-- > 0) {
            if (++a[s] < d) { done = false; break; }
            a[s] = 0;
        }
        if (done) break;
    }
    auto c = cyclo_as_integer(acc);
    if (!c) throw NonIntegral("determinant sum is not an integer");
    BigInt den = big_pow(BigInt(d), n);
    if (*c % den != 0) throw NonIntegral("determinant sum is not divisible by d^n");
    return *c / den;
}

/// N_n(d) as the number of (n-1) x n matrices whose maximal minors all vanish.
inline BigInt n_bruteforce_minors(std::int64_t n, std::int64_t d,
                                  std::uint64_t budget = kDefaultPhaseEvalBudget) {
    if (n < 1 || d < 1) throw ParseError("N_n(d) needs n >= 1 and d >= 1");
    std::uint64_t count = 1;
    for (std::int64_t i = 0; i < (n - 1) * n; ++i) {
        if (count > budget / static_cast<std::uint64_t>(d))
            throw BudgetExceeded("minor count exceeds the budget");
        count *= static_cast<std::uint64_t>(d);
    }
    std::size_t rows = static_cast<std::size_t>(n - 1), cols = static_cast<std::size_t>(n);
    std::vector<std::int64_t> b(rows * cols, 0);
    std::vector<std::int64_t> sub(rows * rows);
    BigInt total = 0;
    while (true) {
        bool all_zero = true;
        for (std::size_t c = 0; c < cols && all_zero; ++c) {
            for (std::size_t i = 0; i < rows; ++i) {
                std::size_t w = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    if (j != c) sub[i * rows + w++] = b[i * cols + j];
            }
            if (detail::det_small(sub, rows) % d != 0) all_zero = false;
        }
        if (all_zero) ++total;
        std::size_t s = b.size();
        bool done = true;
        while (s-- > 0) {
            if (++b[s] < d) { done = false; break; }
            b[s] = 0;
        }
        if (done || b.empty()) break;
    }
    return total;
}

/**
 * Closed evaluation by the number of generators l versus the torus dimension
 * n: l < n gives |G|^{n-1}; l = n gives |G|^{n-1} N_n(d) / d^{n(n-1)} with
 * d = m_1 / gcd(m_1, a_{1...n}); l > n sums zeta powers of the maximal minors
 * of exponent matrices. Only the square-free keys enter the closed routes.
 */
inline DWResult dw_closed(const FiniteAbelianGroup& G, const CocycleSpec& spec, std::int64_t n,
                          std::uint64_t budget = kDefaultPhaseEvalBudget) {
    cocycle_spec_validate(spec);
    if (G.moduli != spec.group.moduli) throw GroupMismatch("parameter group differs");
    if (spec.degree != n) throw DegreeMismatch("cocycle degree must equal the torus dimension");
    if (n < 1) throw DegreeMismatch("torus dimension must be at least 1");
    std::int64_t l = static_cast<std::int64_t>(G.n());
    std::int64_t E = l == 0 ? 1 : G.moduli.back();

    if (l < n) {
        BigInt value = big_pow(G.order(), n - 1);
        CyclotomicSum acc = cyclo_new(E);
        acc.counts[0] = value * G.order();
        return {value, acc, "closed"};
    }

    if (l == n) {
        KoszulIndex top;
        for (std::size_t r = 1; r <= static_cast<std::size_t>(n); ++r) top.pairs.push_back({r, 1});
        std::int64_t a_top = 0;
        if (auto it = spec.coeffs.find(top); it != spec.coeffs.end()) a_top = it->second;
        std::int64_t d = G.moduli.front() / std::gcd(G.moduli.front(), a_top);
        BigInt num = big_pow(G.order(), n - 1) * n_closed(n, d);
        BigInt den = big_pow(BigInt(d), n * (n - 1));
        if (num % den != 0) throw NonIntegral("closed-form invariant is not an integer");
        BigInt value = num / den;
        CyclotomicSum acc = cyclo_new(E);
        acc.counts[0] = value * G.order();
        return {value, acc, "closed"};
    }

    // l > n: pick out the coefficients of the square-free degree-n keys
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> pick;
    auto gen = [&](auto&& self, std::size_t next) -> void {
        if (pick.size() == static_cast<std::size_t>(n)) {
            subsets.push_back(pick);
            return;
        }
        for (std::size_t r = next; r <= static_cast<std::size_t>(l); ++r) {
            pick.push_back(r);
            self(self, r + 1);
            pick.pop_back();
        }
    };
    gen(gen, 1);
    std::vector<std::int64_t> coeff(subsets.size(), 0);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        KoszulIndex key;
        for (auto r : subsets[s]) key.pairs.push_back({r, 1});
        if (auto it = spec.coeffs.find(key); it != spec.coeffs.end()) coeff[s] = it->second;
    }

    BigInt matrices = big_pow(G.order(), n);
    if (matrices * static_cast<std::int64_t>(subsets.size()) > budget)
        throw BudgetExceeded("minor-sum evaluation exceeds the phase budget");

    CyclotomicSum acc = cyclo_new(E);
    std::size_t nn = static_cast<std::size_t>(n);
    std::vector<std::int64_t> A(nn * static_cast<std::size_t>(l), 0);
    std::vector<std::int64_t> sub(nn * nn);
    while (true) {
        PhaseExponent total = phase_zero();
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            if (coeff[s] == 0) continue;
            for (std::size_t i = 0; i < nn; ++i)
                for (std::size_t j = 0; j < nn; ++j)
                    sub[i * nn + j] = A[i * static_cast<std::size_t>(l) + (subsets[s][j] - 1)];
            std::int64_t m = G.moduli[subsets[s][0] - 1];
            std::int64_t det = detail::det_small(sub, nn) % m;
            total = phase_add(total, phase_zeta(m, coeff[s] * det));
        }
        cyclo_add_phase(acc, total, 1);
        std::size_t s = A.size();
        bool done = true;
        while (s-- > 0) {
            std::int64_t m = G.moduli[s % static_cast<std::size_t>(l)];
            if (++A[s] < m) { done = false; break; }
            A[s] = 0;
        }
        if (done) break;
    }
    return {detail::dw_certify(acc, G.order()), acc, "closed"};
}

struct ProjRepDims {
    BigInt g0;
    BigInt dim;
};

/**
 * Dimensions of the irreducible projective representations: B is the
 * antisymmetric matrix with b_ij = (m_l / m_i) a_ij above the diagonal, and
 * |G_0| = |G| / prod_j (m_l / gcd(m_l, lambda_j)) over its nonzero invariant
 * factors, dim = sqrt(|G| / |G_0|).
 */
inline ProjRepDims projrep_dims(const FiniteAbelianGroup& G, const TwoCocycleParams& p) {
    two_params_validate(p);
    if (G.moduli != p.group.moduli) throw GroupMismatch("parameter group differs");
    std::size_t l = G.n();
    std::int64_t ml = l == 0 ? 1 : G.moduli.back();
    IntegerMatrix B(l, l);
    for (auto& [rs, v] : p.a) {
        std::size_t i = rs.first - 1, j = rs.second - 1;
        BigInt b = BigInt(ml / G.moduli[i]) * v;
        B.at(i, j) = b;
        B.at(j, i) = -b;
    }
    SmithNormalForm f = smith_normal_form(B);
    BigInt ratio = 1;
    for (std::size_t i = 0; i < f.rank; ++i)
        ratio *= BigInt(ml) / gcd(BigInt(ml), f.S.at(i, i));
    if (G.order() % ratio != 0) throw NonSquare("regular subgroup index does not divide |G|");
    ProjRepDims out;
    out.g0 = G.order() / ratio;
    if (!big_sqrt_exact(ratio, out.dim))
        throw NonSquare("projective dimension squared is not a perfect square");
    return out;
}

/// Count of x with omega(x, y) = omega(y, x) for all y, by direct scan.
inline BigInt omega_regular_count(const FiniteAbelianGroup& G, const TwoCocycleParams& p,
                                  std::uint64_t budget = kDefaultPhaseEvalBudget) {
    two_params_validate(p);
    if (G.moduli != p.group.moduli) throw GroupMismatch("parameter group differs");
    if (G.order() * G.order() > budget)
        throw BudgetExceeded("regular-element scan exceeds the budget");
    auto elems = all_elements(G);
    BigInt count = 0;
    for (auto& x : elems) {
        bool regular = true;
        for (auto& y : elems) {
            if (!(eval_two_cocycle(p, x, y) == eval_two_cocycle(p, y, x))) {
                regular = false;
                break;
            }
        }
        if (regular) ++count;
    }
    return count;
}

struct TuraevReport {
    BigInt torus_value;
    BigInt regular_count;
    BigInt g0_formula;
    bool agrees;
};

/// The torus invariant at n = 2 against both counts of regular elements.
inline TuraevReport turaev_check(const FiniteAbelianGroup& G, const TwoCocycleParams& p,
                                 std::uint64_t budget = kDefaultPhaseEvalBudget) {
    TuraevReport rep;
    rep.torus_value = dw_bruteforce(G, two_params_to_spec(p), 2, budget).value;
    rep.regular_count = omega_regular_count(G, p, budget);
    rep.g0_formula = projrep_dims(G, p).g0;
    rep.agrees = rep.torus_value == rep.regular_count && rep.regular_count == rep.g0_formula;
    return rep;
}

} // namespace groupcoh
