#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "groupcoh/dw.hpp"
#include "groupcoh/serialization.hpp"

using namespace groupcoh;

namespace {

CocycleSpec mkspec(const FiniteAbelianGroup& G, std::int64_t degree,
                   std::vector<std::pair<std::string, std::int64_t>> coeffs) {
    CocycleSpec spec{G, degree, {}};
    for (auto& [key, v] : coeffs) spec.coeffs.emplace(koszul_key_parse(key), v);
    cocycle_spec_validate(spec);
    return spec;
}

TwoCocycleParams pair_params(const FiniteAbelianGroup& G,
                             std::map<std::pair<std::size_t, std::size_t>, std::int64_t> a) {
    TwoCocycleParams p{G, std::move(a)};
    two_params_validate(p);
    return p;
}

std::vector<TwoCocycleParams> all_pair_params(const FiniteAbelianGroup& G) {
    std::vector<TwoCocycleParams> out;
    for (auto& spec : enumerate_representatives(G, 2)) out.push_back(two_params_from_spec(spec));
    return out;
}

}  // namespace

TEST_CASE("degree-2 parameter form and direct evaluation") {
    auto G = group_new({2, 2});
    auto spec = mkspec(G, 2, {{"1^1 2^1", 1}});
    auto p = two_params_from_spec(spec);
    REQUIRE(p.a.size() == 1);
    CHECK(p.a.at({1, 2}) == 1);
    CHECK(two_params_to_spec(p).coeffs == spec.coeffs);

    auto g1 = elem_generator(G, 1), g2 = elem_generator(G, 2);
    CHECK(eval_two_cocycle(p, g2, g1) == phase_make(1, 2));
    CHECK(eval_two_cocycle(p, g1, g2) == phase_zero());
    CHECK(eval_two_cocycle(p, g1, g1) == phase_zero());

    // the parameter form agrees with the cocycle evaluator everywhere
    for (auto moduli : std::vector<std::vector<std::int64_t>>{{2, 2}, {2, 4}, {3, 3}, {2, 2, 4}}) {
        auto H = group_new(moduli);
        for (auto& q : all_pair_params(H))
            for (auto& x : all_elements(H))
                for (auto& y : all_elements(H))
                    CHECK(eval_two_cocycle(q, x, y) == eval_cocycle(two_params_to_spec(q), {x, y}));
    }

    CHECK_THROWS_AS(two_params_from_spec(mkspec(G, 3, {})), DegreeMismatch);
    CHECK_THROWS_AS(two_params_validate(TwoCocycleParams{G, {{{2, 1}, 1}}}), ParseError);
    CHECK_THROWS_AS(two_params_validate(TwoCocycleParams{G, {{{1, 2}, 2}}}), ParseError);
    CHECK_THROWS_AS(eval_two_cocycle(p, elem_identity(group_new({4})), g1), GroupMismatch);
}

TEST_CASE("matrix counts by recursion, determinant sum, and minor scan") {
    for (std::int64_t d = 1; d <= 8; ++d) CHECK(n_closed(2, d) == 1);
    CHECK(n_closed(1, 1) == 1);
    CHECK(n_closed(1, 5) == 0);
    CHECK(n_closed(3, 2) == 22);

    for (std::int64_t n = 1; n <= 3; ++n)
        for (std::int64_t d = 1; d <= 6; ++d) {
            auto closed = n_closed(n, d);
            CHECK(closed == n_bruteforce_det(n, d));
            CHECK(closed == n_bruteforce_minors(n, d));
        }
    CHECK(n_closed(4, 2) == n_bruteforce_minors(4, 2));
    CHECK(n_closed(4, 3) == n_bruteforce_minors(4, 3));

    // multiplicative in coprime moduli
    for (std::int64_t a = 2; a <= 12; ++a)
        for (std::int64_t b = 2; b <= 12 / a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (std::int64_t n = 2; n <= 4; ++n)
                CHECK(n_closed(n, a * b) == n_closed(n, a) * n_closed(n, b));
        }

    CHECK_THROWS_AS(n_closed(0, 2), ParseError);
    CHECK_THROWS_AS(n_closed(2, 0), ParseError);
    CHECK_THROWS_AS(n_bruteforce_det(4, 7), BudgetExceeded);
}

TEST_CASE("torus invariants agree between the sum and the closed form") {
    struct Sweep {
        std::vector<std::int64_t> moduli;
        std::int64_t n;
    };
    for (auto& sw : std::vector<Sweep>{{{2, 2}, 2},
                                       {{2, 4}, 2},
                                       {{3, 3}, 2},
                                       {{4, 4}, 2},
                                       {{2, 2, 2}, 2},
                                       {{2, 2, 4}, 2},
                                       {{2, 2, 2}, 3},
                                       {{2, 4}, 3},
                                       {{4}, 2},
                                       {{}, 2},
                                       {{}, 3},
                                       {{2, 2}, 1},
                                       {{3, 3}, 1},
                                       {{4}, 1}}) {
        auto G = group_new(sw.moduli);
        for (auto& spec : enumerate_representatives(G, sw.n)) {
            auto brute = dw_bruteforce(G, spec, sw.n);
            auto closed = dw_closed(G, spec, sw.n);
            CHECK(brute.value == closed.value);
            CHECK(brute.method == "brute");
            CHECK(closed.method == "closed");
            CHECK(cyclo_as_integer(brute.histogram).value() == brute.value * G.order());
        }
    }
}

TEST_CASE("spot values of the torus invariant") {
    auto G22 = group_new({2, 2});
    CHECK(dw_closed(G22, mkspec(G22, 2, {}), 2).value == 4);
    CHECK(dw_closed(G22, mkspec(G22, 2, {{"1^1 2^1", 1}}), 2).value == 1);

    auto G222 = group_new({2, 2, 2});
    CHECK(dw_closed(G222, mkspec(G222, 3, {}), 3).value == 64);
    CHECK(dw_closed(G222, mkspec(G222, 3, {{"1^1 2^1 3^1", 1}}), 3).value == 22);
    // only the top coefficient moves the value
    CHECK(dw_closed(G222, mkspec(G222, 3, {{"1^1 2^1 3^1", 1}, {"1^3", 1}, {"1^1 2^2", 1}}), 3)
              .value == 22);

    auto G24 = group_new({2, 4});
    CHECK(dw_closed(G24, mkspec(G24, 2, {{"1^1 2^1", 1}}), 2).value == 2);
    auto G44 = group_new({4, 4});
    CHECK(dw_closed(G44, mkspec(G44, 2, {{"1^1 2^1", 1}}), 2).value == 1);
    CHECK(dw_closed(G44, mkspec(G44, 2, {{"1^1 2^1", 2}}), 2).value == 4);
    CHECK(dw_closed(G44, mkspec(G44, 2, {}), 2).value == 16);

    // below the rank the spec is irrelevant: |G|^{n-1}
    auto Z5 = group_new({5});
    CHECK(dw_closed(Z5, mkspec(Z5, 2, {}), 2).value == 5);
    CHECK(dw_bruteforce(Z5, mkspec(Z5, 2, {}), 2).value == 5);
    for (auto& spec : enumerate_representatives(G24, 3))
        CHECK(dw_closed(G24, spec, 3).value == 64);

    // circle values are character orthogonality
    auto Z4 = group_new({4});
    CHECK(dw_closed(Z4, mkspec(Z4, 1, {}), 1).value == 1);
    CHECK(dw_closed(Z4, mkspec(Z4, 1, {{"1^1", 1}}), 1).value == 0);
    CHECK(dw_closed(Z4, mkspec(Z4, 1, {{"1^1", 2}}), 1).value == 0);

    CHECK_THROWS_AS(dw_closed(G22, mkspec(G22, 2, {}), 3), DegreeMismatch);
    CHECK_THROWS_AS(dw_bruteforce(G22, mkspec(G22, 2, {}), 0), DegreeMismatch);
    CHECK_THROWS_AS(dw_bruteforce(G44, mkspec(G44, 2, {}), 2, 10), BudgetExceeded);
}

TEST_CASE("projective representation dimensions") {
    auto G22 = group_new({2, 2});
    auto d = projrep_dims(G22, pair_params(G22, {{{1, 2}, 1}}));
    CHECK(d.g0 == 1);
    CHECK(d.dim == 2);
    auto t = projrep_dims(G22, pair_params(G22, {}));
    CHECK(t.g0 == 4);
    CHECK(t.dim == 1);

    auto G24 = group_new({2, 4});
    auto d24 = projrep_dims(G24, pair_params(G24, {{{1, 2}, 1}}));
    CHECK(d24.g0 == 2);
    CHECK(d24.dim == 2);

    auto G33 = group_new({3, 3});
    auto d33 = projrep_dims(G33, pair_params(G33, {{{1, 2}, 1}}));
    CHECK(d33.g0 == 1);
    CHECK(d33.dim == 3);

    auto G44 = group_new({4, 4});
    auto d44 = projrep_dims(G44, pair_params(G44, {{{1, 2}, 2}}));
    CHECK(d44.g0 == 4);
    CHECK(d44.dim == 2);

    CHECK_THROWS_AS(projrep_dims(G22, pair_params(G24, {})), GroupMismatch);
}

TEST_CASE("torus value, regular elements, and the subgroup formula coincide") {
    for (auto moduli :
         std::vector<std::vector<std::int64_t>>{{}, {2, 2}, {2, 4}, {3, 3}, {4, 4}, {2, 2, 4}}) {
        auto G = group_new(moduli);
        for (auto& p : all_pair_params(G)) {
            auto rep = turaev_check(G, p);
            CHECK(rep.agrees);
            CHECK(rep.torus_value == rep.regular_count);
            CHECK(rep.regular_count == rep.g0_formula);
            CHECK(rep.regular_count == omega_regular_count(G, p));
        }
    }
    auto G33 = group_new({3, 3});
    auto rep = turaev_check(G33, pair_params(G33, {{{1, 2}, 1}}));
    CHECK(rep.torus_value == 1);

    CHECK_THROWS_AS(omega_regular_count(G33, pair_params(G33, {}), 3), BudgetExceeded);
}
