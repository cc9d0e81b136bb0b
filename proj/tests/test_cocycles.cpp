#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "groupcoh/chain_maps.hpp"
#include "groupcoh/cocycles.hpp"
#include "groupcoh/serialization.hpp"

using namespace groupcoh;

namespace {

KoszulIndex ki(std::vector<std::pair<std::size_t, std::int64_t>> pairs) {
    return KoszulIndex{std::move(pairs)};
}

CocycleSpec mkspec(const FiniteAbelianGroup& G, std::int64_t degree,
                   std::vector<std::pair<std::string, std::int64_t>> coeffs) {
    CocycleSpec spec{G, degree, {}};
    for (auto& [key, a] : coeffs) spec.coeffs.emplace(koszul_key_parse(key), a);
    cocycle_spec_validate(spec);
    return spec;
}

}  // namespace

TEST_CASE("cocycle specs accept only reduced odd-leading coefficients") {
    auto G = group_new({2, 4});
    CHECK_NOTHROW(mkspec(G, 3, {{"1^3", 1}, {"2^3", 3}, {"1^1 2^2", 1}}));
    CHECK_NOTHROW(mkspec(G, 3, {}));

    CocycleSpec even{G, 3, {{ki({{1, 2}, {2, 1}}), 1}}};
    CHECK_THROWS_AS(cocycle_spec_validate(even), ParseError);

    CocycleSpec wrongdeg{G, 3, {{ki({{1, 1}}), 1}}};
    CHECK_THROWS_AS(cocycle_spec_validate(wrongdeg), DegreeMismatch);

    CocycleSpec range{G, 3, {{ki({{1, 3}}), 2}}};
    CHECK_THROWS_AS(cocycle_spec_validate(range), ParseError);

    CocycleSpec negdeg{G, 0, {}};
    CHECK_THROWS_AS(cocycle_spec_validate(negdeg), DegreeMismatch);

    CocycleSpec badpos{G, 3, {{ki({{3, 3}}), 1}}};
    CHECK_THROWS_AS(cocycle_spec_validate(badpos), IndexOutOfRange);
}

TEST_CASE("free keys and representative counts") {
    auto G22 = group_new({2, 2});
    CHECK(cocycle_keys(G22, 2).size() == 1);  // 1^1 2^1
    CHECK(cocycle_keys(G22, 3).size() == 3);  // 1^3, 2^3, 1^1 2^2
    CHECK(enumerate_representatives(G22, 2).size() == 2);
    CHECK(enumerate_representatives(G22, 3).size() == 8);

    auto G24 = group_new({2, 4});
    // keys 1^3 (mod 2), 2^3 (mod 4), 1^1 2^2 (mod 2): 2*4*2 representatives
    CHECK(enumerate_representatives(G24, 3).size() == 16);

    auto Z2 = group_new({2});
    CHECK(enumerate_representatives(Z2, 2).size() == 1);
    CHECK(enumerate_representatives(Z2, 3).size() == 2);
    CHECK(enumerate_representatives(Z2, 4).size() == 1);

    // the all-zero representative stores nothing
    auto reps = enumerate_representatives(G22, 3);
    CHECK(reps.front().coeffs.empty());
    std::set<std::map<KoszulIndex, std::int64_t>> distinct;
    for (auto& r : reps) distinct.insert(r.coeffs);
    CHECK(distinct.size() == reps.size());

    CHECK_THROWS_AS(enumerate_representatives(Z2, 0), DegreeMismatch);
}

TEST_CASE("block splits and cross signs") {
    auto idx = ki({{1, 1}, {2, 2}, {3, 1}});
    auto blocks = koszul_blocks(idx);
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0] == std::pair<std::size_t, std::size_t>{4, 4});
    CHECK(blocks[1] == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(blocks[2] == std::pair<std::size_t, std::size_t>{1, 1});
    // 1*2 + 1*1 + 2*1 = 5
    CHECK(koszul_cross_sign(idx) == -1);
    CHECK(koszul_cross_sign(ki({{1, 3}})) == 1);
    CHECK(koszul_cross_sign(ki({{1, 1}, {2, 1}})) == -1);
    CHECK(koszul_cross_sign(ki({{1, 1}, {2, 2}})) == 1);
}

TEST_CASE("explicit cocycle values on generators") {
    auto Z2 = group_new({2});
    auto g = elem_generator(Z2, 1);
    auto w = mkspec(Z2, 3, {{"1^3", 1}});
    CHECK(eval_cocycle(w, {g, g, g}) == PhaseExponent{1, 2});
    CHECK(eval_cocycle(w, {g, g, elem_identity(Z2)}) == phase_zero());

    auto G22 = group_new({2, 2});
    auto g1 = elem_generator(G22, 1);
    auto g2 = elem_generator(G22, 2);
    auto w2 = mkspec(G22, 3, {{"1^1 2^2", 1}});
    CHECK(eval_cocycle(w2, {g2, g2, g1}) == PhaseExponent{1, 2});
    CHECK(eval_cocycle(w2, {g2, g1, g2}) == phase_zero());
    CHECK(eval_cocycle(w2, {g1, g2, g2}) == phase_zero());

    auto Z4 = group_new({4});
    auto h = elem_generator(Z4, 1);
    auto w4 = mkspec(Z4, 3, {{"1^3", 3}});
    // eta = alpha_1 * [(alpha_3 + alpha_2)/4]
    CHECK(eval_cocycle(w4, {h, elem_pow(Z4, h, 2), elem_pow(Z4, h, 2)}) == PhaseExponent{3, 4});
    CHECK(eval_cocycle(w4, {elem_pow(Z4, h, 2), elem_pow(Z4, h, 2), elem_pow(Z4, h, 3)}) ==
          PhaseExponent{1, 2});
    CHECK(eval_cocycle(w4, {h, h, h}) == phase_zero());

    CHECK_THROWS_AS(eval_cocycle(w, {g, g}), DegreeMismatch);
    CHECK_THROWS_AS(eval_cocycle(w2, {g1, g2, GroupElement{{0, 7}}}), GroupMismatch);
}

TEST_CASE("cocycles are normalized at every identity slot") {
    for (auto moduli : std::vector<std::vector<std::int64_t>>{{4}, {2, 2}, {2, 4}}) {
        auto G = group_new(moduli);
        auto e = elem_identity(G);
        auto elems = all_elements(G);
        for (std::int64_t k = 2; k <= 3; ++k) {
            for (auto& spec : enumerate_representatives(G, k)) {
                for (auto& x : elems)
                    for (auto& y : elems) {
                        std::vector<GroupElement> args(static_cast<std::size_t>(k), e);
                        for (std::size_t slot = 0; slot < args.size(); ++slot) {
                            args.assign(static_cast<std::size_t>(k), x);
                            if (args.size() > 1) args[(slot + 1) % args.size()] = y;
                            args[slot] = e;
                            CHECK(eval_cocycle(spec, args) == phase_zero());
                        }
                    }
            }
        }
    }
}

TEST_CASE("pairing applies augmentation to chain coefficients") {
    auto Z4 = group_new({4});
    auto g = elem_generator(Z4, 1);
    auto spec = mkspec(Z4, 3, {{"1^3", 2}});

    KoszulChain c1;
    koszul_chain_add(c1, ki({{1, 3}}), norm_element(Z4, 1));  // augmentation 4
    CHECK(eval_koszul_pairing(spec, c1) == phase_zero());     // 4 * 2/4 = 2

    KoszulChain c2;
    koszul_chain_add(c2, ki({{1, 3}}), tee_element(Z4, 1));  // augmentation 0
    CHECK(eval_koszul_pairing(spec, c2) == phase_zero());

    KoszulChain c3;
    koszul_chain_add(c3, ki({{1, 3}}), gr_mono(elem_pow(Z4, g, 2), 3));  // augmentation 3
    CHECK(eval_koszul_pairing(spec, c3) == PhaseExponent{1, 2});

    // even-leading keys pair to zero regardless of coefficient
    auto G24 = group_new({2, 4});
    auto spec2 = mkspec(G24, 3, {{"2^3", 1}});
    KoszulChain c4;
    koszul_chain_add(c4, ki({{1, 2}, {2, 1}}), gr_one(G24));
    CHECK(eval_koszul_pairing(spec2, c4) == phase_zero());

    KoszulChain wrong;
    koszul_chain_add(wrong, ki({{1, 1}}), gr_one(Z4));
    CHECK_THROWS_AS(eval_koszul_pairing(spec, wrong), DegreeMismatch);
}

TEST_CASE("direct evaluation equals pairing with the pulled back symbol") {
    for (auto moduli : std::vector<std::vector<std::int64_t>>{{4}, {2, 2}, {2, 4}}) {
        auto G = group_new(moduli);
        auto elems = all_elements(G);
        for (std::int64_t k = 1; k <= 3; ++k) {
            auto reps = enumerate_representatives(G, k);
            std::size_t count = 1;
            for (std::int64_t d = 0; d < k; ++d) count *= elems.size();
            for (std::size_t t = 0; t < count; ++t) {
                std::vector<GroupElement> args;
                std::size_t rest = t;
                for (std::int64_t d = 0; d < k; ++d) {
                    args.push_back(elems[rest % elems.size()]);
                    rest /= elems.size();
                }
                auto image = chain_map_F(G, args);
                for (auto& spec : reps)
                    CHECK(eval_cocycle(spec, args) == eval_koszul_pairing(spec, image));
            }
        }
    }
}

TEST_CASE("dense tables agree with pointwise evaluation") {
    auto G = group_new({2, 4});
    auto spec = mkspec(G, 2, {{"1^1 2^1", 1}});
    auto table = table_from_spec(spec);
    CHECK(table.degree == 2);
    REQUIRE(table.values.size() == 64);
    auto elems = all_elements(G);
    for (auto& x : elems)
        for (auto& y : elems) {
            std::vector<GroupElement> args{x, y};
            CHECK(table.values[tuple_rank(G, args)] == eval_cocycle(spec, args));
            CHECK(tuple_unrank(G, 2, tuple_rank(G, args)) == args);
        }
    CHECK(table_is_normalized(table));
    CHECK_THROWS_AS(table_from_spec(spec, 10), BudgetExceeded);
    CHECK_THROWS_AS(cochain_table_new(G, 9), BudgetExceeded);
}

TEST_CASE("coboundaries of normalized cochains are cocycles") {
    std::mt19937_64 rng(60601);
    for (auto moduli : std::vector<std::vector<std::int64_t>>{{4}, {2, 2}}) {
        auto G = group_new(moduli);
        for (std::int64_t k = 1; k <= 3; ++k) {
            for (int trial = 0; trial < 4; ++trial) {
                auto h = cochain_table_new(G, k);
                for (std::size_t i = 0; i < h.values.size(); ++i) {
                    auto args = tuple_unrank(G, k, i);
                    bool has_id = false;
                    for (auto& a : args) has_id = has_id || a.is_identity();
                    if (has_id) continue;
                    h.values[i] =
                        phase_make(std::uniform_int_distribution<std::int64_t>(0, 7)(rng), 8);
                }
                REQUIRE(table_is_normalized(h));
                auto dh = coboundary(h);
                CHECK(dh.degree == k + 1);
                CHECK(table_is_normalized(dh));
                CHECK(is_cocycle(dh));
                CHECK(is_coboundary(dh));
            }
        }
    }
}

TEST_CASE("representatives are cocycles and distinct in cohomology") {
    auto Z2 = group_new({2});
    auto reps2 = enumerate_representatives(Z2, 3);
    REQUIRE(reps2.size() == 2);
    auto trivial = table_from_spec(reps2[0]);
    auto nontrivial = table_from_spec(reps2[1]);
    CHECK(is_cocycle(trivial));
    CHECK(is_cocycle(nontrivial));
    CHECK(is_coboundary(trivial));
    CHECK(!is_coboundary(nontrivial));

    // pairwise differences of the eight degree-3 classes are never trivial
    auto G22 = group_new({2, 2});
    std::vector<CochainTable> tables;
    for (auto& spec : enumerate_representatives(G22, 3)) {
        tables.push_back(table_from_spec(spec));
        CHECK(is_cocycle(tables.back()));
    }
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t j = i + 1; j < tables.size(); ++j) {
            CochainTable diff = tables[i];
            for (std::size_t t = 0; t < diff.values.size(); ++t)
                diff.values[t] = phase_sub(diff.values[t], tables[j].values[t]);
            CHECK(!is_coboundary(diff));
        }
}

TEST_CASE("cocycle test rejects non closed tables") {
    // a lone value at (g,g) leaks through the face at (g^2,g,g)
    auto Z3 = group_new({3});
    auto t = cochain_table_new(Z3, 2);
    auto g = elem_generator(Z3, 1);
    t.values[tuple_rank(Z3, {g, g})] = phase_make(1, 2);
    CHECK(table_is_normalized(t));
    CHECK(!is_cocycle(t));
    CHECK_THROWS_AS(is_coboundary(t), NotACocycle);

    // on Z2 the same shape is the coboundary of h(g) = 1/6
    auto Z2 = group_new({2});
    auto s = cochain_table_new(Z2, 2);
    auto h = elem_generator(Z2, 1);
    s.values[tuple_rank(Z2, {h, h})] = phase_make(1, 3);
    CHECK(is_cocycle(s));
    CHECK(is_coboundary(s));

    // unnormalized tables are rejected outright
    auto u = cochain_table_new(Z2, 2);
    u.values[tuple_rank(Z2, {elem_identity(Z2), h})] = phase_make(1, 2);
    CHECK(!table_is_normalized(u));
    CHECK(!is_cocycle(u));
}

TEST_CASE("closed cohomology orders match brute force linear algebra") {
    auto Z2 = group_new({2});
    auto Z3 = group_new({3});
    auto Z4 = group_new({4});
    auto G22 = group_new({2, 2});

    CHECK(cohomology_order_closed(Z2, 1).order == 2);
    CHECK(cohomology_order_closed(Z2, 2).order == 1);
    CHECK(cohomology_order_closed(Z2, 3).order == 2);
    CHECK(cohomology_order_closed(Z3, 3).order == 3);
    CHECK(cohomology_order_closed(G22, 1).order == 4);
    CHECK(cohomology_order_closed(G22, 2).order == 2);
    CHECK(cohomology_order_closed(G22, 3).order == 8);
    CHECK(cohomology_order_closed(group_new({2, 4}), 2).order == 2);
    CHECK(cohomology_order_closed(group_new({2, 2, 2}), 4).order == 256);
    for (std::int64_t m = 2; m <= 9; ++m)
        CHECK(cohomology_order_closed(group_new({m}), 2).order == 1);

    // representative count equals the closed order
    for (std::int64_t k = 1; k <= 4; ++k) {
        CHECK(BigInt(enumerate_representatives(G22, k).size()) ==
              cohomology_order_closed(G22, k).order);
        CHECK(BigInt(enumerate_representatives(Z4, k).size()) ==
              cohomology_order_closed(Z4, k).order);
    }

    // factor lists multiply back to the order
    auto c = cohomology_order_closed(G22, 3);
    BigInt prod = 1;
    for (auto& [m, e] : c.factors) prod *= big_pow(m, e);
    CHECK(prod == c.order);

    CHECK(cohomology_order_bruteforce(Z2, 1) == 2);
    CHECK(cohomology_order_bruteforce(Z2, 2) == 1);
    CHECK(cohomology_order_bruteforce(Z2, 3) == 2);
    CHECK(cohomology_order_bruteforce(Z3, 1) == 3);
    CHECK(cohomology_order_bruteforce(Z3, 2) == 1);
    CHECK(cohomology_order_bruteforce(Z3, 3) == 3);
    CHECK(cohomology_order_bruteforce(Z4, 1) == 4);
    CHECK(cohomology_order_bruteforce(Z4, 2) == 1);
    CHECK(cohomology_order_bruteforce(G22, 1) == 4);
    CHECK(cohomology_order_bruteforce(G22, 2) == 2);
    CHECK(cohomology_order_bruteforce(G22, 3) == 8);

    CHECK_THROWS_AS(cohomology_order_bruteforce(group_new({2, 2}), 3, 100), BudgetExceeded);
}

TEST_CASE("spec serialization round trips and validates") {
    auto G = group_new({2, 4});
    auto spec = mkspec(G, 3, {{"1^3", 1}, {"2^3", 3}});
    auto j = spec_to_json(spec);
    auto back = spec_from_json(j);
    CHECK(back.group.moduli == spec.group.moduli);
    CHECK(back.degree == spec.degree);
    CHECK(back.coeffs == spec.coeffs);

    // group and degree may come from outside but must agree when duplicated
    json partial = {{"coeffs", {{"1^3", 1}}}};
    auto s2 = spec_from_json(partial, G, 3);
    CHECK(s2.coeffs.size() == 1);
    CHECK_THROWS_AS(spec_from_json(partial), ParseError);
    CHECK_THROWS_AS(spec_from_json(partial, G, std::nullopt), ParseError);
    json conflict = {{"group", {2, 2}}, {"degree", 3}, {"coeffs", json::object()}};
    CHECK_THROWS_AS(spec_from_json(conflict, G, 3), ParseError);

    json badkey = {{"coeffs", {{"2^1 1^2", 1}}}};
    CHECK_THROWS_AS(spec_from_json(badkey, G, 3), ParseError);
    json evenkey = {{"coeffs", {{"1^2 2^1", 1}}}};
    CHECK_THROWS_AS(spec_from_json(evenkey, G, 3), ParseError);
    json range = {{"coeffs", {{"2^3", 4}}}};
    CHECK_THROWS_AS(spec_from_json(range, G, 3), ParseError);
    json zero = {{"coeffs", {{"1^3", 0}}}};
    CHECK(spec_from_json(zero, G, 3).coeffs.empty());

    CHECK(group_from_json(group_to_json(G)).moduli == G.moduli);
    CHECK_THROWS_AS(group_from_json(json{2, 3}), DivisibilityViolation);
    auto p = phase_to_json(phase_make(3, 4));
    CHECK(p.at("num") == 3);
    CHECK(p.at("den") == 4);
}
