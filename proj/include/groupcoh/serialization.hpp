#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/bar.hpp"
#include "groupcoh/braiding.hpp"
#include "groupcoh/cocycles.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/koszul.hpp"
#include "groupcoh/phase.hpp"

namespace groupcoh {

using json = nlohmann::json;

inline json group_to_json(const FiniteAbelianGroup& G) {
    return json(G.moduli);
}

inline FiniteAbelianGroup group_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("group must be an array of moduli");
    std::vector<std::int64_t> moduli;
    for (auto& v : j) {
        if (!v.is_number_integer()) throw ParseError("group moduli must be integers");
        moduli.push_back(v.get<std::int64_t>());
    }
    return group_new(moduli);
}

inline json phase_to_json(const PhaseExponent& p) {
    return json{{"num", p.num}, {"den", p.den}};
}

inline json spec_to_json(const CocycleSpec& spec) {
    json coeffs = json::object();
    for (auto& [idx, a] : spec.coeffs)
        if (a != 0) coeffs[koszul_key(idx)] = a;
    return json{{"group", group_to_json(spec.group)},
                {"degree", spec.degree},
                {"coeffs", coeffs}};
}

/**
 * Reads a cocycle representative. "group" and "degree" may be omitted when
 * supplied externally; when present they must agree. Every stored key must be
 * a known degree-matching index with odd leading multiplicity, and values
 * must already be reduced.
 */
inline CocycleSpec spec_from_json(const json& j,
                                  std::optional<FiniteAbelianGroup> group = std::nullopt,
                                  std::optional<std::int64_t> degree = std::nullopt) {
    if (!j.is_object()) throw ParseError("cocycle spec must be a JSON object");
    std::optional<FiniteAbelianGroup> G = std::move(group);
    if (j.contains("group")) {
        FiniteAbelianGroup inner = group_from_json(j.at("group"));
        if (G && G->moduli != inner.moduli)
            throw ParseError("group in spec disagrees with the requested group");
        G = inner;
    }
    if (!G) throw ParseError("cocycle spec is missing the group");
    std::optional<std::int64_t> k = degree;
    if (j.contains("degree")) {
        if (!j.at("degree").is_number_integer()) throw ParseError("degree must be an integer");
        std::int64_t inner = j.at("degree").get<std::int64_t>();
        if (k && *k != inner) throw ParseError("degree in spec disagrees with the requested degree");
        k = inner;
    }
    if (!k) throw ParseError("cocycle spec is missing the degree");

    CocycleSpec spec{*G, *k, {}};
    if (j.contains("coeffs")) {
        if (!j.at("coeffs").is_object()) throw ParseError("coeffs must be a JSON object");
        for (auto& [key, value] : j.at("coeffs").items()) {
            KoszulIndex idx = koszul_key_parse(key);
            if (!value.is_number_integer())
                throw ParseError("coefficient for " + key + " must be an integer");
            std::int64_t a = value.get<std::int64_t>();
            if (a != 0) spec.coeffs.emplace(idx, a);
        }
    }
    cocycle_spec_validate(spec);
    return spec;
}

inline json group_ring_to_json(const FiniteAbelianGroup& G, const GroupRingElement& x) {
    json out = json::object();
    for (auto& [g, c] : x.terms) out[elem_to_string(g)] = c.str();
    return out;
}

inline json koszul_chain_to_json(const FiniteAbelianGroup& G, const KoszulChain& chain) {
    json out = json::object();
    for (auto& [idx, coeff] : chain.terms) out[koszul_key(idx)] = group_ring_to_json(G, coeff);
    return out;
}

inline std::string bar_symbol_to_string(const FiniteAbelianGroup& G, const BarSymbol& sym) {
    std::string s = "[";
    for (std::size_t i = 0; i < sym.entries.size(); ++i) {
        if (i) s += "|";
        s += elem_to_string(sym.entries[i]);
    }
    return s + "]";
}

inline json bar_chain_to_json(const FiniteAbelianGroup& G, const BarChain& chain) {
    json out = json::object();
    for (auto& [sym, coeff] : chain.terms)
        out[bar_symbol_to_string(G, sym)] = group_ring_to_json(G, coeff);
    return out;
}

} // namespace groupcoh
