#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "groupcoh/abelian_group.hpp"
#include "groupcoh/bar.hpp"
#include "groupcoh/braiding.hpp"
#include "groupcoh/chain_maps.hpp"
#include "groupcoh/cocycles.hpp"
#include "groupcoh/dw.hpp"
#include "groupcoh/errors.hpp"
#include "groupcoh/koszul.hpp"
#include "groupcoh/serialization.hpp"

namespace {

using groupcoh::json;

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw groupcoh::ParseError("bad integer: " + item);
        } catch (const groupcoh::ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw groupcoh::ParseError("bad integer: " + item);
        }
    }
    if (out.empty()) throw groupcoh::ParseError("empty modulus list");
    return out;
}

groupcoh::FiniteAbelianGroup group_from_flag(const std::string& s) {
    return groupcoh::group_new(groupcoh::invariant_factors(parse_int_list(s)));
}

/// Inline JSON if it looks like an object, otherwise a file path.
json load_params(const std::string& s) {
    std::string text = s;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw groupcoh::ParseError("empty parameter string");
    if (text[first] != '{') {
        std::ifstream in(s);
        if (!in) throw groupcoh::ParseError("cannot open parameter file: " + s);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw groupcoh::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::vector<groupcoh::GroupElement> parse_args_list(const groupcoh::FiniteAbelianGroup& G,
                                                    const std::string& s) {
    std::vector<groupcoh::GroupElement> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) out.push_back(groupcoh::elem_from_string(G, item));
    return out;
}

json big_to_json(const groupcoh::BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

void emit(const json& j, const std::string& format) {
    if (format == "table") {
        for (auto& [key, value] : j.items())
            std::cout << key << "\t" << (value.is_string() ? value.get<std::string>() : value.dump())
                      << "\n";
    } else {
        std::cout << j.dump() << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cocycles, braidings and torus invariants for finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t max_phase = groupcoh::kDefaultPhaseEvalBudget;
    std::uint64_t max_entries = groupcoh::kDefaultMatrixBudget;
    std::string format = "json";
    app.add_option("--max-phase-evals", max_phase, "budget for phase evaluations");
    app.add_option("--max-matrix-entries", max_entries, "budget for dense tables and matrices");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));

    int exit_code = 0;

    // group normalize
    auto* grp = app.add_subcommand("group", "group utilities");
    grp->require_subcommand(1);
    auto* norm = grp->add_subcommand("normalize", "canonical invariant factors");
    std::string norm_moduli;
    norm->add_option("moduli", norm_moduli, "comma-separated moduli")->required();
    norm->callback([&] {
        auto factors = groupcoh::invariant_factors(parse_int_list(norm_moduli));
        emit(json{{"invariant_factors", factors}}, format);
    });

    // cocycle list|eval|verify
    auto* coc = app.add_subcommand("cocycle", "cocycle representatives");
    coc->require_subcommand(1);
    std::string coc_group, coc_params, coc_args;
    std::int64_t coc_degree = 0;

    auto* clist = coc->add_subcommand("list", "free coefficient keys for a degree");
    clist->add_option("--group", coc_group, "group moduli")->required();
    clist->add_option("--degree", coc_degree, "cocycle degree")->required();
    clist->callback([&] {
        auto G = group_from_flag(coc_group);
        json keys = json::object();
        groupcoh::BigInt reps = 1;
        for (auto& idx : groupcoh::cocycle_keys(G, coc_degree)) {
            std::int64_t m = G.moduli[idx.pairs.front().first - 1];
            keys[groupcoh::koszul_key(idx)] = m;
            reps *= m;
        }
        emit(json{{"degree", coc_degree},
                  {"group", groupcoh::group_to_json(G)},
                  {"keys", keys},
                  {"representatives", reps.str()}},
             format);
    });

    auto* ceval = coc->add_subcommand("eval", "evaluate a representative cocycle");
    ceval->add_option("--group", coc_group, "group moduli");
    ceval->add_option("--degree", coc_degree, "cocycle degree");
    ceval->add_option("--params", coc_params, "cocycle spec JSON or file")->required();
    ceval->add_option("--args", coc_args, "semicolon-separated group elements")->required();
    ceval->callback([&] {
        std::optional<groupcoh::FiniteAbelianGroup> G;
        if (!coc_group.empty()) G = group_from_flag(coc_group);
        std::optional<std::int64_t> k;
        if (ceval->count("--degree")) k = coc_degree;
        auto spec = groupcoh::spec_from_json(load_params(coc_params), G, k);
        auto args = parse_args_list(spec.group, coc_args);
        auto phase = groupcoh::eval_cocycle(spec, args);
        emit(json{{"phase", groupcoh::phase_to_string(phase)}}, format);
    });

    auto* cverify = coc->add_subcommand("verify", "check the cocycle identity on the full table");
    cverify->add_option("--group", coc_group, "group moduli");
    cverify->add_option("--degree", coc_degree, "cocycle degree");
    cverify->add_option("--params", coc_params, "cocycle spec JSON or file")->required();
    cverify->callback([&] {
        std::optional<groupcoh::FiniteAbelianGroup> G;
        if (!coc_group.empty()) G = group_from_flag(coc_group);
        std::optional<std::int64_t> k;
        if (cverify->count("--degree")) k = coc_degree;
        auto spec = groupcoh::spec_from_json(load_params(coc_params), G, k);
        auto table = groupcoh::table_from_spec(spec, max_entries);
        bool ok = groupcoh::is_cocycle(table, max_entries);
        emit(json{{"is_cocycle", ok}}, format);
        if (!ok) exit_code = 1;
    });

    // cohomology
    auto* coh = app.add_subcommand("cohomology", "order of H^k(G, k*)");
    std::string coh_group;
    std::int64_t coh_degree = 0;
    bool coh_brute = false;
    coh->add_option("--group", coh_group, "group moduli")->required();
    coh->add_option("--degree", coh_degree, "cohomology degree")->required();
    coh->add_flag("--brute-force", coh_brute, "cross-check against the integral route");
    coh->callback([&] {
        auto G = group_from_flag(coh_group);
        auto closed = groupcoh::cohomology_order_closed(G, coh_degree);
        json factors = json::object();
        for (auto& [m, e] : closed.factors) {
            if (e == 0) continue;
            std::string key = std::to_string(m);
            factors[key] = (factors.contains(key) ? factors[key].get<std::int64_t>() : 0) + e;
        }
        json out{{"factors", factors}, {"order", big_to_json(closed.order)}};
        if (coh_brute) {
            auto brute = groupcoh::cohomology_order_bruteforce(G, coh_degree, max_entries);
            out["order_bruteforce"] = big_to_json(brute);
            out["agrees"] = brute == closed.order;
            if (brute != closed.order) exit_code = 1;
        }
        emit(out, format);
    });

    // chainmap verify
    auto* cm = app.add_subcommand("chainmap", "chain maps between resolutions");
    cm->require_subcommand(1);
    auto* cmv = cm->add_subcommand("verify", "check commutation with the differentials");
    std::string cm_group, cm_direction;
    std::int64_t cm_max_degree = 0;
    cmv->add_option("--group", cm_group, "group moduli")->required();
    cmv->add_option("--direction", cm_direction, "f or g")
        ->required()
        ->check(CLI::IsMember({"f", "g"}));
    cmv->add_option("--max-degree", cm_max_degree, "highest degree to check")->required();
    cmv->callback([&] {
        auto G = group_from_flag(cm_group);
        groupcoh::ChainMapReport report = (cm_direction == "f")
                                              ? groupcoh::verify_chain_map_F(G, cm_max_degree)
                                              : groupcoh::verify_chain_map_G(G, cm_max_degree);
        json out{{"counterexamples", report.counterexamples},
                 {"direction", cm_direction},
                 {"max_degree", cm_max_degree},
                 {"ok", report.ok()}};
        emit(out, format);
        if (!report.ok()) exit_code = 1;
    });

    // braidings
    auto* br = app.add_subcommand("braidings", "classify braidings for a degree-3 cocycle");
    std::string br_group, br_params;
    br->add_option("--group", br_group, "group moduli");
    br->add_option("--params", br_params, "degree-3 cocycle spec JSON or file")->required();
    br->callback([&] {
        std::optional<groupcoh::FiniteAbelianGroup> G;
        if (!br_group.empty()) G = group_from_flag(br_group);
        auto spec = groupcoh::spec_from_json(load_params(br_params), G, std::int64_t{3});
        auto p = groupcoh::three_params_from_spec(spec);
        auto existence = groupcoh::braiding_exists(spec.group, p);
        auto braidings = groupcoh::enumerate_braidings(spec.group, p);
        json gens = json::array();
        for (auto& Q : braidings) {
            json row = json::array();
            for (auto& ph : Q.r) row.push_back(groupcoh::phase_to_json(ph));
            gens.push_back(row);
        }
        emit(json{{"count", braidings.size()},
                  {"exists", existence.exists},
                  {"generators", gens},
                  {"reason", existence.reason}},
             format);
    });

    // dw
    auto* dw = app.add_subcommand("dw", "Dijkgraaf-Witten invariant of the n-torus");
    std::string dw_group, dw_params, dw_method = "both";
    std::int64_t dw_dim = 0;
    dw->add_option("--group", dw_group, "group moduli");
    dw->add_option("--torus-dim", dw_dim, "torus dimension n")->required();
    dw->add_option("--params", dw_params, "degree-n cocycle spec JSON or file")->required();
    dw->add_option("--method", dw_method, "brute, closed or both")
        ->check(CLI::IsMember({"brute", "closed", "both"}));
    dw->callback([&] {
        std::optional<groupcoh::FiniteAbelianGroup> G;
        if (!dw_group.empty()) G = group_from_flag(dw_group);
        auto spec = groupcoh::spec_from_json(load_params(dw_params), G, dw_dim);
        json out;
        if (dw_method == "brute") {
            auto r = groupcoh::dw_bruteforce(spec.group, spec, dw_dim, max_phase);
            out = json{{"method", "brute"}, {"value", r.value.str()}};
        } else if (dw_method == "closed") {
            auto r = groupcoh::dw_closed(spec.group, spec, dw_dim, max_phase);
            out = json{{"method", "closed"}, {"value", r.value.str()}};
        } else {
            auto rb = groupcoh::dw_bruteforce(spec.group, spec, dw_dim, max_phase);
            auto rc = groupcoh::dw_closed(spec.group, spec, dw_dim, max_phase);
            bool agrees = rb.value == rc.value;
            out = json{{"agrees", agrees}, {"method", "both"}, {"value", rb.value.str()}};
            if (!agrees) exit_code = 1;
        }
        emit(out, format);
    });

    // projrep
    auto* pr = app.add_subcommand("projrep", "projective representation dimensions and T^2");
    std::string pr_group, pr_params;
    pr->add_option("--group", pr_group, "group moduli");
    pr->add_option("--params2", pr_params, "degree-2 cocycle spec JSON or file")->required();
    pr->callback([&] {
        std::optional<groupcoh::FiniteAbelianGroup> G;
        if (!pr_group.empty()) G = group_from_flag(pr_group);
        auto spec = groupcoh::spec_from_json(load_params(pr_params), G, std::int64_t{2});
        auto p = groupcoh::two_params_from_spec(spec);
        auto dims = groupcoh::projrep_dims(spec.group, p);
        auto rep = groupcoh::turaev_check(spec.group, p, max_phase);
        emit(json{{"dim", big_to_json(dims.dim)},
                  {"g0", big_to_json(dims.g0)},
                  {"turaev_z_t2", big_to_json(rep.torus_value)}},
             format);
        if (!rep.agrees) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const groupcoh::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const groupcoh::NotACocycle& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const groupcoh::NonIntegral& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const groupcoh::NonSquare& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const groupcoh::ParseError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const groupcoh::InvalidModulus& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const groupcoh::DivisibilityViolation& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const groupcoh::GroupMismatch& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const groupcoh::NonPositiveModulus& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const groupcoh::IndexOutOfRange& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const groupcoh::DegreeMismatch& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const groupcoh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
