// Command-line surface: constructions, automorphism groups, conjugacy sets,
// invariant bases, the invariant-pair map builder, locus verdicts, the
// degree-2 census, and the claim-verification selftest.
//
// Exit codes: 0 success, 1 a verified claim failed, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "p1dyn/expr.hpp"
#include "p1dyn/jsonio.hpp"
#include "p1dyn/selftest.hpp"

using namespace p1dyn;

namespace {

struct CommonOpts {
    uint64_t p = 0;
    uint32_t k = 1;
    uint64_t q = 0;
    std::string out;
    std::string format = "json";
};

Field working_field(const CommonOpts& c) {
    if (c.q != 0) return create_field_q(c.q);
    if (c.p == 0) throw CLI::ValidationError("--p or --q is required");
    return create_field(c.p, c.k);
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream os(c.out);
        if (!os) throw std::runtime_error("cannot open output file " + c.out);
        os << text;
    }
}

ConstructionRecord build_record(const std::string& kind, Field F, uint64_t q, long long a_key,
                                long long b_key, long long c_key, long long d_key, uint64_t n,
                                const std::string& lambda_basis, const std::string& platonic) {
    auto key_elem = [&](long long key) { return F->from_key(static_cast<uint64_t>(key)); };
    if (kind == "power-map") return power_map(key_elem(a_key), q);
    if (kind == "affine-psi") return affine_psi_map(key_elem(a_key), key_elem(b_key), q);
    if (kind == "fractional-psi")
        return fractional_psi_map(key_elem(a_key), key_elem(b_key), key_elem(c_key),
                                  key_elem(d_key), q);
    if (kind == "semi-elementary") {
        std::vector<Fe> basis;
        std::stringstream ss(lambda_basis);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) basis.push_back(F->from_key(std::stoull(item)));
        if (basis.empty()) basis.push_back(F->one());
        return semi_elementary_map(F, basis, n);
    }
    if (kind == "psl2") return psl2_map(q != 0 ? q : F->q);
    if (kind == "psl2-prime") return psl2_prime_map(F->p, key_elem(c_key == 0 ? 1 : c_key));
    if (kind == "cyclic") return cyclic_map(n, F);
    if (kind == "dihedral") {
        std::optional<Fe> a;
        if (a_key != 0) a = key_elem(a_key);
        return dihedral_map(n, F, a);
    }
    if (kind == "platonic") {
        Platonic pk = platonic == "A4" ? Platonic::A4
                      : platonic == "S4" ? Platonic::S4
                                         : Platonic::A5;
        if (platonic != "A4" && platonic != "S4" && platonic != "A5")
            throw CLI::ValidationError("--kind must be A4, S4 or A5");
        return platonic_map(pk, F->p);
    }
    throw CLI::ValidationError("unknown construction: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamical systems on the projective line over finite fields"};
    app.require_subcommand(1);

    CommonOpts common;
    int exit_code = 0;

    // ---- construct ----
    auto* sc_construct = app.add_subcommand("construct", "build a catalog map and verify its group");
    std::string cons_name, lambda_basis, platonic_kind = "A4";
    long long ca = 0, cb = 0, cc = 0, cd = 0;  // 0 = unspecified for dihedral --a
    uint64_t cn = 2;
    sc_construct->add_option("name", cons_name,
                             "power-map | affine-psi | fractional-psi | semi-elementary | psl2 | "
                             "psl2-prime | cyclic | dihedral | platonic")
        ->required();
    sc_construct->add_option("--p", common.p, "characteristic");
    sc_construct->add_option("--k", common.k, "extension degree of the working field");
    sc_construct->add_option("--q", common.q, "prime power (working field and/or map parameter)");
    sc_construct->add_option("--a", ca, "parameter a (element key)");
    sc_construct->add_option("--b", cb, "parameter b (element key)");
    sc_construct->add_option("--c", cc, "parameter c (element key)");
    sc_construct->add_option("--d", cd, "parameter d (element key)");
    sc_construct->add_option("--n", cn, "order parameter n");
    sc_construct->add_option("--lambda-basis", lambda_basis,
                             "comma-separated element keys spanning Lambda");
    sc_construct->add_option("--kind", platonic_kind, "platonic kind: A4 | S4 | A5");
    sc_construct->add_option("--out", common.out, "output file");
    sc_construct->callback([&] {
        Field F = working_field(common);
        ConstructionRecord rec =
            build_record(cons_name, F, common.q != 0 ? common.q : F->q, ca, cb, cc, cd, cn,
                         lambda_basis, platonic_kind);
        VerifyOutcome outcome = verify_record(rec);
        emit(common, record_to_json(rec, outcome).dump(2));
        if (!outcome.ok) exit_code = 1;
    });

    // ---- aut ----
    auto* sc_aut = app.add_subcommand("aut", "automorphism group of a map");
    std::string aut_map, aut_map_json;
    int aut_ext = 0;
    uint64_t aut_oracle = 9;
    bool aut_brute = false;
    sc_aut->add_option("--map", aut_map, "dehomogenized rational expression in z");
    sc_aut->add_option("--map-json", aut_map_json,
                       "map as JSON {degree, num, den, field} (alternative to --map)");
    sc_aut->add_option("--p", common.p, "characteristic");
    sc_aut->add_option("--k", common.k, "extension degree of the coefficient field");
    sc_aut->add_option("--ext-degree", aut_ext, "explicit search extension degree");
    sc_aut->add_option("--oracle-bound", aut_oracle, "brute-force bound");
    sc_aut->add_flag("--brute", aut_brute, "use the brute-force method");
    sc_aut->add_option("--out", common.out, "output file");
    sc_aut->callback([&] {
        RatMap f;
        if (!aut_map_json.empty()) {
            f = ratmap_from_json(nlohmann::json::parse(aut_map_json));
        } else if (!aut_map.empty()) {
            if (common.p == 0) throw CLI::ValidationError("--p is required with --map");
            f = parse_ratmap(aut_map, create_field(common.p, common.k));
        } else {
            throw CLI::ValidationError("one of --map or --map-json is required");
        }
        Field F = f.field();
        AutResult res;
        if (aut_brute) {
            Field K = aut_ext > 0 ? create_field(F->p, F->k * aut_ext) : F;
            res = aut_group_bruteforce(f, K, aut_oracle * aut_oracle);
        } else if (aut_ext > 0) {
            res = aut_group(f, create_field(F->p, F->k * aut_ext));
        } else {
            res = aut_group_auto(f);
        }
        emit(common, aut_to_json(res).dump(2));
    });

    // ---- conj ----
    auto* sc_conj = app.add_subcommand("conj", "all conjugations from f to g over a search field");
    std::string conj_f, conj_g;
    int conj_ext = 2;
    sc_conj->add_option("--f", conj_f, "first map")->required();
    sc_conj->add_option("--g", conj_g, "second map")->required();
    sc_conj->add_option("--p", common.p, "characteristic")->required();
    sc_conj->add_option("--k", common.k, "extension degree of the coefficient field");
    sc_conj->add_option("--ext-degree", conj_ext, "search extension degree");
    sc_conj->add_option("--out", common.out, "output file");
    sc_conj->callback([&] {
        Field F = create_field(common.p, common.k);
        RatMap f = parse_ratmap(conj_f, F);
        RatMap g = parse_ratmap(conj_g, F);
        Field K = create_field(F->p, F->k * conj_ext);
        auto set = conj_set(f, g, K);
        nlohmann::json j;
        j["schema_version"] = kSchemaVersion;
        j["search_field"] = field_to_json(K);
        j["count"] = set.size();
        nlohmann::json elems = nlohmann::json::array();
        for (const auto& m : set) elems.push_back(mobius_to_json(m));
        j["elements"] = std::move(elems);
        emit(common, j.dump(2));
    });

    // ---- invariants ----
    auto* sc_inv = app.add_subcommand("invariants", "relative-invariant basis for a degree range");
    std::string inv_group = "sl2", inv_char = "trivial";
    int deg_min = 0, deg_max = 8;
    sc_inv->add_option("--group", inv_group, "sl2 | gl2");
    sc_inv->add_option("--p", common.p, "characteristic");
    sc_inv->add_option("--k", common.k, "extension degree");
    sc_inv->add_option("--q", common.q, "prime power shortcut for the field");
    sc_inv->add_option("--deg-min", deg_min, "lowest degree");
    sc_inv->add_option("--deg-max", deg_max, "highest degree");
    sc_inv->add_option("--character", inv_char, "trivial | det");
    sc_inv->add_option("--out", common.out, "output file");
    sc_inv->callback([&] {
        Field F = working_field(common);
        MatrixGroup G = inv_group == "gl2" ? matrix_group_gl2(F) : matrix_group_sl2(F);
        Character chi = inv_char == "det" ? Character::det(G) : Character::trivial(G);
        nlohmann::json j;
        j["schema_version"] = kSchemaVersion;
        j["group"] = inv_group;
        j["field"] = field_to_json(F);
        j["character"] = inv_char;
        nlohmann::json per_degree = nlohmann::json::array();
        for (int d = deg_min; d <= deg_max; ++d) {
            auto basis = invariants_of_degree(G, d, chi);
            nlohmann::json jd;
            jd["degree"] = d;
            nlohmann::json bs = nlohmann::json::array();
            for (const auto& b : basis) {
                nlohmann::json coeffs = nlohmann::json::array();
                for (const auto& c : b.coeffs) coeffs.push_back(fe_to_json(c));
                bs.push_back(std::move(coeffs));
            }
            jd["basis"] = std::move(bs);
            per_degree.push_back(std::move(jd));
        }
        j["invariants"] = std::move(per_degree);
        emit(common, j.dump(2));
    });

    // ---- dm ----
    auto* sc_dm = app.add_subcommand("dm", "map from an invariant pair [xF + G_y : yF - G_x]");
    std::string dm_F = "0", dm_G;
    int dm_ext = 0;
    sc_dm->add_option("--F", dm_F, "low-degree invariant (or 0)");
    sc_dm->add_option("--G", dm_G, "high-degree invariant, homogeneous in x and y")->required();
    sc_dm->add_option("--p", common.p, "characteristic");
    sc_dm->add_option("--k", common.k, "extension degree");
    sc_dm->add_option("--q", common.q, "prime power shortcut for the field");
    sc_dm->add_option("--ext-degree", dm_ext, "explicit Aut search extension");
    sc_dm->add_option("--out", common.out, "output file");
    sc_dm->callback([&] {
        Field F = working_field(common);
        HomPoly G = parse_hompoly(dm_G, F);
        HomPoly Fpoly = dm_F == "0" ? HomPoly::zero(F, std::max(G.d - 2, 0))
                                    : parse_hompoly(dm_F, F);
        RatMap f = dm_map(Fpoly, G);
        AutResult aut = dm_ext > 0 ? aut_group(f, create_field(F->p, F->k * dm_ext))
                                   : aut_group_auto(f);
        nlohmann::json j;
        j["schema_version"] = kSchemaVersion;
        j["map"] = ratmap_to_json(f);
        j["aut"] = aut_to_json(aut);
        emit(common, j.dump(2));
    });

    // ---- locus ----
    auto* sc_locus = app.add_subcommand("locus", "automorphism-locus verdict for a moduli point");
    long long s1 = 0, s2 = 0;
    sc_locus->add_option("--p", common.p, "characteristic")->required();
    sc_locus->add_option("--sigma1", s1, "sigma_1 as an integer mod p")->required();
    sc_locus->add_option("--sigma2", s2, "sigma_2 as an integer mod p")->required();
    sc_locus->add_option("--out", common.out, "output file");
    sc_locus->callback([&] {
        Field F = create_field(common.p, 1);
        ModuliPoint pt{F->from_int(s1), F->from_int(s2), F->sub(F->from_int(s1), F->from_int(2))};
        LocusVerdict v = locus_verdict(common.p, pt);
        emit(common, verdict_to_json(common.p, pt, v).dump(2));
    });

    // ---- census ----
    auto* sc_census = app.add_subcommand("census", "exhaustive degree-2 census over GF(q)");
    CensusOptions copt;
    sc_census->add_option("--q", copt.q, "field size (2, 3, 4 or 5)")->required();
    sc_census->add_option("--ext-degree", copt.ext_degree, "Aut search extension degree");
    sc_census->add_option("--oracle-bound", copt.oracle_bound,
                          "brute-force cross-check bound on q");
    sc_census->add_option("--jobs", copt.jobs, "worker threads (1 = serial reference)");
    sc_census->add_option("--out", common.out, "output file");
    sc_census->add_option("--format", common.format, "json | csv");
    sc_census->callback([&] {
        CensusTable t = census(copt);
        if (common.format == "csv")
            emit(common, t.to_csv());
        else
            emit(common, census_to_json(t).dump(2));
    });

    // ---- selftest ----
    auto* sc_self = app.add_subcommand("selftest", "run the full claim-verification suite");
    int self_jobs = 0;
    sc_self->add_option("--jobs", self_jobs, "census worker threads");
    sc_self->callback([&] {
        selftest::Options o;
        o.jobs = self_jobs;
        int failures = selftest::run_and_report(std::cout, o);
        if (failures > 0) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
