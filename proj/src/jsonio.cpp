#include "p1dyn/jsonio.hpp"

namespace p1dyn {

using nlohmann::json;

json field_to_json(Field F) {
    json j;
    j["p"] = F->p;
    j["k"] = F->k;
    j["modulus"] = F->modulus;
    return j;
}

json fe_to_json(const Fe& e) { return json(e.c); }

json mobius_to_json(const Mobius& m) {
    return json::array({fe_to_json(m.a), fe_to_json(m.b), fe_to_json(m.c), fe_to_json(m.d)});
}

json group_to_json(const GroupDesc& g) {
    json j;
    j["field"] = field_to_json(g.F);
    j["label"] = g.label.str();
    j["order"] = g.order();
    json elems = json::array();
    for (const auto& m : g.elements) elems.push_back(mobius_to_json(m));
    j["elements"] = std::move(elems);
    if (g.ext_degree_used > 1) j["extension_degree_used"] = g.ext_degree_used;
    return j;
}

json ratmap_to_json(const RatMap& f) {
    json j;
    j["degree"] = f.degree();
    json num = json::array(), den = json::array();
    for (const auto& c : f.num.coeffs) num.push_back(fe_to_json(c));
    for (const auto& c : f.den.coeffs) den.push_back(fe_to_json(c));
    j["num"] = std::move(num);
    j["den"] = std::move(den);
    j["field"] = field_to_json(f.field());
    j["pretty"] = f.str();
    return j;
}

json aut_to_json(const AutResult& a) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = a.group.label.str();
    j["order"] = a.order();
    json elems = json::array();
    for (const auto& m : a.group.elements) elems.push_back(mobius_to_json(m));
    j["elements"] = std::move(elems);
    j["search_field"] = field_to_json(a.search_field);
    j["method"] = a.method == AutMethod::InvariantSet ? "invariant-set" : "brute-force";
    j["certified_complete"] = a.certified_complete;
    if (a.extension_cap_hit) j["extension_cap_hit"] = true;
    return j;
}

json record_to_json(const ConstructionRecord& rec, const VerifyOutcome& outcome) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = rec.name;
    j["parameters"] = rec.parameters;
    j["map"] = ratmap_to_json(rec.map);
    j["claim"] = rec.claim;
    j["claimed_group"] = group_to_json(rec.claimed_group);
    j["aut"] = aut_to_json(outcome.aut);
    j["verified"] = outcome.ok;
    if (rec.conjugator) j["conjugator"] = mobius_to_json(*rec.conjugator);
    if (rec.non_member_witness) j["non_member_witness"] = mobius_to_json(*rec.non_member_witness);
    if (!rec.multiplier_spectrum_fixed.empty())
        j["multiplier_spectrum_fixed"] = rec.multiplier_spectrum_fixed;
    if (!rec.multiplier_spectrum_period2.empty())
        j["multiplier_spectrum_period2"] = rec.multiplier_spectrum_period2;
    return j;
}

json verdict_to_json(uint64_t p, const ModuliPoint& pt, const LocusVerdict& v) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["p"] = p;
    j["sigma1"] = fe_to_json(pt.s1);
    j["sigma2"] = fe_to_json(pt.s2);
    j["on_S"] = v.on_S;
    j["on_Per11"] = v.on_Per11;
    switch (v.special) {
        case SpecialPoint::None: j["special"] = "none"; break;
        case SpecialPoint::Cusp: j["special"] = "cusp"; break;
        case SpecialPoint::Char2AlphaTwoPoint: j["special"] = "alpha2"; break;
        case SpecialPoint::TripleOne: j["special"] = "triple-one"; break;
    }
    switch (v.predicted) {
        case PredictedAut::Trivial: j["predicted_aut"] = "trivial"; break;
        case PredictedAut::C2: j["predicted_aut"] = "C2"; break;
        case PredictedAut::S3: j["predicted_aut"] = "S3"; break;
        case PredictedAut::TrivialAlpha2: j["predicted_aut"] = "trivial-alpha2"; break;
    }
    j["predicted_order"] = v.predicted_order();
    return j;
}

Field field_from_json(const json& j) {
    uint64_t p = j.at("p").get<uint64_t>();
    uint32_t k = j.at("k").get<uint32_t>();
    Field F = create_field(p, k);
    if (j.contains("modulus")) {
        auto mod = j.at("modulus").get<std::vector<uint32_t>>();
        if (mod != F->modulus)
            throw FieldError("field modulus does not match the deterministic convention");
    }
    return F;
}

Fe fe_from_json(const json& j, Field F) {
    Fe e = F->zero();
    auto coeffs = j.get<std::vector<long long>>();
    if (coeffs.size() > F->k) throw FieldError("coefficient vector longer than the degree");
    for (size_t i = 0; i < coeffs.size(); ++i) {
        long long r = coeffs[i] % static_cast<long long>(F->p);
        if (r < 0) r += F->p;
        e.c[i] = static_cast<uint32_t>(r);
    }
    return e;
}

RatMap ratmap_from_json(const json& j) {
    Field F = field_from_json(j.at("field"));
    int d = j.at("degree").get<int>();
    auto read_poly = [&](const json& arr) {
        HomPoly h = HomPoly::zero(F, d);
        if (static_cast<int>(arr.size()) != d + 1)
            throw RatMapError("coefficient count does not match the degree");
        for (int i = 0; i <= d; ++i) h.coeffs[i] = fe_from_json(arr.at(i), F);
        return h;
    };
    return normalize(read_poly(j.at("num")), read_poly(j.at("den")));
}

json census_to_json(const CensusTable& t) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["q"] = t.q;
    j["ext_degree"] = t.ext_degree;
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        row["sigma1"] = r.s1_key;
        row["sigma2"] = r.s2_key;
        row["count"] = r.count;
        row["max_aut_order"] = r.max_aut_order;
        row["min_aut_order"] = r.min_aut_order;
        row["on_S"] = r.on_S;
        row["on_Per11"] = r.on_Per11;
        row["agrees"] = r.agrees;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["all_agree"] = t.all_agree();
    return j;
}

}  // namespace p1dyn
