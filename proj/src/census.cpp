#include "p1dyn/census.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace p1dyn {

namespace {

struct PointStats {
    uint64_t count = 0;
    uint64_t max_aut = 0;
    uint64_t min_aut = UINT64_MAX;
};

using StatMap = std::map<std::pair<uint64_t, uint64_t>, PointStats>;

// one coefficient 6-tuple; returns false when the pair is degenerate
bool census_one(Field F, Field K, uint64_t idx, uint64_t oracle_bound,
                std::pair<uint64_t, uint64_t>& key_out, uint64_t& aut_out) {
    const uint64_t q = F->q;
    uint64_t t = idx;
    std::array<Fe, 6> c{F->zero(), F->zero(), F->zero(), F->zero(), F->zero(), F->zero()};
    for (int i = 0; i < 6; ++i) {
        c[i] = F->from_key(t % q);
        t /= q;
    }
    HomPoly num{F, 2, {c[0], c[1], c[2]}};
    HomPoly den{F, 2, {c[3], c[4], c[5]}};
    if (num.is_zero() || den.is_zero()) return false;
    if (ratmap_resultant(num, den).is_zero()) return false;
    RatMap f = normalize(num, den);
    if (f.degree() != 2) return false;  // unreachable once the resultant is nonzero
    ModuliPoint pt = sigma_invariants(f);
    key_out = {elem_key(pt.s1), elem_key(pt.s2)};
    AutResult aut = aut_group(f, K);
    aut_out = aut.order();
    if (q <= oracle_bound) {
        // brute-force cross-check over the base field: the base-rational part
        // of the computed group must match exactly
        AutResult brute = aut_group_bruteforce(f, F, q);
        size_t rational = 0;
        for (const auto& m : aut.group.elements) {
            bool in_base = true;
            for (const Fe* e : {&m.a, &m.b, &m.c, &m.d})
                if (!in_subfield(*e, F)) in_base = false;
            if (in_base) ++rational;
        }
        if (rational != brute.order())
            throw ModuliError("census oracle disagreement at tuple " + std::to_string(idx));
    }
    return true;
}

CensusTable finalize(const StatMap& stats, const CensusOptions& opt, Field F) {
    CensusTable table;
    table.q = opt.q;
    table.ext_degree = opt.ext_degree;
    for (const auto& [key, st] : stats) {
        CensusRow row;
        row.s1_key = key.first;
        row.s2_key = key.second;
        row.count = st.count;
        row.max_aut_order = st.max_aut;
        row.min_aut_order = st.min_aut;
        ModuliPoint pt{F->from_key(key.first), F->from_key(key.second), F->zero()};
        pt.s3 = F->sub(pt.s1, F->from_int(2));
        LocusVerdict v = locus_verdict(F->p, pt);
        row.on_S = v.on_S;
        row.on_Per11 = v.on_Per11;
        row.special = v.special;
        row.predicted = v.predicted;
        row.agrees = st.max_aut == v.predicted_order();
        table.rows.push_back(row);
    }
    return table;
}

void merge_into(StatMap& into, const std::pair<uint64_t, uint64_t>& key, uint64_t aut) {
    PointStats& st = into[key];
    ++st.count;
    st.max_aut = std::max(st.max_aut, aut);
    st.min_aut = std::min(st.min_aut, aut);
}

}  // namespace

namespace {

void check_bounds(const CensusOptions& opt) {
    if (opt.q < 2 || opt.q > 5) throw ModuliError("census supports q in {2, 3, 4, 5}");
    if (opt.ext_degree < 1 || opt.ext_degree > 12)
        throw ModuliError("census extension degree must be in [1, 12]");
}

}  // namespace

CensusTable census_serial(const CensusOptions& opt) {
    check_bounds(opt);
    Field F = create_field_q(opt.q);
    Field K = create_field(F->p, F->k * opt.ext_degree);
    const uint64_t total = [&] {
        uint64_t t = 1;
        for (int i = 0; i < 6; ++i) t *= opt.q;
        return t;
    }();
    StatMap stats;
    for (uint64_t idx = 0; idx < total; ++idx) {
        std::pair<uint64_t, uint64_t> key;
        uint64_t aut = 0;
        if (census_one(F, K, idx, opt.oracle_bound, key, aut)) merge_into(stats, key, aut);
    }
    return finalize(stats, opt, F);
}

CensusTable census_parallel(const CensusOptions& opt) {
#ifndef _OPENMP
    return census_serial(opt);
#else
    check_bounds(opt);
    Field F = create_field_q(opt.q);
    Field K = create_field(F->p, F->k * opt.ext_degree);
    // warm the embedding caches before the parallel region
    (void)embed(F->one(), K);
    const uint64_t total = [&] {
        uint64_t t = 1;
        for (int i = 0; i < 6; ++i) t *= opt.q;
        return t;
    }();
    int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
    std::vector<StatMap> partial(threads);
    bool failed = false;
    std::string error;
#pragma omp parallel num_threads(threads)
    {
        int tid = omp_get_thread_num();
        StatMap& mine = partial[tid];
#pragma omp for schedule(dynamic, 64)
        for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
            if (failed) continue;
            try {
                std::pair<uint64_t, uint64_t> key;
                uint64_t aut = 0;
                if (census_one(F, K, static_cast<uint64_t>(idx), opt.oracle_bound, key, aut))
                    merge_into(mine, key, aut);
            } catch (const std::exception& e) {
#pragma omp critical
                {
                    failed = true;
                    error = e.what();
                }
            }
        }
    }
    if (failed) throw ModuliError("census worker failed: " + error);
    StatMap stats;
    for (const auto& m : partial)
        for (const auto& [key, st] : m) {
            PointStats& into = stats[key];
            into.count += st.count;
            into.max_aut = std::max(into.max_aut, st.max_aut);
            into.min_aut = std::min(into.min_aut == 0 ? UINT64_MAX : into.min_aut, st.min_aut);
        }
    return finalize(stats, opt, F);
#endif
}

CensusTable census(const CensusOptions& opt) {
    if (opt.jobs == 1) return census_serial(opt);
    return census_parallel(opt);
}

bool CensusTable::all_agree() const {
    for (const auto& r : rows)
        if (!r.agrees) return false;
    return true;
}

const CensusRow* CensusTable::row(uint64_t s1_key, uint64_t s2_key) const {
    for (const auto& r : rows)
        if (r.s1_key == s1_key && r.s2_key == s2_key) return &r;
    return nullptr;
}

std::string CensusTable::to_csv() const {
    std::ostringstream os;
    os << "sigma1,sigma2,count,max_aut_order,on_S,on_Per11,special,predicted,agrees\n";
    auto special_str = [](SpecialPoint s) {
        switch (s) {
            case SpecialPoint::None: return "none";
            case SpecialPoint::Cusp: return "cusp";
            case SpecialPoint::Char2AlphaTwoPoint: return "alpha2";
            case SpecialPoint::TripleOne: return "triple-one";
        }
        return "none";
    };
    auto pred_str = [](PredictedAut p) {
        switch (p) {
            case PredictedAut::Trivial: return "trivial";
            case PredictedAut::C2: return "C2";
            case PredictedAut::S3: return "S3";
            case PredictedAut::TrivialAlpha2: return "trivial-alpha2";
        }
        return "trivial";
    };
    for (const auto& r : rows) {
        os << r.s1_key << ',' << r.s2_key << ',' << r.count << ',' << r.max_aut_order << ','
           << (r.on_S ? 1 : 0) << ',' << (r.on_Per11 ? 1 : 0) << ',' << special_str(r.special)
           << ',' << pred_str(r.predicted) << ',' << (r.agrees ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace p1dyn
