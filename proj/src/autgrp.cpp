#include "p1dyn/autgrp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace p1dyn {

namespace {

struct Buckets {
    // sorted bucket key -> points sorted by key; keys are structural (no
    // absolute point data) so conjugacy search can match buckets of f and g
    std::map<std::vector<uint64_t>, std::vector<ProjPoint>> by_key;
    bool fixed_split = false;
    size_t total = 0;

    void add(std::vector<uint64_t> key, const ProjPoint& P) {
        auto& v = by_key[std::move(key)];
        for (const auto& q : v)
            if (q == P) return;
        v.push_back(P);
        ++total;
    }
    bool contains(const ProjPoint& P) const {
        for (const auto& [k, v] : by_key)
            for (const auto& q : v)
                if (q == P) return true;
        return false;
    }
    void sort_points() {
        for (auto& [k, v] : by_key) std::sort(v.begin(), v.end(), point_less);
    }
};

int total_multiplicity(const std::vector<PointWithMult>& pts) {
    int s = 0;
    for (const auto& pm : pts) s += pm.mult;
    return s;
}

// Distinguished points of g over K: fixed points bucketed by (multiplier,
// multiplicity); if fewer than 3 points, period-2 points bucketed by
// (multiplier of g^2, multiplicity, preimage count); if still fewer than 3,
// preimages of fixed points to depth 2 bucketed by (parent bucket,
// ramification index). Sets whose defining polynomial does not split in K are
// skipped and clear the completeness flag.
Buckets distinguished_points(const RatMap& g, Field K) {
    Buckets B;
    RatMap gK = g.embedded(K);
    auto fps = fixed_points(gK, K);
    B.fixed_split = total_multiplicity(fps) == g.degree() + 1;
    for (const auto& pm : fps) {
        Fe mu = multiplier(gK, pm.P);
        B.add({0, elem_key(mu), static_cast<uint64_t>(pm.mult)}, pm.P);
    }
    if (B.total < 3) {
        // period-2 points; usable only when the period-2 divisor is complete
        // over K, otherwise the set is skipped (it is then simply not used)
        RatMap g2 = compose(gK, gK);
        auto per2 = fixed_points(g2, K);
        bool per2_split = total_multiplicity(per2) == g2.degree() + 1;
        std::vector<PointWithMult> fresh;
        for (const auto& pm : per2)
            if (!B.contains(pm.P)) fresh.push_back(pm);
        if (per2_split && !fresh.empty()) {
            bool pre_split = true;
            std::vector<uint64_t> counts;
            for (const auto& pm : fresh) {
                auto pre = preimages(gK, pm.P, K);
                if (total_multiplicity(pre) != g.degree()) pre_split = false;
                counts.push_back(pre.size());
            }
            for (size_t i = 0; i < fresh.size(); ++i) {
                Fe mu2 = multiplier(g2, fresh[i].P);
                std::vector<uint64_t> key{1, elem_key(mu2),
                                          static_cast<uint64_t>(fresh[i].mult)};
                if (pre_split) key.push_back(counts[i]);
                B.add(std::move(key), fresh[i].P);
            }
        }
    }
    if (B.total < 3) {
        // preimage trees of the fixed points, depth 1 then depth 2; a set is
        // used only when its defining polynomial splits completely in K
        std::vector<std::pair<std::vector<uint64_t>, std::vector<ProjPoint>>> frontier;
        for (const auto& [key, pts] : B.by_key)
            if (key[0] == 0) frontier.push_back({key, pts});
        for (int depth = 1; depth <= 2 && B.total < 3; ++depth) {
            std::vector<std::pair<std::vector<uint64_t>, std::vector<ProjPoint>>> next;
            for (const auto& [pkey, pts] : frontier) {
                for (const auto& P : pts) {
                    auto pre = preimages(gK, P, K);
                    if (total_multiplicity(pre) != g.degree()) continue;
                    for (const auto& pm : pre) {
                        if (B.contains(pm.P)) continue;
                        std::vector<uint64_t> key{static_cast<uint64_t>(1 + depth)};
                        key.insert(key.end(), pkey.begin(), pkey.end());
                        key.push_back(static_cast<uint64_t>(pm.mult));
                        B.add(key, pm.P);
                        next.push_back({key, {pm.P}});
                    }
                }
            }
            frontier = std::move(next);
        }
    }
    B.sort_points();
    return B;
}

// All alpha with f^alpha = g generated from bucket-preserving triples:
// base triple from g's distinguished points, images from f's matching
// buckets. For aut computation pass f = g.
std::vector<Mobius> bucket_candidates_verified(const RatMap& f, const RatMap& g, Field K,
                                               const Buckets& fb, const Buckets& gb) {
    RatMap fK = f.embedded(K), gK = g.embedded(K);
    // base triple: prefer small buckets for a small candidate product
    struct Ref {
        const std::vector<uint64_t>* key;
        ProjPoint P;
        size_t bucket_size;
    };
    std::vector<Ref> order;
    for (const auto& [key, pts] : gb.by_key)
        for (const auto& P : pts) order.push_back({&key, P, pts.size()});
    std::stable_sort(order.begin(), order.end(), [](const Ref& a, const Ref& b) {
        if (a.bucket_size != b.bucket_size) return a.bucket_size < b.bucket_size;
        if (*a.key != *b.key) return *a.key < *b.key;
        return point_less(a.P, b.P);
    });
    if (order.size() < 3) return {};
    std::array<Ref, 3> base{order[0], order[1], order[2]};
    std::array<const std::vector<ProjPoint>*, 3> targets{};
    for (int i = 0; i < 3; ++i) {
        auto it = fb.by_key.find(*base[i].key);
        if (it == fb.by_key.end()) return {};
        targets[i] = &it->second;
    }
    std::set<std::array<uint64_t, 4>> seen;
    std::vector<Mobius> out;
    std::array<ProjPoint, 3> src{base[0].P, base[1].P, base[2].P};
    for (const auto& Q1 : *targets[0])
        for (const auto& Q2 : *targets[1]) {
            if (Q2 == Q1) continue;
            for (const auto& Q3 : *targets[2]) {
                if (Q3 == Q1 || Q3 == Q2) continue;
                Mobius alpha = mobius_from_three_points(src, {Q1, Q2, Q3});
                if (!seen.insert(alpha.key()).second) continue;
                if (conjugate(fK, alpha) == gK) out.push_back(alpha);
            }
        }
    return sort_unique(std::move(out));
}

}  // namespace

AutResult aut_group(const RatMap& f, Field search) {
    if (f.degree() < 2) throw AutError("aut_group requires degree >= 2");
    RatMap g = f.embedded(search);
    Buckets B = distinguished_points(g, search);
    AutResult res;
    res.search_field = search;
    res.method = AutMethod::InvariantSet;
    std::vector<Mobius> elems;
    if (B.total >= 3) {
        elems = bucket_candidates_verified(g, g, search, B, B);
    }
    if (elems.empty()) elems.push_back(Mobius::identity(search));
    GroupDesc gd = group_closure(elems);
    // every element must verify exactly
    for (const auto& m : gd.elements)
        if (conjugate(g, m) != g) throw AutError("closure produced a non-automorphism");
    res.group = std::move(gd);
    res.certified_complete = B.total >= 3 && B.fixed_split;
    return res;
}

Field aut_search_field(const RatMap& f, int ext_cap, bool* cap_hit) {
    Field F = f.field();
    bool hit = false;
    long long m = 1;
    // the extension must also stay below the field-size bound
    {
        int size_cap = 0;
        uint64_t q = 1;
        const uint64_t bound = 1ull << 31;
        while (size_cap < ext_cap) {
            bool overflow = false;
            for (uint32_t i = 0; i < F->k; ++i) {
                if (q > bound / F->p) {
                    overflow = true;
                    break;
                }
                q *= F->p;
            }
            if (overflow || q >= bound) break;
            ++size_cap;
        }
        ext_cap = std::max(1, std::min(ext_cap, size_cap));
    }
    auto fold = [&](const Poly& u, bool flag_on_clamp) {
        if (poly_deg(u) < 1) return false;
        int d = poly_splitting_degree(u, ext_cap);
        long long l = std::lcm(m, static_cast<long long>(d));
        if (l > ext_cap) {
            if (flag_on_clamp) hit = true;
            return false;
        }
        m = l;
        return true;
    };
    HomPoly fix_form = fixed_point_form(f);
    Poly fix = fix_form.dehomogenize();
    fold(fix, true);
    // distinct fixed points over the algebraic closure
    int distinct_geo = fix_form.d - poly_deg(fix) > 0 ? 1 : 0;
    if (poly_deg(fix) >= 1) distinct_geo += poly_deg(poly_radical(fix));
    if (distinct_geo < 3) {
        // widen along the preimage trees first (cheap extensions), and fall
        // back to the period-2 divisor only if the trees cannot reach three
        // points; mirrors the point engine's actual needs
        bool per2_tried = false;
        for (int pass = 0; pass < 4; ++pass) {
            Field K0 = create_field(F->p, static_cast<uint32_t>(F->k * m));
            RatMap g = f.embedded(K0);
            Buckets B = distinguished_points(g, K0);
            if (B.total >= 3 && B.fixed_split) break;
            long long before = m;
            for (const auto& [key, pts] : B.by_key) {
                for (const auto& P : pts) {
                    HomPoly form = hp_sub(hp_scale(g.num, P.y), hp_scale(g.den, P.x));
                    Poly u = form.dehomogenize();
                    if (poly_deg(u) < 1) continue;
                    long long d = poly_splitting_degree(u, ext_cap);
                    long long l = m * d >= 1 ? std::lcm(m, m * d) : m;
                    if (l > ext_cap) hit = true;
                    else m = l;
                }
            }
            if (m == before) {
                if (per2_tried) break;
                per2_tried = true;
                if (!fold(fixed_point_form(compose(f, f)).dehomogenize(), true)) break;
            }
        }
    }
    if (cap_hit) *cap_hit = hit;
    uint64_t total_k = static_cast<uint64_t>(F->k) * static_cast<uint64_t>(m);
    return create_field(F->p, static_cast<uint32_t>(total_k));
}

AutResult aut_group_auto(const RatMap& f, int ext_cap) {
    bool hit = false;
    Field K = aut_search_field(f, ext_cap, &hit);
    AutResult r = aut_group(f, K);
    r.extension_cap_hit = hit;
    if (hit) r.certified_complete = false;
    return r;
}

AutResult aut_group_bruteforce(const RatMap& f, Field search, uint64_t bound) {
    if (search->q > bound) throw AutError("brute-force bound exceeded");
    if (f.degree() < 2) throw AutError("aut_group requires degree >= 2");
    RatMap g = f.embedded(search);
    GroupDesc pgl = enumerate_pgl2(search, search->q);
    std::vector<Mobius> elems;
    for (const auto& m : pgl.elements)
        if (conjugate(g, m) == g) elems.push_back(m);
    AutResult res;
    res.search_field = search;
    res.method = AutMethod::BruteForce;
    res.group.F = search;
    res.group.elements = sort_unique(std::move(elems));
    res.group.label = recognize_group_type(res.group.elements, search);
    res.certified_complete = true;  // relative to the search field
    return res;
}

std::vector<Mobius> conj_set(const RatMap& f, const RatMap& g, Field search,
                             uint64_t brute_bound) {
    if (f.degree() != g.degree()) throw AutError("conj_set requires equal degrees");
    RatMap fK = f.embedded(search), gK = g.embedded(search);
    if (search->q <= brute_bound) {
        GroupDesc pgl = enumerate_pgl2(search, search->q);
        std::vector<Mobius> out;
        for (const auto& m : pgl.elements)
            if (conjugate(fK, m) == gK) out.push_back(m);
        return sort_unique(std::move(out));
    }
    Buckets fb = distinguished_points(fK, search);
    Buckets gb = distinguished_points(gK, search);
    if (fb.total < 3 || gb.total < 3)
        throw AutError("conj_set: fewer than 3 distinguished points; use a brute-force field");
    return bucket_candidates_verified(fK, gK, search, fb, gb);
}

bool char2_alpha2_point(const RatMap& f) {
    Field F = f.field();
    if (F->p != 2 || f.degree() != 2) return false;
    int m = fixed_point_splitting_degree(f, 6);
    Field K = create_field(2, F->k * m);
    Fe s1 = K->zero(), s2 = K->zero();
    std::vector<Fe> lams;
    for (const auto& pm : fixed_points(f, K)) {
        Fe mu = multiplier(f, pm.P);
        for (int i = 0; i < pm.mult; ++i) lams.push_back(mu);
    }
    if (lams.size() != 3) return false;
    s1 = K->add(K->add(lams[0], lams[1]), lams[2]);
    s2 = K->add(K->add(K->mul(lams[0], lams[1]), K->mul(lams[0], lams[2])),
                K->mul(lams[1], lams[2]));
    return s1.is_zero() && s2 == K->one();
}

}  // namespace p1dyn
