#include <doctest.h>

#include <algorithm>

#include "p1dyn/moduli2.hpp"

using namespace p1dyn;

namespace {

uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

RatMap random_deg2(Field F, uint64_t& s) {
    while (true) {
        try {
            HomPoly n = HomPoly::zero(F, 2), d = HomPoly::zero(F, 2);
            for (int i = 0; i <= 2; ++i) {
                n.coeffs[i] = F->from_key(splitmix(s) % F->q);
                d.coeffs[i] = F->from_key(splitmix(s) % F->q);
            }
            RatMap f = normalize(n, d);
            if (f.degree() == 2) return f;
        } catch (const RatMapError&) {
        }
    }
}

}  // namespace

TEST_CASE("sigma_invariants examples") {
    Field F5 = create_field(5, 1);
    ModuliPoint pt = sigma_invariants(ratmap_from_ints(F5, {0, 0, 1}, {1}));
    CHECK(pt.s1 == F5->from_int(2));
    CHECK(pt.s2 == F5->zero());

    // all three multipliers equal to -2: the distinguished S3 point (-6, 12)
    Field F7 = create_field(7, 1);
    ModuliPoint cusp = sigma_invariants(normal_form_map(F7->from_int(-2)));
    CHECK(cusp.s1 == F7->from_int(-6));
    CHECK(cusp.s2 == F7->from_int(12));

    ModuliPoint tri = sigma_invariants(ratmap_from_ints(F7, {1, 0, 1}, {0, 1}));  // z + 1/z
    CHECK(tri.s1 == F7->from_int(3));
    CHECK(tri.s2 == F7->from_int(3));

    CHECK_THROWS_AS(sigma_invariants(ratmap_from_ints(F5, {0, 0, 0, 1}, {1})), ModuliError);
}

TEST_CASE("multiplier_polynomial") {
    Field F5 = create_field(5, 1);
    ModuliPoint p20{F5->from_int(2), F5->zero(), F5->zero()};
    // x^3 - 2x^2 = x^2 (x - 2)
    CHECK(multiplier_polynomial(p20) == poly_from_ints(F5, {0, 0, -2, 1}));

    Field F7 = create_field(7, 1);
    ModuliPoint p33{F7->from_int(3), F7->from_int(3), F7->one()};
    Poly cube = poly_mul(poly_mul(poly_from_ints(F7, {-1, 1}), poly_from_ints(F7, {-1, 1})),
                         poly_from_ints(F7, {-1, 1}));
    CHECK(multiplier_polynomial(p33) == cube);  // (x - 1)^3

    ModuliPoint pc{F7->from_int(-6), F7->from_int(12), F7->zero()};
    Poly xp2 = poly_from_ints(F7, {2, 1});
    CHECK(multiplier_polynomial(pc) == poly_mul(poly_mul(xp2, xp2), xp2));  // (x + 2)^3
}

TEST_CASE("sigma of the multiplier polynomial roots is consistent") {
    uint64_t s = 31;
    Field F7 = create_field(7, 1);
    Field K = create_field(7, 6);
    for (int t = 0; t < 30; ++t) {
        RatMap f = random_deg2(F7, s);
        ModuliPoint pt = sigma_invariants(f);
        // the multiplier polynomial's root multiset equals the multipliers
        Poly mp = multiplier_polynomial(pt);
        auto roots = poly_roots(mp, K);
        std::vector<uint64_t> from_poly;
        for (const auto& r : roots)
            for (int i = 0; i < r.mult; ++i) from_poly.push_back(elem_key(r.root));
        std::vector<uint64_t> from_map;
        for (const auto& pm : fixed_points(f, K)) {
            uint64_t key = elem_key(multiplier(f.embedded(K), pm.P));
            for (int i = 0; i < pm.mult; ++i) from_map.push_back(key);
        }
        std::sort(from_poly.begin(), from_poly.end());
        std::sort(from_map.begin(), from_map.end());
        CHECK(from_poly == from_map);
    }
}

TEST_CASE("locus_verdict") {
    LocusVerdict v1 = locus_verdict_ints(7, 2, 0);
    CHECK(v1.on_S);
    CHECK(v1.predicted == PredictedAut::C2);

    LocusVerdict v2 = locus_verdict_ints(7, 1, 5);  // (-6, 12) mod 7
    CHECK(v2.on_S);
    CHECK(v2.special == SpecialPoint::Cusp);
    CHECK(v2.predicted == PredictedAut::S3);

    LocusVerdict v3 = locus_verdict_ints(2, 0, 1);
    CHECK(v3.special == SpecialPoint::Char2AlphaTwoPoint);
    CHECK(v3.predicted == PredictedAut::TrivialAlpha2);
    CHECK(v3.predicted_order() == 1);

    // (3, 3) lies on S and on Per1(1); its group is C2, not S3
    LocusVerdict v4 = locus_verdict_ints(7, 3, 3);
    CHECK(v4.on_S);
    CHECK(v4.on_Per11);
    CHECK(v4.special == SpecialPoint::TripleOne);
    CHECK(v4.predicted == PredictedAut::C2);

    // char 3: the cusp carries C2, never S3
    LocusVerdict v5 = locus_verdict_ints(3, 0, 0);
    CHECK(v5.on_S);
    CHECK(v5.special == SpecialPoint::Cusp);
    CHECK(v5.predicted == PredictedAut::C2);
}

TEST_CASE("cusp_point") {
    CuspData c5 = cusp_point(5);
    CHECK(c5.point.s1 == create_field(5, 1)->from_int(4));  // -6 mod 5
    CHECK(c5.point.s2 == create_field(5, 1)->from_int(2));  // 12 mod 5

    CuspData c3 = cusp_point(3);
    CHECK(c3.point.s1.is_zero());
    CHECK(c3.point.s2.is_zero());

    CuspData c7 = cusp_point(7);
    CHECK(c7.t1 == 5);
    CHECK(c7.t2 == 2);

    CHECK_THROWS_AS(cusp_point(2), ModuliError);
}

TEST_CASE("normal_form_map") {
    Field F5 = create_field(5, 1);
    RatMap z2 = normal_form_map(F5->zero());
    CHECK(z2 == ratmap_from_ints(F5, {0, 0, 1}, {1}));
    // 1/z is an automorphism
    Mobius inv = Mobius::from_ints(F5, 0, 1, 1, 0);
    CHECK(conjugate(z2, inv) == z2);

    Field F7 = create_field(7, 1);
    RatMap f = normal_form_map(F7->from_int(2));
    CHECK(multiplier(f, ProjPoint::finite(F7->zero())) == F7->from_int(2));
    CHECK(multiplier(f, ProjPoint::infinity(F7)) == F7->from_int(2));
    CHECK(conjugate(f, Mobius::from_ints(F7, 0, 1, 1, 0)) == f);

    CHECK_THROWS_AS(normal_form_map(F7->one()), ModuliError);
    CHECK_THROWS_AS(normal_form_map(F7->from_int(-1)), ModuliError);
}

TEST_CASE("two equal-multiplier fixed points force a swapping automorphism") {
    // over the normal form: for lambda^2 != 1 the map has 0 and infinity as
    // equal-multiplier fixed points and z -> 1/z swaps them
    for (uint64_t p : {5ull, 7ull, 11ull}) {
        Field F = create_field(p, 1);
        for (uint64_t key = 0; key < p; ++key) {
            Fe l = F->from_key(key);
            if (F->mul(l, l) == F->one()) continue;
            RatMap f = normal_form_map(l);
            Mobius inv = Mobius::from_ints(F, 0, 1, 1, 0);
            CHECK(conjugate(f, inv) == f);
            CHECK(mobius_apply(inv, ProjPoint::finite(F->zero())) == ProjPoint::infinity(F));
        }
    }
}

TEST_CASE("the swap automorphism exists for every GF(3) census map that needs one") {
    // exhaustive over all degree-2 maps with GF(3) coefficients: whenever two
    // distinct fixed points share a multiplier, some computed automorphism
    // exchanges them
    Field F3 = create_field(3, 1);
    Field K = create_field(3, 6);
    int swaps_checked = 0;
    for (uint64_t idx = 0; idx < 729; ++idx) {
        uint64_t t = idx;
        HomPoly n = HomPoly::zero(F3, 2), d = HomPoly::zero(F3, 2);
        for (int i = 0; i < 3; ++i) {
            n.coeffs[i] = F3->from_key(t % 3);
            t /= 3;
        }
        for (int i = 0; i < 3; ++i) {
            d.coeffs[i] = F3->from_key(t % 3);
            t /= 3;
        }
        if (n.is_zero() || d.is_zero() || ratmap_resultant(n, d).is_zero()) continue;
        RatMap f = normalize(n, d);
        if (f.degree() != 2) continue;
        auto fps = fixed_points(f, K);
        RatMap fK = f.embedded(K);
        for (size_t i = 0; i < fps.size(); ++i)
            for (size_t j = i + 1; j < fps.size(); ++j) {
                if (!(multiplier(fK, fps[i].P) == multiplier(fK, fps[j].P))) continue;
                AutResult aut = aut_group(f, K);
                bool swapped = false;
                for (const auto& m : aut.group.elements)
                    if (mobius_apply(m, fps[i].P) == fps[j].P &&
                        mobius_apply(m, fps[j].P) == fps[i].P)
                        swapped = true;
                CHECK(swapped);
                ++swaps_checked;
            }
    }
    CHECK(swaps_checked > 0);
}

TEST_CASE("char2_family") {
    Field F2 = create_field(2, 1);
    Char2Family f0 = char2_family(F2->zero());
    CHECK(f0.map == ratmap_from_ints(F2, {0, 0, 1}, {1}));
    CHECK_FALSE(f0.witness.is_identity());
    CHECK(conjugate(f0.map, f0.witness) == f0.map);

    Char2Family f1 = char2_family(F2->one());
    CHECK(f1.witness.is_identity());

    Field F4 = create_field(2, 2);
    Fe g = F4->gen();
    Char2Family fg = char2_family(g);
    CHECK(fg.sigma.s1.is_zero());
    CHECK(fg.sigma.s2 == F4->mul(g, g));
    CHECK(conjugate(fg.map, fg.witness) == fg.map);
    ModuliPoint pt = sigma_invariants(fg.map);
    CHECK(pt.s1 == fg.sigma.s1);
    CHECK(pt.s2 == fg.sigma.s2);

    CHECK_THROWS_AS(char2_family(create_field(3, 1)->one()), ModuliError);
}

TEST_CASE("discriminant identity and reductions") {
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) CHECK(discriminant_identity_holds(p));
}

TEST_CASE("triple-multiplier polynomial x^3 - 3x + 2 and its reductions") {
    // (x + 2)(x - 1)^2 in characteristic > 3
    for (uint64_t p : {5ull, 7ull}) {
        Field F = create_field(p, 1);
        Poly lhs = poly_from_ints(F, {2, -3, 0, 1});
        Poly rhs = poly_mul(poly_from_ints(F, {2, 1}),
                            poly_mul(poly_from_ints(F, {-1, 1}), poly_from_ints(F, {-1, 1})));
        CHECK(lhs == rhs);
    }
    // (x - 1)^3 in characteristic 3
    {
        Field F = create_field(3, 1);
        Poly lhs = poly_from_ints(F, {2, -3, 0, 1});
        Poly lin = poly_from_ints(F, {-1, 1});
        CHECK(lhs == poly_mul(lin, poly_mul(lin, lin)));
    }
    // x (x - 1)^2 in characteristic 2
    {
        Field F = create_field(2, 1);
        Poly lhs = poly_from_ints(F, {2, -3, 0, 1});
        Poly rhs = poly_mul(poly_from_ints(F, {0, 1}),
                            poly_mul(poly_from_ints(F, {1, 1}), poly_from_ints(F, {1, 1})));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Per1(1) membership iff some multiplier equals 1") {
    uint64_t s = 404;
    Field F7 = create_field(7, 1);
    Field K = create_field(7, 6);
    for (int t = 0; t < 30; ++t) {
        RatMap f = random_deg2(F7, s);
        ModuliPoint pt = sigma_invariants(f);
        bool on_line = per11_line(F7).eval(pt.s1, pt.s2).is_zero();
        bool has_one = false;
        for (const auto& pm : fixed_points(f, K))
            if (multiplier(f.embedded(K), pm.P) == K->one()) has_one = true;
        CHECK(on_line == has_one);
    }
}

TEST_CASE("random maps: nontrivial Aut iff the verdict predicts it") {
    uint64_t s = 2718;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        Field F = create_field(p, 1);
        Field K = create_field(p, 6);
        for (int t = 0; t < 60; ++t) {
            RatMap f = random_deg2(F, s);
            ModuliPoint pt = sigma_invariants(f);
            LocusVerdict v = locus_verdict(p, pt);
            AutResult aut = aut_group(f, K);
            CHECK(aut.order() == v.predicted_order());
        }
    }
}
