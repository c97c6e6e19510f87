#include <doctest.h>

#include "p1dyn/constructions.hpp"

using namespace p1dyn;

TEST_CASE("power_map") {
    Field F3 = create_field(3, 1);
    auto r1 = power_map(F3->one(), 3);
    CHECK(r1.claimed_group.order() == 24);
    CHECK(verify_record(r1).ok);

    auto r2 = power_map(F3->from_int(2), 3);
    CHECK(r2.claimed_group.order() == 6);
    CHECK(r2.claimed_group.label.str() == "Borel(3)");
    CHECK(verify_record(r2).ok);

    Field F4 = create_field(2, 2);
    auto r3 = power_map(F4->one(), 4);
    CHECK(r3.claimed_group.order() == 60);
    auto out3 = verify_record(r3);
    CHECK(out3.ok);
    CHECK(out3.aut.order() == 60);

    CHECK_THROWS_AS(power_map(F3->zero(), 3), ConstructionError);
}

TEST_CASE("affine_psi_map: every b is conjugate to the b = 0 representative") {
    Field F3 = create_field(3, 1);
    // a = 1, b = 1: conjugate to z^3 after a degree-3 extension (GF(27))
    auto rec = affine_psi_map(F3->one(), F3->one(), 3);
    REQUIRE(rec.conjugator.has_value());
    CHECK(rec.search_field->q == 27);
    RatMap f = rec.map;
    RatMap f0 = power_map(F3->one(), 3).map.embedded(rec.search_field);
    CHECK(conjugate(f, *rec.conjugator) == f0);
    CHECK(verify_record(rec).ok);

    // a = 2, b = 1: the Borel group, conjugated
    auto rec2 = affine_psi_map(F3->from_int(2), F3->one(), 3);
    CHECK(rec2.claimed_group.order() == 6);
    CHECK(verify_record(rec2).ok);

    // a = 1, b = 0 over GF(2): plain z^2 with the full PGL2(F_2)
    Field F2 = create_field(2, 1);
    auto rec3 = affine_psi_map(F2->one(), F2->zero(), 2);
    CHECK(rec3.claimed_group.order() == 6);
    CHECK(verify_record(rec3).ok);
}

TEST_CASE("fractional_psi_map") {
    Field F3 = create_field(3, 1);
    auto dihedral = fractional_psi_map(F3->zero(), F3->one(), F3->one(), F3->zero(), 3);
    CHECK(dihedral.map.degree() == 4);
    CHECK(dihedral.claimed_group.order() == 6);
    CHECK(verify_record(dihedral).ok);

    auto cyclic = fractional_psi_map(F3->one(), F3->zero(), F3->one(), F3->one(), 3);
    CHECK(cyclic.map.degree() == 4);
    CHECK(cyclic.claimed_group.order() == 3);
    CHECK(verify_record(cyclic).ok);

    Field F2 = create_field(2, 1);
    auto char2 = fractional_psi_map(F2->zero(), F2->one(), F2->one(), F2->zero(), 2);
    CHECK(char2.claimed_group.order() == 2);  // the p = 2 branch is cyclic
    CHECK(verify_record(char2).ok);

    CHECK_THROWS_AS(fractional_psi_map(F3->one(), F3->zero(), F3->zero(), F3->one(), 3),
                    ConstructionError);  // c = 0
    CHECK_THROWS_AS(fractional_psi_map(F3->one(), F3->one(), F3->one(), F3->one(), 3),
                    ConstructionError);  // ad - bc = 0

    // infinity is fixed with q finite preimages (the Artin-Schreier roots)
    auto rec = fractional_psi_map(F3->one(), F3->one(), F3->one(), F3->from_int(2), 3);
    CHECK(rec.map.degree() == 4);
    Field K = rec.search_field;
    RatMap f = rec.map;
    CHECK(f.apply(ProjPoint::infinity(K)) == ProjPoint::infinity(K));
    int m = poly_splitting_degree(f.den.dehomogenize(), 12);
    Field K2 = create_field(K->p, K->k * m);
    auto pre = preimages(f, ProjPoint::infinity(K2), K2);
    size_t finite = 0;
    for (const auto& pm : pre)
        if (!pm.P.is_infinity()) ++finite;
    CHECK(finite == 3);
}

TEST_CASE("semi_elementary_map") {
    Field F3 = create_field(3, 1);
    auto rec = semi_elementary_map(F3, {F3->one()}, 1);
    CHECK(rec.map.degree() == 6);  // (z^3 - z)^2 + z
    CHECK(rec.map == psi_map(poly_from_ints(F3, {0, 0, 1}), poly_from_ints(F3, {1}), 3));
    CHECK(rec.claimed_group.order() == 3);
    CHECK(verify_record(rec).ok);

    Field F2 = create_field(2, 1);
    auto rec2 = semi_elementary_map(F2, {F2->one()}, 1);
    CHECK(rec2.map.degree() == 4);
    CHECK(rec2.claimed_group.order() == 2);
    CHECK(verify_record(rec2).ok);

    Field F4 = create_field(2, 2);
    auto rec3 = semi_elementary_map(F4, {F4->one(), F4->gen()}, 3);
    CHECK(rec3.map.degree() == 16);
    CHECK(rec3.claimed_group.order() == 12);
    CHECK(verify_record(rec3).ok);
}

TEST_CASE("psl2_map") {
    auto rec = psl2_map(3);
    CHECK(rec.map.degree() == 7);
    REQUIRE(rec.non_member_witness.has_value());
    CHECK(conjugate(rec.map, *rec.non_member_witness) != rec.map);
    CHECK(verify_record(rec).ok);

    // q = 5: the degree-41 map realizes PSL2(F_5) exactly
    auto rec5 = psl2_map(5);
    CHECK(rec5.map.degree() == 41);
    CHECK(static_cast<uint64_t>(rec5.map.degree()) == psl2_min_degree(5));
    auto out5 = verify_record(rec5);
    CHECK(out5.ok);
    CHECK(out5.aut.order() == 60);
    CHECK(out5.aut.certified_complete);
    REQUIRE(rec5.non_member_witness.has_value());
    CHECK(conjugate(rec5.map, *rec5.non_member_witness) != rec5.map);

    CHECK_THROWS_AS(psl2_map(4), ConstructionError);

    // the prime-power case q = 9: right degree, sampled stabilizers, witness
    auto rec9 = psl2_map(9);
    CHECK(static_cast<uint64_t>(rec9.map.degree()) == psl2_min_degree(9));
    CHECK(rec9.claimed_group.order() == 360);
    for (size_t i = 0; i < rec9.claimed_group.order(); i += 45) {
        Mobius m = mobius_embed(rec9.claimed_group.elements[i], rec9.map.field());
        CHECK(conjugate(rec9.map, m) == rec9.map);
    }
    CHECK(conjugate(rec9.map, *rec9.non_member_witness) != rec9.map);
}

TEST_CASE("psl2_prime_map") {
    Field F3 = create_field(3, 1);
    auto rec = psl2_prime_map(3, F3->one());
    CHECK(rec.parameters.at("m") == "2");
    CHECK(rec.map.degree() == 7);
    CHECK(verify_record(rec).ok);
    CHECK_THROWS_AS(psl2_prime_map(3, F3->zero()), ConstructionError);

    // p = 5: m = 7, the degree-41 minimal realization of PSL2(F_5)
    Field F5 = create_field(5, 1);
    auto rec5 = psl2_prime_map(5, F5->one());
    CHECK(rec5.parameters.at("m") == "7");
    CHECK(static_cast<uint64_t>(rec5.map.degree()) == psl2_min_degree(5));
    auto out5 = verify_record(rec5);
    CHECK(out5.ok);
    CHECK(out5.aut.order() == 60);
    CHECK(out5.aut.certified_complete);
}

TEST_CASE("cyclic_map") {
    Field F7 = create_field(7, 1);
    auto rec = cyclic_map(4, F7);
    CHECK(rec.map.degree() == 4);
    CHECK(rec.claimed_group.order() == 4);
    CHECK(verify_record(rec).ok);

    Field F5 = create_field(5, 1);
    auto rec2 = cyclic_map(2, F5);
    CHECK(rec2.claimed_group.order() == 2);
    CHECK(verify_record(rec2).ok);

    CHECK_THROWS_AS(cyclic_map(3, create_field(3, 1)), ConstructionError);  // p | n
}

TEST_CASE("cyclic minimality spot-check: a/z^(n-1) always has extra symmetry") {
    // every degree-(n-1) map of the form a/z^(n-1) carries a dihedral
    // overgroup of the rotations once the twist constant is split
    for (uint64_t n : {2ull, 3ull, 4ull}) {
        for (uint64_t p : {5ull, 7ull}) {
            Field F = create_field(p, 1);
            if (n % p == 0) continue;
            for (uint64_t akey : {1ull, 2ull, 3ull}) {
                Fe a = F->from_key(akey);
                if (a.is_zero()) continue;
                Poly den((size_t)n, F->zero());
                den[n - 1] = F->one();
                RatMap f = ratmap_from_univariate(Poly{a}, den);
                if (f.degree() < 2) continue;  // n = 2 gives the degree-1 map a/z
                AutResult aut = aut_group_auto(f);
                CHECK(aut.order() >= 2 * (n - 1) + 2);
                CHECK(aut.order() > n);
            }
        }
    }
}

TEST_CASE("dihedral_map branch selection") {
    Field F5 = create_field(5, 1);
    auto r1 = dihedral_map(3, F5);
    CHECK(r1.parameters.at("branch") == "z^(n+1)");
    CHECK(r1.map.degree() == 4);
    CHECK(verify_record(r1).ok);

    Field F3 = create_field(3, 1);
    auto r2 = dihedral_map(4, F3);  // 4 = 1 mod 3 but 4 != -1 mod 3
    CHECK(r2.parameters.at("branch") == "z^(n+1)");
    CHECK(r2.map.degree() == 5);
    CHECK(verify_record(r2).ok);

    auto r3 = dihedral_map(5, F3);  // 5 = -1 mod 3: falls to 1/z^(n-1)
    CHECK(r3.parameters.at("branch") == "1/z^(n-1)");
    CHECK(verify_record(r3).ok);

    // n = 2 over GF(3): the whole prime field is exceptional, a comes from GF(9)
    auto r4 = dihedral_map(2, F3);
    CHECK(r4.parameters.at("branch") == "cubic-family");
    CHECK(r4.map.field()->q == 9);
    CHECK(verify_record(r4).ok);

    // forcing the cubic family at n = 2, p = 5: least valid a is 3
    auto r5 = dihedral_map(2, F5, F5->from_int(3));
    CHECK(r5.map.degree() == 3);
    CHECK(verify_record(r5).ok);
    CHECK_THROWS_AS(dihedral_map(2, F5, F5->from_int(2)), ConstructionError);  // -3 = 2
    CHECK_THROWS_AS(dihedral_map(2, create_field(2, 1), std::nullopt), ConstructionError);
}

TEST_CASE("platonic_map") {
    auto s4_7 = platonic_map(Platonic::S4, 7);
    CHECK(s4_7.map.degree() == 5);
    CHECK(verify_record(s4_7).ok);

    auto s4_5 = platonic_map(Platonic::S4, 5);
    CHECK(s4_5.map.degree() == 7);
    CHECK(s4_5.parameters.at("variant") == "degree-7-fallback");
    CHECK(verify_record(s4_5).ok);

    auto a4_5 = platonic_map(Platonic::A4, 5);
    CHECK(a4_5.map.degree() == 3);
    // sqrt(-3) = sqrt(2) lives in GF(25) for p = 5
    CHECK(a4_5.map.field()->q == 25);
    CHECK(verify_record(a4_5).ok);

    auto a5_11 = platonic_map(Platonic::A5, 11);
    CHECK(a5_11.map.degree() == 19);  // the computed degree of the fallback pair
    CHECK(a5_11.parameters.at("variant") == "degree-19-fallback");

    CHECK_THROWS_AS(platonic_map(Platonic::A4, 3), ConstructionError);
    CHECK_THROWS_AS(platonic_map(Platonic::A5, 5), ConstructionError);
}

TEST_CASE("integer resultants of the octahedral pairs") {
    CHECK(integer_resultant({0, 5, 0, 0, 0, -1}, {-1, 0, 0, 0, 5}) == -331776ll);
    CHECK(integer_resultant({-1, 0, 0, 0, -7}, {0, 0, 0, 7, 0, 0, 0, 1}) == -5308416ll);
    // a pair of equal-degree forms with a shared root has resultant 0
    CHECK(integer_resultant({-1, 1, 1}, {2, 1, 1}) != 0);
    CHECK(integer_resultant({1, -2, 1}, {-1, 0, 1}) == 0);  // share the root 1
}
