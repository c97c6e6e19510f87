#include <doctest.h>

#include <set>

#include "p1dyn/projline.hpp"

using namespace p1dyn;

namespace {

uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

ProjPoint random_point(Field F, uint64_t& s) {
    uint64_t key = splitmix(s) % (F->q + 1);
    return key == F->q ? ProjPoint::infinity(F) : ProjPoint::finite(F->from_key(key));
}

}  // namespace

TEST_CASE("mobius_apply examples") {
    Field F3 = create_field(3, 1);
    Mobius id = Mobius::identity(F3);
    ProjPoint two = ProjPoint::finite(F3->from_int(2));
    CHECK(mobius_apply(id, two) == two);

    Mobius invz = Mobius::from_ints(F3, 0, 1, 1, 0);
    CHECK(mobius_apply(invz, ProjPoint::infinity(F3)) == ProjPoint::finite(F3->zero()));

    Mobius zp1 = Mobius::from_ints(F3, 1, 1, 0, 1);
    CHECK(mobius_apply(zp1, two) == ProjPoint::finite(F3->zero()));  // 2+1 = 0 mod 3
}

TEST_CASE("mobius_from_three_points") {
    Field F5 = create_field(5, 1);
    ProjPoint zero = ProjPoint::finite(F5->zero());
    ProjPoint one = ProjPoint::finite(F5->one());
    ProjPoint inf = ProjPoint::infinity(F5);

    Mobius id = mobius_from_three_points({zero, one, inf}, {zero, one, inf});
    CHECK(id.is_identity());

    Mobius m = mobius_from_three_points({zero, one, inf}, {inf, one, zero});
    CHECK(m == Mobius::from_ints(F5, 0, 1, 1, 0));  // z -> 1/z
    CHECK(mobius_apply(m, zero) == inf);
    CHECK(mobius_apply(m, one) == one);
    CHECK(mobius_apply(m, inf) == zero);

    CHECK_THROWS_AS(mobius_from_three_points({zero, zero, one}, {zero, one, inf}), GroupError);
}

TEST_CASE("mobius_from_three_points: 200 random triples land exactly") {
    uint64_t s = 4242;
    for (Field F : {create_field(7, 1), create_field(3, 2)}) {
        for (int trial = 0; trial < 100; ++trial) {
            std::array<ProjPoint, 3> src{random_point(F, s), random_point(F, s),
                                         random_point(F, s)};
            std::array<ProjPoint, 3> dst{random_point(F, s), random_point(F, s),
                                         random_point(F, s)};
            auto distinct = [](const std::array<ProjPoint, 3>& P) {
                return !(P[0] == P[1]) && !(P[0] == P[2]) && !(P[1] == P[2]);
            };
            if (!distinct(src) || !distinct(dst)) continue;
            Mobius m = mobius_from_three_points(src, dst);
            for (int i = 0; i < 3; ++i) CHECK(mobius_apply(m, src[i]) == dst[i]);
        }
    }
}

TEST_CASE("enumerate_pgl2 sizes") {
    CHECK(enumerate_pgl2(create_field(2, 1)).order() == 6);
    CHECK(enumerate_pgl2(create_field(3, 1)).order() == 24);
    CHECK(enumerate_pgl2(create_field(5, 1)).order() == 120);
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        Field F = create_field(p, k);
        CHECK(enumerate_pgl2(F).order() == F->q * F->q * F->q - F->q);
    }
    CHECK_THROWS_AS(enumerate_pgl2(create_field(31, 1)), GroupError);
}

TEST_CASE("group_closure examples") {
    Field F5 = create_field(5, 1);
    GroupDesc c5 = group_closure({Mobius::from_ints(F5, 1, 1, 0, 1)});
    CHECK(c5.order() == 5);
    CHECK(c5.label == GroupLabel{GroupKind::Cyclic, 5, 0});

    Field F7 = create_field(7, 1);
    GroupDesc klein = group_closure(
        {Mobius::from_ints(F7, -1, 0, 0, 1), Mobius::from_ints(F7, 0, 1, 1, 0)});
    CHECK(klein.order() == 4);
    CHECK(klein.label.kind == GroupKind::Dihedral);
    CHECK(klein.label.a == 2);

    // octahedral generators with i = 2 (a primitive fourth root in GF(5))
    Mobius S = Mobius::from_ints(F5, 2, 2, 1, -1);
    Mobius T = Mobius::from_ints(F5, 2, 0, 0, 1);
    Mobius U = Mobius::from_ints(F5, 0, 1, 1, 0);
    GroupDesc s4 = group_closure({S, T, U});
    CHECK(s4.order() == 24);
    CHECK(s4.label.kind == GroupKind::S4);

    // closure is idempotent
    GroupDesc again = group_closure(s4.elements);
    CHECK(again.same_elements(s4));

    CHECK_THROWS_AS(group_closure({Mobius::from_ints(F5, 1, 1, 0, 1)}, 3), GroupError);
}

TEST_CASE("semi_elementary_subgroup") {
    Field F3 = create_field(3, 1);
    GroupDesc tr = semi_elementary_subgroup(F3, {F3->one()}, 1);
    CHECK(tr.order() == 3);

    Field F4 = create_field(2, 2);
    GroupDesc borel4 = semi_elementary_subgroup(F4, {F4->one(), F4->gen()}, 3);
    CHECK(borel4.order() == 12);
    CHECK(borel4.label.str() == "Borel(4)");

    // mu_4 does not stabilize F_3 inside GF(9)
    Field F9 = create_field(3, 2);
    CHECK_THROWS_AS(semi_elementary_subgroup(F9, {F9->one()}, 4), GroupError);
}

TEST_CASE("standard_subgroup examples") {
    Field F5 = create_field(5, 1);
    GroupDesc c4 = standard_subgroup(F5, StandardKind::Cyclic, 4);
    CHECK(c4.order() == 4);
    CHECK(c4.ext_degree_used == 1);  // 2 has order 4 mod 5

    Field F11 = create_field(11, 1);
    GroupDesc a5 = standard_subgroup(F11, StandardKind::A5);
    CHECK(a5.order() == 60);
    CHECK(a5.label.kind == GroupKind::A5);
    CHECK(a5.ext_degree_used == 1);  // zeta_5 lives in GF(11)

    CHECK_THROWS_AS(standard_subgroup(F5, StandardKind::A5), GroupError);  // p | 60
    CHECK_THROWS_AS(standard_subgroup(create_field(3, 1), StandardKind::S4), GroupError);

    GroupDesc borel5 = standard_subgroup(F5, StandardKind::Borel, 5);
    CHECK(borel5.order() == 20);
    CHECK(borel5.label.str() == "Borel(5)");

    GroupDesc psl3 = standard_subgroup(create_field(3, 1), StandardKind::PSL2, 3);
    CHECK(psl3.order() == 12);
}

TEST_CASE("dihedral subgroups: rotations and involutions for n <= 12") {
    for (uint64_t n = 2; n <= 12; ++n) {
        Field F = create_field(7, 1);
        if (n % 7 == 0) continue;
        GroupDesc d = standard_subgroup(F, StandardKind::Dihedral, n);
        REQUIRE(d.order() == 2 * n);
        // the rotation part is the diagonal subgroup z -> zeta z (cyclic of
        // order n); the n reflections z -> zeta / z are involutions
        size_t rotations = 0, reflections = 0;
        for (const auto& m : d.elements) {
            if (m.b.is_zero() && m.c.is_zero()) ++rotations;
            if (m.a.is_zero() && m.d.is_zero()) ++reflections;
        }
        CHECK(rotations == n);
        CHECK(reflections == n);
        bool cyclic_part = false;
        for (const auto& m : d.elements) {
            if (!(m.b.is_zero() && m.c.is_zero())) continue;
            Mobius cur = m;
            uint64_t order = 1;
            while (!cur.is_identity()) {
                cur = mobius_compose(cur, m);
                ++order;
            }
            CHECK(n % order == 0);
            if (order == n) cyclic_part = true;
        }
        CHECK(cyclic_part);
        for (const auto& m : d.elements)
            if (m.a.is_zero() && m.d.is_zero())
                CHECK(mobius_compose(m, m).is_identity());
    }
}

TEST_CASE("recognize_group_type") {
    Field F5 = create_field(5, 1);
    GroupLabel triv = recognize_group_type({Mobius::identity(F5)}, F5);
    CHECK(triv == GroupLabel{GroupKind::Cyclic, 1, 0});

    // closure of {z+1, 2z} over GF(5) is the full Borel group of order 20
    GroupDesc b = group_closure(
        {Mobius::from_ints(F5, 1, 1, 0, 1), Mobius::from_ints(F5, 2, 0, 0, 1)});
    CHECK(b.order() == 20);
    CHECK(b.label.kind == GroupKind::SemiElementary);
    CHECK(b.label.a == 5);
    CHECK(b.label.b == 4);
    CHECK(b.label.str() == "Borel(5)");

    GroupDesc pgl3 = enumerate_pgl2(create_field(3, 1));
    CHECK(recognize_group_type(pgl3.elements, pgl3.F).kind == GroupKind::PGL2);
    CHECK(recognize_group_type(pgl3.elements, pgl3.F).str() == "PGL2(3)=S4");

    Field F9 = create_field(3, 2);
    GroupDesc pgl9 = enumerate_pgl2(F9);
    REQUIRE(pgl9.order() == 720);
    GroupLabel l9 = recognize_group_type(pgl9.elements, F9);
    CHECK(l9.kind == GroupKind::PGL2);
    CHECK(l9.a == 9);

    GroupDesc psl9 = standard_subgroup(F9, StandardKind::PSL2, 9);
    CHECK(psl9.order() == 360);
    CHECK(recognize_group_type(psl9.elements, F9).str() == "PSL2(9)");
}
