#include <doctest.h>

#include "p1dyn/constructions.hpp"
#include "p1dyn/expr.hpp"
#include "p1dyn/moduli2.hpp"

using namespace p1dyn;

TEST_CASE("parse_ratmap matches the builders") {
    Field F7 = create_field(7, 1);
    CHECK(parse_ratmap("1/z^3 + z", F7) == cyclic_map(4, F7).map);
    CHECK(parse_ratmap("z^2", F7) == ratmap_from_ints(F7, {0, 0, 1}, {1}));
    CHECK(parse_ratmap("(z^2 + 3*z)/(3*z + 1)", F7) == normal_form_map(F7->from_int(3)));
    // juxtaposition and unary minus
    CHECK(parse_ratmap("2z^3 - z", create_field(3, 1)) ==
          ratmap_from_ints(create_field(3, 1), {0, -1, 0, 2}, {1}));
}

TEST_CASE("parse_hompoly") {
    Field F3 = create_field(3, 1);
    auto [u1, u2] = fundamental_sl2_invariants(3);
    CHECK(parse_hompoly("x^3*y - x*y^3", F3) == u1);
    CHECK(parse_hompoly("(x^3*y - x*y^3)^2", F3) == hp_pow(u1, 2));
    CHECK(parse_hompoly("x^6 + x^4*y^2 + x^2*y^4 + y^6", F3) == u2);
}

TEST_CASE("malformed input throws, never crashes") {
    Field F3 = create_field(3, 1);
    for (const char* s : {"", "z^", "(z", "1/0", "z+*2", ")z(", "z/(z-z)", "^3"})
        CHECK_THROWS_AS((void)parse_ratmap(s, F3), std::exception);
    CHECK_THROWS_AS((void)parse_hompoly("x^2 + y", F3), ParseError);   // not homogeneous
    CHECK_THROWS_AS((void)parse_hompoly("x/(y+1)", F3), ParseError);   // denominator
    CHECK_THROWS_AS((void)parse_ratmap("x + y", F3), ParseError);      // y in a map
}

TEST_CASE("the dihedral branch with an Artin-Schreier reflection field") {
    // a = 0 with d != 0: the reflection z -> -z + s needs s^q - s = -2d,
    // which lives in a proper extension here
    Field F3 = create_field(3, 1);
    auto rec = fractional_psi_map(F3->zero(), F3->one(), F3->one(), F3->from_int(2), 3);
    CHECK(rec.claimed_group.F->k == 3);
    CHECK(rec.claimed_group.order() == 6);
    auto out = verify_record(rec);
    CHECK(out.ok);
    CHECK(out.aut.certified_complete);
}
