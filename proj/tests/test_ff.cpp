#include <doctest.h>

#include <algorithm>
#include <set>

#include "p1dyn/ff.hpp"

using namespace p1dyn;

namespace {

// independent irreducibility oracle for quadratics/cubics: no roots in GF(p)
bool irreducible_by_root_search(const Poly& f, Field F) {
    for (uint64_t key = 0; key < F->q; ++key)
        if (poly_eval(f, F->from_key(key)).is_zero()) return false;
    return true;
}

uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("create_field: deterministic lexicographic-least modulus") {
    Field F2 = create_field(2, 1);
    CHECK(F2->modulus == std::vector<uint32_t>{0, 1});  // modulus x for prime fields

    // GF(9): enumerate all monic quadratics over GF(3) and find the least
    // irreducible with the root-search oracle
    Field F3 = create_field(3, 1);
    std::vector<uint32_t> least;
    for (uint32_t c0 = 0; c0 < 3 && least.empty(); ++c0)
        for (uint32_t c1 = 0; c1 < 3 && least.empty(); ++c1) {
            Poly f{F3->from_int(c0), F3->from_int(c1), F3->one()};
            if (irreducible_by_root_search(f, F3)) least = {c0, c1, 1};
        }
    Field F9 = create_field(3, 2);
    CHECK(F9->modulus == least);
    CHECK(F9->modulus == std::vector<uint32_t>{1, 0, 1});  // x^2 + 1

    CHECK_THROWS_AS(create_field(4, 1), FieldError);  // not prime
    CHECK_THROWS_AS(create_field(5, 0), FieldError);
    // the same (p, k) always yields the same context object
    CHECK(create_field(3, 2) == F9);
}

TEST_CASE("field arithmetic basics") {
    Field F9 = create_field(3, 2);
    Fe g = F9->gen();
    // x^2 = -1 for modulus x^2 + 1
    CHECK(F9->mul(g, g) == F9->from_int(-1));
    for (uint64_t key = 1; key < F9->q; ++key) {
        Fe a = F9->from_key(key);
        CHECK(F9->mul(a, F9->inv(a)) == F9->one());
        CHECK(F9->pow(a, F9->q - 1) == F9->one());
    }
    // Frobenius stability: x^(p^k) = x for every element
    for (uint64_t key = 0; key < F9->q; ++key) {
        Fe a = F9->from_key(key);
        CHECK(F9->pow(a, F9->q) == a);
    }
}

TEST_CASE("Frobenius additivity on random elements") {
    uint64_t s = 7;
    for (Field F : {create_field(5, 2), create_field(2, 4), create_field(7, 1)}) {
        for (int i = 0; i < 50; ++i) {
            Fe a = F->from_key(splitmix(s) % F->q);
            Fe b = F->from_key(splitmix(s) % F->q);
            CHECK(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
        }
    }
}

TEST_CASE("embed: examples and tower consistency") {
    Field F3 = create_field(3, 1);
    Field F9 = create_field(3, 2);
    CHECK(embed(F3->one(), F9) == F9->one());

    Field F4 = create_field(2, 2);
    Field F16 = create_field(2, 4);
    Fe g4 = F4->gen();
    CHECK(F4->mul_order(g4) == 3);
    CHECK(F16->mul_order(embed(g4, F16)) == 3);

    Field F27 = create_field(3, 3);
    CHECK_THROWS_AS(embed(F9->gen(), F27), FieldError);  // 2 does not divide 3

    // chained and direct embeddings agree
    for (uint64_t p : {2ull, 3ull}) {
        Field Fp = create_field(p, 1);
        Field Fp2 = create_field(p, 2);
        Field Fp4 = create_field(p, 4);
        for (uint64_t key = 0; key < Fp->q; ++key) {
            Fe a = Fp->from_key(key);
            CHECK(embed(embed(a, Fp2), Fp4) == embed(a, Fp4));
        }
        // and one level up from the quadratic subfield
        for (uint64_t key = 0; key < Fp2->q; ++key) {
            Fe a = Fp2->from_key(key);
            Fe direct = embed(a, Fp4);
            CHECK(in_subfield(direct, Fp2));
            CHECK(contract(direct, Fp2) == a);
        }
    }
}

TEST_CASE("embed is a ring homomorphism preserving multiplicative order") {
    uint64_t s = 99;
    Field F5 = create_field(5, 1);
    Field F25 = create_field(5, 2);
    for (int i = 0; i < 40; ++i) {
        Fe a = F5->from_key(splitmix(s) % 5);
        Fe b = F5->from_key(splitmix(s) % 5);
        CHECK(embed(F5->add(a, b), F25) == F25->add(embed(a, F25), embed(b, F25)));
        CHECK(embed(F5->mul(a, b), F25) == F25->mul(embed(a, F25), embed(b, F25)));
        if (!a.is_zero()) CHECK(F5->mul_order(a) == F25->mul_order(embed(a, F25)));
    }
}

TEST_CASE("roots_of_unity") {
    Field F5 = create_field(5, 1);
    auto mu4 = roots_of_unity(F5, 4);
    REQUIRE(mu4.size() == 4);
    std::vector<uint64_t> keys;
    for (const auto& e : mu4) keys.push_back(elem_key(e));
    CHECK(keys == std::vector<uint64_t>{1, 2, 3, 4});

    Field F7 = create_field(7, 1);
    auto mu1 = roots_of_unity(F7, 1);
    REQUIRE(mu1.size() == 1);
    CHECK(mu1[0] == F7->one());

    Field F9 = create_field(3, 2);
    auto mu8 = roots_of_unity(F9, 8);
    CHECK(mu8.size() == 8);
    // forms a cyclic group: closed under multiplication, someone has order 8
    std::set<uint64_t> kset;
    for (const auto& e : mu8) kset.insert(elem_key(e));
    bool has_order_8 = false;
    for (const auto& a : mu8) {
        if (F9->mul_order(a) == 8) has_order_8 = true;
        for (const auto& b : mu8) CHECK(kset.count(elem_key(F9->mul(a, b))) == 1);
    }
    CHECK(has_order_8);

    CHECK_THROWS_AS(roots_of_unity(F5, 10), FieldError);  // p | n
    bool truncated = false;
    auto mu3 = roots_of_unity(F5, 3, &truncated);  // gcd(3, 4) = 1
    CHECK(truncated);
    CHECK(mu3.size() == 1);
}

TEST_CASE("poly_roots: examples") {
    Field F3 = create_field(3, 1);
    auto r = poly_roots(poly_from_ints(F3, {0, -1, 0, 1}), F3);  // z^3 - z
    REQUIRE(r.size() == 3);
    for (const auto& pr : r) CHECK(pr.mult == 1);

    Field F9 = create_field(3, 2);
    auto r2 = poly_roots(poly_from_ints(F3, {1, 0, 1}), F9);  // z^2 + 1
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].root != r2[1].root);
    for (const auto& pr : r2) CHECK_FALSE(in_subfield(pr.root, F3));

    Field F5 = create_field(5, 1);
    auto r3 = poly_roots(poly_from_ints(F5, {1, -2, 1}), F5);  // (z-1)^2
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].root == F5->one());
    CHECK(r3[0].mult == 2);

    CHECK_THROWS_AS(poly_roots(Poly{}, F5), FieldError);
}

TEST_CASE("poly_roots of z^q - z finds every field element") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}, {2, 3}}) {
        Field F = create_field(p, k);
        Poly f(F->q + 1, F->zero());
        f[1] = F->from_int(-1);
        f[F->q] = F->one();
        auto roots = poly_roots(f, F);
        CHECK(roots.size() == F->q);
    }
}

TEST_CASE("poly_roots: equal-degree splitting agrees with the scan oracle") {
    // GF(5^4) = 625 elements sits above the scan threshold, so the splitting
    // path runs; compare against a direct evaluation oracle
    Field F5 = create_field(5, 1);
    Field K = create_field(5, 4);
    uint64_t s = 12345;
    for (int trial = 0; trial < 10; ++trial) {
        Poly f;
        int deg = 2 + static_cast<int>(splitmix(s) % 5);
        for (int i = 0; i <= deg; ++i) f.push_back(F5->from_key(splitmix(s) % 5));
        f = poly_trim(std::move(f));
        if (poly_deg(f) < 1) continue;
        auto fast = poly_roots(f, K);
        Poly fk = poly_embed(f, K);
        std::vector<Fe> oracle;
        for (uint64_t key = 0; key < K->q; ++key) {
            Fe x = K->from_key(key);
            if (poly_eval(fk, x).is_zero()) oracle.push_back(x);
        }
        REQUIRE(fast.size() == oracle.size());
        for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].root == oracle[i]);
    }
    // same check in characteristic 2 (trace-map splitting): GF(2^10)
    Field F2 = create_field(2, 1);
    Field K2 = create_field(2, 10);
    for (int trial = 0; trial < 6; ++trial) {
        Poly f;
        int deg = 2 + static_cast<int>(splitmix(s) % 6);
        for (int i = 0; i <= deg; ++i) f.push_back(F2->from_key(splitmix(s) % 2));
        f = poly_trim(std::move(f));
        if (poly_deg(f) < 1) continue;
        auto fast = poly_roots(f, K2);
        Poly fk = poly_embed(f, K2);
        size_t count = 0;
        for (uint64_t key = 0; key < K2->q; ++key)
            if (poly_eval(fk, K2->from_key(key)).is_zero()) ++count;
        CHECK(fast.size() == count);
    }
}

TEST_CASE("is_square") {
    Field F5 = create_field(5, 1);
    // oracle: the set of squares mod 5
    std::set<uint64_t> squares;
    for (uint64_t k = 0; k < 5; ++k)
        squares.insert(elem_key(F5->mul(F5->from_key(k), F5->from_key(k))));
    for (uint64_t k = 0; k < 5; ++k)
        CHECK(is_square(F5->from_key(k)) == (squares.count(k) == 1));
    CHECK_FALSE(is_square(F5->from_int(2)));
    CHECK(is_square(F5->zero()));
    Field F7 = create_field(7, 1);
    CHECK(is_square(F7->from_int(4)));
    Field F4 = create_field(2, 2);
    for (uint64_t k = 0; k < 4; ++k) CHECK(is_square(F4->from_key(k)));  // char 2
}

TEST_CASE("factor degrees, radical, splitting degree") {
    Field F3 = create_field(3, 1);
    // z^2 + 1 is irreducible over GF(3)
    auto degs = poly_factor_degrees(poly_from_ints(F3, {1, 0, 1}));
    CHECK(degs == std::vector<int>{2});
    CHECK(poly_splitting_degree(poly_from_ints(F3, {1, 0, 1})) == 2);
    // (z-1)^2 (z-2): radical has degree 2
    Poly f = poly_mul(poly_mul(poly_from_ints(F3, {-1, 1}), poly_from_ints(F3, {-1, 1})),
                      poly_from_ints(F3, {-2, 1}));
    CHECK(poly_deg(poly_radical(f)) == 2);
    // cube of a split cubic: radical recovers the three distinct roots
    Poly g = poly_from_ints(F3, {0, -1, 0, 1});
    Poly g3 = poly_mul(poly_mul(g, g), g);
    CHECK(poly_deg(poly_radical(g3)) == 3);
}

TEST_CASE("primitive root is a generator") {
    for (Field F : {create_field(7, 1), create_field(3, 2), create_field(2, 4)}) {
        Fe g = primitive_root(F);
        CHECK(F->mul_order(g) == F->q - 1);
    }
}

TEST_CASE("every chosen modulus is irreducible") {
    for (auto [p, k] : std::vector<std::pair<uint64_t, uint32_t>>{
             {2, 2}, {2, 6}, {3, 2}, {3, 4}, {5, 3}, {7, 4}, {11, 2}}) {
        Field F = create_field(p, k);
        Field base = create_field(p, 1);
        Poly mod;
        for (uint32_t c : F->modulus) mod.push_back(base->from_int(c));
        CHECK(poly_is_irreducible(mod));
        CHECK(poly_deg(mod) == static_cast<int>(k));
    }
}
