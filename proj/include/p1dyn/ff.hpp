#pragma once

// Exact arithmetic in GF(p^k) for small prime powers (p^k < 2^31 by default).
// Contexts are interned: create_field(p, k) always returns the same pointer,
// so pointer equality is field equality. Elements are dense coefficient
// vectors in the polynomial basis, residues in [0, p).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace p1dyn {

struct FieldCtx;
using Field = const FieldCtx*;

struct Fe {
    Field F = nullptr;
    std::vector<uint32_t> c;  // length k, low-to-high

    bool is_zero() const;
    bool operator==(const Fe& o) const { return F == o.F && c == o.c; }
    bool operator!=(const Fe& o) const { return !(*this == o); }
};

// Canonical total order on elements of one field: digits read as a base-p
// number, c[0] least significant.
uint64_t elem_key(const Fe& e);
bool elem_less(const Fe& a, const Fe& b);

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldCtx {
    uint32_t p = 0;
    uint32_t k = 0;
    uint64_t q = 0;                  // p^k
    std::vector<uint32_t> modulus;   // monic, degree k, low-to-high (k+1 entries)

    Fe zero() const;
    Fe one() const;
    Fe from_int(long long v) const;        // image of an integer (prime subfield)
    Fe from_key(uint64_t key) const;       // inverse of elem_key
    Fe gen() const;                        // residue class of x

    Fe add(const Fe& a, const Fe& b) const;
    Fe sub(const Fe& a, const Fe& b) const;
    Fe neg(const Fe& a) const;
    Fe mul(const Fe& a, const Fe& b) const;
    Fe inv(const Fe& a) const;
    Fe div(const Fe& a, const Fe& b) const;
    Fe pow(const Fe& a, uint64_t e) const;
    Fe frobenius(const Fe& a) const;       // a^p

    uint64_t mul_order(const Fe& a) const; // order in the multiplicative group

    std::string to_string(const Fe& a) const;
};

// Interned field registry. Deterministic modulus: the lexicographically least
// monic irreducible of degree k over GF(p) (coefficients compared low index
// first). k = 1 uses modulus x.
Field create_field(uint64_t p, uint32_t k, uint64_t size_bound = (1ull << 31));
// GF(q) for a prime power q
Field create_field_q(uint64_t q);

// Fixed ring embedding GF(p^k) -> GF(p^m), k | m. Computed once per pair and
// cached; multi-step towers are resolved through the largest intermediate
// subfield so chained and direct embeddings agree.
Fe embed(const Fe& e, Field target);

// Inverse of embed on its image. Throws if e is not in the embedded subfield.
Fe contract(const Fe& e, Field sub);

bool in_subfield(const Fe& e, Field sub);

// All n-th roots of unity in the field, sorted canonically. Requires
// gcd(n, p) = 1. If n does not divide q-1 the gcd(n, q-1)-th roots are
// returned and *truncated is set.
std::vector<Fe> roots_of_unity(Field F, uint64_t n, bool* truncated = nullptr);

// Euler's criterion; in char 2 every element is a square, 0 is a square.
bool is_square(const Fe& e);

// A generator of the multiplicative group, least in canonical order.
Fe primitive_root(Field F);

// ---- dense univariate polynomials over a field --------------------------
// Coefficient vectors low-to-high; the zero polynomial is the empty vector.

using Poly = std::vector<Fe>;

Poly poly_trim(Poly f);
int poly_deg(const Poly& f);  // -1 for zero
Poly poly_from_ints(Field F, const std::vector<long long>& coeffs);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Fe& s);
Poly poly_monic(const Poly& a);
// division with remainder; b nonzero
void poly_divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem);
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_divexact(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);  // monic
Fe poly_eval(const Poly& f, const Fe& x);
Poly poly_deriv(const Poly& f);
Poly poly_powmod(const Poly& base, uint64_t e, const Poly& mod);
Poly poly_embed(const Poly& f, Field target);
bool poly_is_irreducible(const Poly& f);

// Degrees of irreducible factors (with repetition by factor, not multiplicity),
// from distinct-degree factorization of the squarefree part.
std::vector<int> poly_factor_degrees(const Poly& f);
// product of the distinct monic irreducible factors
Poly poly_radical(const Poly& f);
// lcm of factor degrees = degree of the splitting field over the coefficient
// field, clamped to cap (a clamp means the cap was hit).
int poly_splitting_degree(const Poly& f, int cap = 12);

struct PolyRoot {
    Fe root;
    int mult;
};

// Roots of f in the search field (an extension of f's coefficient field),
// with multiplicities, sorted canonically. Exact: small fields are scanned,
// larger ones use equal-degree splitting. Throws on the zero polynomial.
std::vector<PolyRoot> poly_roots(const Poly& f, Field search);

}  // namespace p1dyn
