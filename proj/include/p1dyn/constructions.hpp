#pragma once

// Catalog of explicit maps with prescribed automorphism groups, each returned
// together with the group it is asserted to realize. verify_record() checks
// the assertion by computing Aut exactly over the record's search field.

#include <map>

#include "p1dyn/autgrp.hpp"
#include "p1dyn/invariant.hpp"

namespace p1dyn {

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstructionRecord {
    std::string name;
    std::map<std::string, std::string> parameters;
    RatMap map;
    GroupDesc claimed_group;
    std::string claim;            // human-readable statement of the asserted group
    Field search_field = nullptr; // field over which the claim is checked
    // optional witnesses
    std::optional<Mobius> conjugator;         // affine_psi: to the b = 0 representative
    std::optional<Mobius> non_member_witness; // psl2: coset representative failing f^t = f
    // sorted multiplier keys over the recorded splitting extension
    std::vector<uint64_t> multiplier_spectrum_fixed;
    std::vector<uint64_t> multiplier_spectrum_period2;
};

// f(z) = a z^q. Aut is all of PGL2(F_q) for a = 1, the Borel group otherwise.
ConstructionRecord power_map(const Fe& a, uint64_t q);

// f = a z^q + (1-a) z + b, conjugate to the b = 0 representative; the
// conjugating translation is recorded.
ConstructionRecord affine_psi_map(const Fe& a, const Fe& b, uint64_t q);

// f = psi(z^q - z) + z with psi = (az+b)/(cz+d), c != 0. Aut is cyclic of
// order q when a != 0 or p = 2, dihedral of order 2q when a = 0 and p > 2.
ConstructionRecord fractional_psi_map(const Fe& a, const Fe& b, const Fe& c, const Fe& d,
                                      uint64_t q);

// f(z) = prod_{l in Lambda} (z - l)^(n+1) + z realizing the semi-elementary
// group attached to (Lambda, n).
ConstructionRecord semi_elementary_map(Field F, const std::vector<Fe>& lambda_basis, uint64_t n);

// The minimal-degree PSL2(F_q) realization from the invariant pair
// (c1^b, u^a); q odd.
ConstructionRecord psl2_map(uint64_t q);

// The one-parameter family realizing PSL2(F_p) at the minimal degree,
// p odd prime, c != 0.
ConstructionRecord psl2_prime_map(uint64_t p, const Fe& c);

// f(z) = 1/z^(n-1) + z with Aut cyclic of order n, gcd(n, p) = 1.
ConstructionRecord cyclic_map(uint64_t n, Field F);

// Dihedral realization; picks the first applicable branch among z^(n+1),
// 1/z^(n-1), and the n = 2 cubic family z(z^2+a)/(az^2+1). An explicit a
// forces the cubic family.
ConstructionRecord dihedral_map(uint64_t n, Field F, std::optional<Fe> a = std::nullopt);

enum class Platonic { A4, S4, A5 };

// Reductions of characteristic-0 maps with platonic symmetry; the prime
// fallbacks (p = 5 for S4, p = 11 for A5) are selected by the degree test.
ConstructionRecord platonic_map(Platonic kind, uint64_t p);

// integer resultant (exact) of the two characteristic-0 coefficient vectors,
// low-to-high, homogenized to the larger degree; used for the reduction
// certificates of the platonic maps
long long integer_resultant(const std::vector<long long>& num, const std::vector<long long>& den);

struct VerifyOutcome {
    AutResult aut;
    bool ok = false;  // computed Aut equals the claimed group elementwise
};

VerifyOutcome verify_record(const ConstructionRecord& rec);

}  // namespace p1dyn
