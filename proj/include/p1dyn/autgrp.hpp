#pragma once

// Exact computation of Aut(f) inside PGL_2 over a chosen search field:
// a distinguished-point (invariant-set) method, a brute-force oracle over
// small fields, and conjugacy-set computation.

#include "p1dyn/ratmap.hpp"

namespace p1dyn {

enum class AutMethod { InvariantSet, BruteForce };

struct AutResult {
    GroupDesc group;
    Field search_field = nullptr;
    AutMethod method = AutMethod::InvariantSet;
    // true when the distinguished point set has at least three points and
    // every point set used splits completely in the search field, so the
    // result is all of Aut(f) over the algebraic closure
    bool certified_complete = false;
    bool extension_cap_hit = false;

    size_t order() const { return group.order(); }
};

struct AutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Candidate automorphisms are generated from ordered triples of distinguished
// points (fixed points bucketed by multiplier and multiplicity, then period-2
// points, then preimage trees of fixed points to depth 2), restricted to
// bucket-preserving correspondences, and each verified by exact equality
// f^alpha = f.
AutResult aut_group(const RatMap& f, Field search);

// Search-field selection: lcm of the irreducible-factor degrees of the
// polynomials the point search needs, capped (cap hit is flagged).
AutResult aut_group_auto(const RatMap& f, int ext_cap = 12);
Field aut_search_field(const RatMap& f, int ext_cap = 12, bool* cap_hit = nullptr);

// Tests every element of PGL_2(search); complete relative to the search field
// by construction.
AutResult aut_group_bruteforce(const RatMap& f, Field search, uint64_t bound = 9);

// All alpha in PGL_2(search) with f^alpha = g. Empty means not conjugate over
// the search field. Brute force for small fields, otherwise the same
// triple-correspondence method as aut_group.
std::vector<Mobius> conj_set(const RatMap& f, const RatMap& g, Field search,
                             uint64_t brute_bound = 25);

// Diagnostic for degree-2 maps in characteristic 2 sitting at the point where
// the reduced automorphism group is trivial but an infinitesimal symmetry
// remains; aut_group reports only the reduced group.
bool char2_alpha2_point(const RatMap& f);

}  // namespace p1dyn
