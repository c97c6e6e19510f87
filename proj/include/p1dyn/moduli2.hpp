#pragma once

// Degree-2 moduli coordinates (sigma1, sigma2), the multiplier polynomial and
// its discriminant locus, the per-characteristic automorphism-locus verdict,
// normal forms, and symbolic identity checks for the locus equations.

#include "p1dyn/autgrp.hpp"

namespace p1dyn {

struct ModuliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModuliPoint {
    Fe s1, s2;
    Fe s3;  // product of the multipliers; s1 = s3 + 2

    Field field() const { return s1.F; }
    bool operator==(const ModuliPoint& o) const { return s1 == o.s1 && s2 == o.s2; }
};

// Multipliers over the splitting field with multiplicity; the symmetric
// functions land back in the base field.
ModuliPoint sigma_invariants(const RatMap& f);

// x^3 - s1 x^2 + s2 x - (s1 - 2)
Poly multiplier_polynomial(const ModuliPoint& pt);

enum class SpecialPoint { None, Cusp, Char2AlphaTwoPoint, TripleOne };
enum class PredictedAut { Trivial, C2, S3, TrivialAlpha2 };

struct LocusVerdict {
    bool on_S = false;
    bool on_Per11 = false;
    SpecialPoint special = SpecialPoint::None;
    PredictedAut predicted = PredictedAut::Trivial;

    uint64_t predicted_order() const {
        return predicted == PredictedAut::S3 ? 6 : predicted == PredictedAut::C2 ? 2 : 1;
    }
};

// Pure function of (p, sigma1, sigma2).
LocusVerdict locus_verdict(uint64_t p, const ModuliPoint& pt);
LocusVerdict locus_verdict_ints(uint64_t p, long long s1, long long s2);

struct CuspData {
    ModuliPoint point;
    // tangent-line coefficients (t1, t2) with the double tangent
    // -(t1 s1' + t2 s2')^2 at the translated singularity
    long long t1, t2;
};

// Unique singular point of the cubic S for p > 2; verified by vanishing
// partial derivatives, with the double tangent line and the check that the
// tangent does not divide the cubic.
CuspData cusp_point(uint64_t p);

// (z^2 + l z)/(l z + 1) : fixed points 0 and infinity both of multiplier l;
// z -> 1/z is an automorphism. Requires l^2 != 1.
RatMap normal_form_map(const Fe& lambda);

struct Char2Family {
    RatMap map;        // z^2 + c z
    ModuliPoint sigma; // (0, c^2)
    Mobius witness;    // z -> z + c + 1, identity exactly at c = 1
};

Char2Family char2_family(const Fe& c);

// ---- symbolic identity checks --------------------------------------------

// dense bivariate polynomials in (s1, s2) over GF(p), used for the exact
// locus-equation identities
struct BiPoly {
    Field F = nullptr;
    int d1 = 0, d2 = 0;             // degree bounds
    std::vector<Fe> c;              // c[i + j*(d1+1)] = coeff of s1^i s2^j

    static BiPoly make(Field F, int d1, int d2);
    Fe& at(int i, int j) { return c[i + static_cast<size_t>(j) * (d1 + 1)]; }
    const Fe& at(int i, int j) const { return c[i + static_cast<size_t>(j) * (d1 + 1)]; }
    Fe eval(const Fe& x1, const Fe& x2) const;
    bool equals(const BiPoly& o) const;
};

BiPoly bp_add(const BiPoly& a, const BiPoly& b);
BiPoly bp_sub(const BiPoly& a, const BiPoly& b);
BiPoly bp_mul(const BiPoly& a, const BiPoly& b);
BiPoly bp_from_terms(Field F, const std::vector<std::tuple<long long, int, int>>& terms);

// the cubic factor of the discriminant (the automorphism-locus curve S for
// p > 3, and its reductions for p = 3, 2)
BiPoly locus_cubic(Field F);
// sigma2 - 2 sigma1 + 3 (the fixed-multiplier-1 line)
BiPoly per11_line(Field F);
// discriminant of the multiplier polynomial as a polynomial in (s1, s2)
BiPoly multiplier_discriminant(Field F);

// discriminant == (per11 line) * (cubic), as polynomials over GF(p)
bool discriminant_identity_holds(uint64_t p);

}  // namespace p1dyn
