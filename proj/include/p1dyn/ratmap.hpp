#pragma once

// Rational self-maps of P^1 as normalized pairs of homogeneous bivariate
// polynomials: evaluation, composition, conjugation, fixed and periodic
// points, multipliers, and the psi(z^q - z) + z builder.

#include <optional>
#include <utility>

#include "p1dyn/projline.hpp"

namespace p1dyn {

// Homogeneous bivariate polynomial of declared degree d; coeffs[i] is the
// coefficient of x^i y^(d-i). The zero polynomial has any degree.
struct HomPoly {
    Field F = nullptr;
    int d = 0;
    std::vector<Fe> coeffs;  // length d+1

    static HomPoly zero(Field F, int d);
    static HomPoly from_ints(Field F, int d, const std::vector<long long>& c);
    // homogenize a univariate polynomial in z = x/y to the given degree
    static HomPoly homogenize(const Poly& f, int d);

    bool is_zero() const;
    Fe eval(const Fe& x, const Fe& y) const;
    Poly dehomogenize() const;  // at y = 1
    HomPoly embedded(Field target) const;
    bool operator==(const HomPoly& o) const;
};

HomPoly hp_add(const HomPoly& a, const HomPoly& b);
HomPoly hp_sub(const HomPoly& a, const HomPoly& b);
HomPoly hp_mul(const HomPoly& a, const HomPoly& b);
HomPoly hp_scale(const HomPoly& a, const Fe& s);
HomPoly hp_pow(const HomPoly& a, uint32_t e);
HomPoly hp_dx(const HomPoly& a);
HomPoly hp_dy(const HomPoly& a);
// substitute (x, y) -> (a x + b y, c x + d y)
HomPoly hp_substitute(const HomPoly& f, const Fe& a, const Fe& b, const Fe& c, const Fe& d);
// substitute (x, y) -> (N(x,y), D(x,y)) for N, D homogeneous of one degree
HomPoly hp_compose_pair(const HomPoly& f, const HomPoly& N, const HomPoly& D);

struct RatMapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RatMap {
    HomPoly num, den;  // equal degree >= 1, gcd 1, canonical leading scale

    int degree() const { return num.d; }
    Field field() const { return num.F; }
    ProjPoint apply(const ProjPoint& P) const;
    RatMap embedded(Field target) const;
    bool operator==(const RatMap& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatMap& o) const { return !(*this == o); }
    std::string str() const;  // dehomogenized pretty form
};

// Remove the common homogeneous factor, apply the canonical scaling (first
// nonzero coefficient of num, scanning x-degree high to low then den, equals
// 1). Throws if the result has degree < 1.
RatMap normalize(const HomPoly& num, const HomPoly& den);

// f from a dehomogenized rational function num(z)/den(z)
RatMap ratmap_from_univariate(const Poly& num, const Poly& den);
RatMap ratmap_from_ints(Field F, const std::vector<long long>& num,
                        const std::vector<long long>& den);

// f^alpha = alpha^(-1) o f o alpha
RatMap conjugate(const RatMap& f, const Mobius& alpha);
RatMap compose(const RatMap& f, const RatMap& g);

struct PointWithMult {
    ProjPoint P;
    int mult;
};

// Roots of y*num - x*den over the search field; total multiplicity over the
// splitting field is deg f + 1.
std::vector<PointWithMult> fixed_points(const RatMap& f, Field search);

// Derivative at a fixed point, computed in a chart moving P to 0.
Fe multiplier(const RatMap& f, const ProjPoint& P);

// n = 1 or 2: fixed points of the n-th iterate.
std::vector<PointWithMult> periodic_points(const RatMap& f, int n, Field search);

// Solutions of f(Q) = P with ramification multiplicities.
std::vector<PointWithMult> preimages(const RatMap& f, const ProjPoint& P, Field search);

// f(z) = psi(z^q - z) + z for psi = psi_num/psi_den over a field containing
// GF(q). For polynomial psi of degree n, deg f = q n.
RatMap psi_map(const Poly& psi_num, const Poly& psi_den, uint64_t q);

// Splitting-field degree (over f's context) of the fixed-point polynomial,
// clamped to cap.
int fixed_point_splitting_degree(const RatMap& f, int cap = 12);

// The homogeneous fixed-point form y*num - x*den.
HomPoly fixed_point_form(const RatMap& f);

// Resultant of the pair (nonzero iff the pair is coprime).
Fe ratmap_resultant(const HomPoly& num, const HomPoly& den);

}  // namespace p1dyn
