#pragma once

// Modular invariant theory in two variables: relative invariants of a given
// degree by null-space computation, the fundamental SL2 invariants,
// polynomial differential forms, the map <-> form <-> (F, G) correspondences,
// and the construction of a rational map from a pair of invariants.

#include <functional>
#include <optional>

#include "p1dyn/ratmap.hpp"

namespace p1dyn {

struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 2x2 invertible matrix, NOT taken modulo scalars (a lift to GL2/SL2).
struct Mat2 {
    Fe a, b, c, d;

    static Mat2 from_ints(Field F, long long a, long long b, long long c, long long d);
    Field field() const { return a.F; }
    Fe det() const;
    Mat2 mul(const Mat2& o) const;
    Mat2 inverse() const;
    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    std::array<uint64_t, 4> key() const { return {elem_key(a), elem_key(b), elem_key(c), elem_key(d)}; }
};

struct MatrixGroup {
    Field F = nullptr;
    std::vector<Mat2> generators;
    std::vector<Mat2> elements;  // full element list (may equal generators' closure)

    size_t order() const { return elements.size(); }
};

// SL2(F_q) / GL2(F_q) over the given context, enumerated with a small fixed
// generator set.
MatrixGroup matrix_group_sl2(Field F);
MatrixGroup matrix_group_gl2(Field F);
// preimage of a PGL2 subgroup in SL2 over a field with the needed square
// roots (a quadratic extension always suffices)
MatrixGroup sl2_lift(const GroupDesc& g);

// A character is the list of values on the group's generators, extended
// multiplicatively.
struct Character {
    std::vector<Fe> gen_values;  // aligned with MatrixGroup::generators

    static Character trivial(const MatrixGroup& G);
    static Character det(const MatrixGroup& G);
};

// (h . F)(v) = F(h v). Relative invariance: h . F = chi(h) F.
HomPoly matrix_act(const Mat2& h, const HomPoly& F);

// Echelonized basis of { F homogeneous of degree d : h.F = chi(h) F for all
// generators h }. The system is built from generators only.
std::vector<HomPoly> invariants_of_degree(const MatrixGroup& G, int d, const Character& chi);
std::vector<HomPoly> invariants_of_degree(const MatrixGroup& G, int d);  // trivial character

// u1 = x^q y - x y^q (degree q+1), u2 = sum x^((q-1)(q-n)) y^((q-1)n)
// (degree q^2-q); the fundamental SL2(F_q) invariants.
std::pair<HomPoly, HomPoly> fundamental_sl2_invariants(uint64_t q);

// [x : y] -> [x F + dG/dy : y F - dG/dx]; deg F + 2 = deg G (or F = 0).
// The result degree may drop; the caller inspects it.
RatMap dm_map(const HomPoly& F, const HomPoly& G);

// ---- polynomial differential forms ---------------------------------------

// eta1 dx + eta2 dy with homogeneous coefficients of one degree (grading: x
// and y have degree 1, dx and dy degree 0).
struct PolyForm {
    HomPoly cdx, cdy;

    static PolyForm make(const HomPoly& cdx, const HomPoly& cdy);
    Field field() const { return cdx.F; }
    int degree() const { return cdx.d; }
    bool is_zero() const { return cdx.is_zero() && cdy.is_zero(); }
    bool operator==(const PolyForm& o) const { return cdx == o.cdx && cdy == o.cdy; }
};

// lambda = y dx - x dy
PolyForm lambda_form(Field F);
PolyForm form_add(const PolyForm& a, const PolyForm& b);
PolyForm form_sub(const PolyForm& a, const PolyForm& b);
PolyForm form_scale(const PolyForm& a, const Fe& s);
// d of a polynomial: dF = F_x dx + F_y dy
PolyForm d_poly(const HomPoly& F);
// d of a 1-form, returning the coefficient h of h dx ^ dy
HomPoly d_form(const PolyForm& eta);
// pullback by a linear map
PolyForm pullback(const Mat2& M, const PolyForm& eta);
// F * lambda
PolyForm mul_lambda(const HomPoly& F);

// omega_Phi = den dx - num dy for the normalized lift of f.
PolyForm form_from_map(const RatMap& f);
// r(omega) = [-cdy : cdx], normalized.
RatMap map_from_form(const PolyForm& omega);

struct Decomposition {
    HomPoly F;  // degree n-1 (or zero)
    HomPoly G;  // degree n+1 (or zero)
    // set when a group was supplied and the invariance transfer to G needed
    // the degenerate fallback (G replaced by 0 after a d-kernel hit)
    bool degenerate_branch = false;
};

// theta = F lambda + dG for homogeneous theta of degree n, n != -1 mod p.
// The identity is verified exactly on construction. When a group is supplied
// and theta is relatively invariant, F and G are checked to be relative
// invariants for the same character.
Decomposition decompose_form(const PolyForm& theta, const MatrixGroup* G = nullptr);

// If a single scalar per generator makes h.F = chi(h) F hold exactly, returns
// the character (consistency-checked on random words); otherwise nullopt.
std::optional<Character> is_relative_invariant(const HomPoly& F, const MatrixGroup& G);
std::optional<Character> is_relative_invariant(const PolyForm& w, const MatrixGroup& G);

// check against the full element list, not just generators
bool is_invariant_for_all(const HomPoly& F, const MatrixGroup& G, const Character& chi);

// minimal possible degree of a map whose automorphism group is PSL2(F_q):
// (q^3 - 2q^2 + q + 2)/2 for odd q; throws for even q.
uint64_t psl2_min_degree(uint64_t q);

}  // namespace p1dyn
