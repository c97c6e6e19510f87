#pragma once

// Points of P^1 over a finite field, Mobius transformations (PGL_2), the
// finite-subgroup constructors, and recognition of a group's isomorphism
// type from its element set.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "p1dyn/ff.hpp"

namespace p1dyn {

// Canonical form: either y = 1, or (x, y) = (1, 0) for the point at infinity.
struct ProjPoint {
    Fe x, y;

    static ProjPoint make(const Fe& x, const Fe& y);
    static ProjPoint finite(const Fe& x);
    static ProjPoint infinity(Field F);

    bool is_infinity() const { return y.is_zero(); }
    bool operator==(const ProjPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
};

// finite points ordered by elem_key, infinity last
uint64_t point_key(const ProjPoint& P);
bool point_less(const ProjPoint& a, const ProjPoint& b);
ProjPoint point_embed(const ProjPoint& P, Field target);

// Element of PGL_2: 2x2 matrix with nonzero determinant, scaled so the first
// nonzero entry (in order a, b, c, d) is 1. Equality is componentwise.
struct Mobius {
    Fe a, b, c, d;

    static Mobius make(const Fe& a, const Fe& b, const Fe& c, const Fe& d);
    static Mobius identity(Field F);
    static Mobius from_ints(Field F, long long a, long long b, long long c, long long d);
    // z -> az + b
    static Mobius affine(const Fe& a, const Fe& b);

    Field field() const { return a.F; }
    Fe det() const;
    Mobius inverse() const;
    bool is_identity() const;
    bool operator==(const Mobius& o) const;
    bool operator!=(const Mobius& o) const { return !(*this == o); }

    std::array<uint64_t, 4> key() const;
};

bool mobius_less(const Mobius& m, const Mobius& n);
Mobius mobius_compose(const Mobius& m, const Mobius& n);  // m after n
ProjPoint mobius_apply(const Mobius& m, const ProjPoint& P);
Mobius mobius_embed(const Mobius& m, Field target);
// fixed points of m on P^1 over the search field
std::vector<ProjPoint> mobius_fixed_points(const Mobius& m, Field search);

// The unique Mobius sending src[i] to dst[i]; throws on repeated points.
Mobius mobius_from_three_points(const std::array<ProjPoint, 3>& src,
                                const std::array<ProjPoint, 3>& dst);

// ---- group descriptions ---------------------------------------------------

enum class GroupKind { Cyclic, Dihedral, A4, S4, A5, PGL2, PSL2, SemiElementary, Unknown };

struct GroupLabel {
    GroupKind kind = GroupKind::Unknown;
    // Cyclic/Dihedral: n. PGL2/PSL2: q. SemiElementary: (|Lambda|, n).
    uint64_t a = 0, b = 0;

    std::string str() const;
    uint64_t predicted_order() const;
    bool operator==(const GroupLabel& o) const { return kind == o.kind && a == o.a && b == o.b; }
};

struct GroupDesc {
    Field F = nullptr;
    std::vector<Mobius> elements;  // sorted by key, closed, contains identity
    GroupLabel label;
    uint32_t ext_degree_used = 1;  // extension over the requested context

    size_t order() const { return elements.size(); }
    bool contains(const Mobius& m) const;
    bool same_elements(const GroupDesc& other) const;  // compares in a common field
};

struct GroupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All (q+1)q(q-1) elements of PGL_2 over the context.
GroupDesc enumerate_pgl2(Field F, uint64_t bound = 25);

// Breadth-first closure of the generators under composition and inverse.
GroupDesc group_closure(const std::vector<Mobius>& gens, size_t cap = 10000);

// { z -> az + b : a in mu_n, b in Lambda } where Lambda is the GF(p)-span of
// the given basis. Checks mu_n * Lambda = Lambda. The context is extended when
// mu_n does not live in the field of the basis.
GroupDesc semi_elementary_subgroup(Field F, const std::vector<Fe>& lambda_basis, uint64_t n);

enum class StandardKind { Cyclic, Dihedral, Borel, PSL2, A4, S4, A5 };

// Named subgroups with fixed generator matrices; the field is extended
// minimally when required roots of unity are missing, and the extension
// degree is recorded on the result.
GroupDesc standard_subgroup(Field F, StandardKind kind, uint64_t n = 0);

GroupLabel recognize_group_type(const std::vector<Mobius>& elements, Field F);

// sorted + dedup helper used by the group builders
std::vector<Mobius> sort_unique(std::vector<Mobius> v);

}  // namespace p1dyn
