#include "p1dyn/projline.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace p1dyn {

ProjPoint ProjPoint::make(const Fe& x, const Fe& y) {
    Field F = x.F;
    if (x.is_zero() && y.is_zero()) throw GroupError("(0,0) is not a projective point");
    if (y.is_zero()) return ProjPoint{F->one(), F->zero()};
    return ProjPoint{F->div(x, y), F->one()};
}

ProjPoint ProjPoint::finite(const Fe& x) { return ProjPoint{x, x.F->one()}; }

ProjPoint ProjPoint::infinity(Field F) { return ProjPoint{F->one(), F->zero()}; }

uint64_t point_key(const ProjPoint& P) {
    return P.is_infinity() ? P.x.F->q : elem_key(P.x);
}

bool point_less(const ProjPoint& a, const ProjPoint& b) { return point_key(a) < point_key(b); }

ProjPoint point_embed(const ProjPoint& P, Field target) {
    return ProjPoint::make(embed(P.x, target), embed(P.y, target));
}

Mobius Mobius::make(const Fe& a, const Fe& b, const Fe& c, const Fe& d) {
    Field F = a.F;
    Fe det = F->sub(F->mul(a, d), F->mul(b, c));
    if (det.is_zero()) throw GroupError("singular matrix is not a Mobius transformation");
    const Fe* lead = &a;
    if (lead->is_zero()) lead = &b;
    if (lead->is_zero()) lead = &c;
    if (lead->is_zero()) lead = &d;
    Fe s = F->inv(*lead);
    return Mobius{F->mul(a, s), F->mul(b, s), F->mul(c, s), F->mul(d, s)};
}

Mobius Mobius::identity(Field F) { return Mobius{F->one(), F->zero(), F->zero(), F->one()}; }

Mobius Mobius::from_ints(Field F, long long a, long long b, long long c, long long d) {
    return make(F->from_int(a), F->from_int(b), F->from_int(c), F->from_int(d));
}

Mobius Mobius::affine(const Fe& a, const Fe& b) {
    Field F = a.F;
    return make(a, b, F->zero(), F->one());
}

Fe Mobius::det() const {
    Field F = a.F;
    return F->sub(F->mul(a, d), F->mul(b, c));
}

Mobius Mobius::inverse() const {
    Field F = a.F;
    return make(d, F->neg(b), F->neg(c), a);
}

bool Mobius::is_identity() const { return *this == identity(a.F); }

bool Mobius::operator==(const Mobius& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
}

std::array<uint64_t, 4> Mobius::key() const {
    return {elem_key(a), elem_key(b), elem_key(c), elem_key(d)};
}

bool mobius_less(const Mobius& m, const Mobius& n) { return m.key() < n.key(); }

Mobius mobius_compose(const Mobius& m, const Mobius& n) {
    Field F = m.a.F;
    if (F != n.a.F) throw GroupError("field context mismatch");
    return Mobius::make(F->add(F->mul(m.a, n.a), F->mul(m.b, n.c)),
                        F->add(F->mul(m.a, n.b), F->mul(m.b, n.d)),
                        F->add(F->mul(m.c, n.a), F->mul(m.d, n.c)),
                        F->add(F->mul(m.c, n.b), F->mul(m.d, n.d)));
}

ProjPoint mobius_apply(const Mobius& m, const ProjPoint& P) {
    Field Fm = m.a.F;
    ProjPoint Q = P;
    if (P.x.F != Fm) {
        if (Fm->k % P.x.F->k == 0)
            Q = point_embed(P, Fm);
        else
            throw GroupError("incompatible contexts in mobius_apply");
    }
    Field F = Fm;
    return ProjPoint::make(F->add(F->mul(m.a, Q.x), F->mul(m.b, Q.y)),
                           F->add(F->mul(m.c, Q.x), F->mul(m.d, Q.y)));
}

Mobius mobius_embed(const Mobius& m, Field target) {
    return Mobius::make(embed(m.a, target), embed(m.b, target), embed(m.c, target),
                        embed(m.d, target));
}

std::vector<ProjPoint> mobius_fixed_points(const Mobius& m, Field search) {
    // [ax+by : cx+dy] = [x : y]  <=>  c x^2 + (d-a) xy - b y^2 = 0
    Field F = m.a.F;
    Poly f{F->neg(m.b), F->sub(m.d, m.a), m.c};
    f = poly_trim(std::move(f));
    std::vector<ProjPoint> out;
    if (f.empty()) {  // identity
        return out;
    }
    for (const auto& r : poly_roots(f, search)) out.push_back(ProjPoint::finite(r.root));
    if (m.c.is_zero()) out.push_back(ProjPoint::infinity(search));
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

namespace {

// The Mobius sending (P1, P2, P3) to (0, 1, infinity).
Mobius to_standard_triple(const std::array<ProjPoint, 3>& P) {
    Field F = P[0].x.F;
    const Fe &x1 = P[0].x, &y1 = P[0].y;
    const Fe &x2 = P[1].x, &y2 = P[1].y;
    const Fe &x3 = P[2].x, &y3 = P[2].y;
    Fe mu = F->sub(F->mul(y3, x2), F->mul(x3, y2));
    Fe nu = F->sub(F->mul(y1, x2), F->mul(x1, y2));
    return Mobius::make(F->mul(mu, y1), F->neg(F->mul(mu, x1)), F->mul(nu, y3),
                        F->neg(F->mul(nu, x3)));
}

bool pairwise_distinct(const std::array<ProjPoint, 3>& P) {
    return P[0] != P[1] && P[0] != P[2] && P[1] != P[2];
}

uint64_t pow_u64(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// least m >= 1 with n | p^m - 1 (gcd(n, p) = 1)
uint32_t mult_order_mod(uint64_t p, uint64_t n) {
    if (n == 1) return 1;
    uint64_t r = p % n;
    uint64_t cur = r;
    for (uint32_t m = 1; m <= 64; ++m) {
        if (cur == 1 % n) return m;
        cur = cur * r % n;
    }
    throw GroupError("root of unity requires too large an extension");
}

Field extend_for_unity(Field F, uint64_t n) {
    if (n % F->p == 0) throw GroupError("p divides n: no primitive n-th root of unity");
    uint32_t m = mult_order_mod(F->p, n);
    uint32_t k = std::lcm(F->k, m);
    return create_field(F->p, k);
}

}  // namespace

Mobius mobius_from_three_points(const std::array<ProjPoint, 3>& src,
                                const std::array<ProjPoint, 3>& dst) {
    if (!pairwise_distinct(src)) throw GroupError("repeated source point");
    if (!pairwise_distinct(dst)) throw GroupError("repeated destination point");
    Mobius ms = to_standard_triple(src);
    Mobius md = to_standard_triple(dst);
    return mobius_compose(md.inverse(), ms);
}

std::vector<Mobius> sort_unique(std::vector<Mobius> v) {
    std::sort(v.begin(), v.end(), mobius_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool GroupDesc::contains(const Mobius& m) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), m, mobius_less);
    return it != elements.end() && *it == m;
}

bool GroupDesc::same_elements(const GroupDesc& other) const {
    if (order() != other.order()) return false;
    if (F->p != other.F->p) return false;
    Field big = create_field(F->p, std::lcm(F->k, other.F->k));
    std::vector<std::array<uint64_t, 4>> ka, kb;
    for (const auto& m : elements) ka.push_back(mobius_embed(m, big).key());
    for (const auto& m : other.elements) kb.push_back(mobius_embed(m, big).key());
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

std::string GroupLabel::str() const {
    switch (kind) {
        case GroupKind::Cyclic: return "C" + std::to_string(a);
        case GroupKind::Dihedral: return "D" + std::to_string(2 * a);
        case GroupKind::A4: return "A4";
        case GroupKind::S4: return "S4";
        case GroupKind::A5: return "A5";
        case GroupKind::PGL2:
            return a == 3 ? "PGL2(3)=S4" : "PGL2(" + std::to_string(a) + ")";
        case GroupKind::PSL2:
            return a == 3 ? "PSL2(3)=A4" : "PSL2(" + std::to_string(a) + ")";
        case GroupKind::SemiElementary:
            if (b == a - 1) return "Borel(" + std::to_string(a) + ")";
            return "SemiElementary(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case GroupKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

uint64_t GroupLabel::predicted_order() const {
    switch (kind) {
        case GroupKind::Cyclic: return a;
        case GroupKind::Dihedral: return 2 * a;
        case GroupKind::A4: return 12;
        case GroupKind::S4: return 24;
        case GroupKind::A5: return 60;
        case GroupKind::PGL2: return a * a * a - a;
        case GroupKind::PSL2: return (a * a * a - a) / (a % 2 == 1 ? 2 : 1);
        case GroupKind::SemiElementary: return a * b;
        case GroupKind::Unknown: return 0;
    }
    return 0;
}

GroupDesc enumerate_pgl2(Field F, uint64_t bound) {
    if (F->q > bound) throw GroupError("enumerate_pgl2: field size bound exceeded");
    std::vector<Mobius> out;
    out.reserve(F->q * F->q * F->q);
    // canonical forms: (1, b, c, d) with d != bc, and (0, 1, c, d) with c != 0
    for (uint64_t kb = 0; kb < F->q; ++kb)
        for (uint64_t kc = 0; kc < F->q; ++kc)
            for (uint64_t kd = 0; kd < F->q; ++kd) {
                Fe b = F->from_key(kb), c = F->from_key(kc), d = F->from_key(kd);
                if (F->sub(d, F->mul(b, c)).is_zero()) continue;
                out.push_back(Mobius{F->one(), b, c, d});
            }
    for (uint64_t kc = 1; kc < F->q; ++kc)
        for (uint64_t kd = 0; kd < F->q; ++kd)
            out.push_back(Mobius{F->zero(), F->one(), F->from_key(kc), F->from_key(kd)});
    GroupDesc g;
    g.F = F;
    g.elements = sort_unique(std::move(out));
    g.label = GroupLabel{GroupKind::PGL2, F->q, 0};
    return g;
}

GroupDesc group_closure(const std::vector<Mobius>& gens, size_t cap) {
    if (gens.empty()) throw GroupError("group_closure: empty generator list");
    Field F = gens[0].field();
    for (const auto& g : gens)
        if (g.field() != F) throw GroupError("group_closure: mixed contexts");
    std::vector<Mobius> step = gens;
    for (const auto& g : gens) step.push_back(g.inverse());
    std::set<std::array<uint64_t, 4>> seen;
    std::vector<Mobius> elements;
    std::deque<Mobius> frontier;
    auto push = [&](const Mobius& m) {
        if (seen.insert(m.key()).second) {
            elements.push_back(m);
            frontier.push_back(m);
            if (elements.size() > cap) throw GroupError("group_closure: cap exceeded");
        }
    };
    push(Mobius::identity(F));
    while (!frontier.empty()) {
        Mobius x = frontier.front();
        frontier.pop_front();
        for (const auto& g : step) push(mobius_compose(x, g));
    }
    GroupDesc g;
    g.F = F;
    g.elements = sort_unique(std::move(elements));
    g.label = recognize_group_type(g.elements, F);
    return g;
}

GroupDesc semi_elementary_subgroup(Field F, const std::vector<Fe>& lambda_basis, uint64_t n) {
    if (n % F->p == 0) throw GroupError("p divides n");
    Field K = extend_for_unity(F, n);
    std::vector<Fe> basis;
    for (const Fe& b : lambda_basis) basis.push_back(embed(b, K));
    // GF(p)-span of the basis
    std::set<uint64_t> span_keys;
    std::vector<Fe> lambda;
    size_t r = basis.size();
    uint64_t combos = pow_u64(F->p, static_cast<uint32_t>(r));
    for (uint64_t m = 0; m < combos; ++m) {
        Fe acc = K->zero();
        uint64_t t = m;
        for (size_t i = 0; i < r; ++i) {
            uint32_t ci = static_cast<uint32_t>(t % F->p);
            t /= F->p;
            if (ci) acc = K->add(acc, K->mul(basis[i], K->from_int(ci)));
        }
        if (span_keys.insert(elem_key(acc)).second) lambda.push_back(acc);
    }
    auto mu = roots_of_unity(K, n);
    if (mu.size() != n) throw GroupError("mu_n not realized in the extension");
    // mu_n must map Lambda into Lambda
    for (const Fe& z : mu)
        for (const Fe& l : lambda)
            if (!span_keys.count(elem_key(K->mul(z, l))))
                throw GroupError("mu_n does not stabilize Lambda");
    std::vector<Mobius> elems;
    for (const Fe& a : mu)
        for (const Fe& b : lambda) elems.push_back(Mobius::affine(a, b));
    GroupDesc g;
    g.F = K;
    g.elements = sort_unique(std::move(elems));
    g.label = GroupLabel{GroupKind::SemiElementary, lambda.size(), n};
    g.ext_degree_used = K->k / F->k;
    if (g.order() != lambda.size() * n) throw GroupError("semi-elementary order mismatch");
    return g;
}

GroupDesc standard_subgroup(Field F, StandardKind kind, uint64_t n) {
    const uint64_t p = F->p;
    switch (kind) {
        case StandardKind::Cyclic: {
            if (n == 0) throw GroupError("Cyclic requires n >= 1");
            Field K = extend_for_unity(F, n);
            auto mu = roots_of_unity(K, n);
            std::vector<Mobius> elems;
            for (const Fe& z : mu) elems.push_back(Mobius::affine(z, K->zero()));
            GroupDesc g;
            g.F = K;
            g.elements = sort_unique(std::move(elems));
            g.label = GroupLabel{GroupKind::Cyclic, n, 0};
            g.ext_degree_used = K->k / F->k;
            if (g.order() != n) throw GroupError("cyclic order mismatch");
            return g;
        }
        case StandardKind::Dihedral: {
            if (n == 0) throw GroupError("Dihedral requires n >= 1");
            Field K = extend_for_unity(F, n);
            auto mu = roots_of_unity(K, n);
            std::vector<Mobius> gens;
            for (const Fe& z : mu) gens.push_back(Mobius::affine(z, K->zero()));
            gens.push_back(Mobius::from_ints(K, 0, 1, 1, 0));  // z -> 1/z
            GroupDesc g = group_closure(gens);
            g.label = GroupLabel{GroupKind::Dihedral, n, 0};
            g.ext_degree_used = K->k / F->k;
            if (g.order() != 2 * n) throw GroupError("dihedral order mismatch");
            return g;
        }
        case StandardKind::Borel: {
            uint64_t q = n == 0 ? F->q : n;
            // q must be a power of p realized as a subfield of F (or an extension)
            uint32_t j = 0;
            for (uint64_t t = q; t > 1; t /= p, ++j)
                if (t % p != 0) throw GroupError("Borel: q is not a power of p");
            Field Q = create_field(p, j);
            std::vector<Mobius> elems;
            for (uint64_t ka = 1; ka < Q->q; ++ka)
                for (uint64_t kb = 0; kb < Q->q; ++kb)
                    elems.push_back(Mobius::affine(Q->from_key(ka), Q->from_key(kb)));
            GroupDesc g;
            g.F = Q;
            g.elements = sort_unique(std::move(elems));
            g.label = GroupLabel{GroupKind::SemiElementary, Q->q, Q->q - 1};
            if (g.order() != Q->q * (Q->q - 1)) throw GroupError("Borel order mismatch");
            return g;
        }
        case StandardKind::PSL2: {
            uint64_t q = n == 0 ? F->q : n;
            uint32_t j = 0;
            for (uint64_t t = q; t > 1; t /= p, ++j)
                if (t % p != 0) throw GroupError("PSL2: q is not a power of p");
            Field Q = create_field(p, j);
            GroupDesc pgl = enumerate_pgl2(Q, Q->q);
            GroupDesc g;
            g.F = Q;
            for (const auto& m : pgl.elements)
                if (is_square(m.det())) g.elements.push_back(m);
            g.elements = sort_unique(std::move(g.elements));
            g.label = GroupLabel{GroupKind::PSL2, Q->q, 0};
            uint64_t expect = (Q->q * Q->q * Q->q - Q->q) / (Q->q % 2 == 1 ? 2 : 1);
            if (g.order() != expect) throw GroupError("PSL2 order mismatch");
            return g;
        }
        case StandardKind::A4:
        case StandardKind::S4: {
            if (p < 5) throw GroupError("p divides the group order");
            Field K = extend_for_unity(F, 4);
            Fe i = K->zero();
            for (const Fe& z : roots_of_unity(K, 4))
                if (K->mul_order(z) == 4) {
                    i = z;
                    break;
                }
            Mobius S = Mobius::make(i, i, K->one(), K->from_int(-1));
            Mobius U = Mobius::from_ints(K, 0, 1, 1, 0);
            std::vector<Mobius> gens;
            if (kind == StandardKind::S4) {
                gens = {S, Mobius::make(i, K->zero(), K->zero(), K->one()), U};
            } else {
                gens = {S, Mobius::from_ints(K, -1, 0, 0, 1), U};
            }
            GroupDesc g = group_closure(gens);
            g.label = GroupLabel{kind == StandardKind::S4 ? GroupKind::S4 : GroupKind::A4, 0, 0};
            g.ext_degree_used = K->k / F->k;
            uint64_t expect = kind == StandardKind::S4 ? 24 : 12;
            if (g.order() != expect) throw GroupError("platonic reduction not faithful");
            return g;
        }
        case StandardKind::A5: {
            if (p == 2 || p == 3 || p == 5) throw GroupError("p divides the group order");
            Field K = extend_for_unity(F, 5);
            Fe z = K->zero();
            for (const Fe& w : roots_of_unity(K, 5))
                if (K->mul_order(w) == 5) {
                    z = w;
                    break;
                }
            Fe z2 = K->mul(z, z), z3 = K->mul(z2, z), z4 = K->mul(z3, z);
            Mobius S = Mobius::make(z3, K->zero(), K->zero(), z2);
            // the trace-zero involution paired with the rotation S
            Fe t11 = K->sub(z, z4), t12 = K->sub(z3, z2);
            Mobius T = Mobius::make(t11, t12, t12, K->neg(t11));
            GroupDesc g = group_closure({S, T});
            g.label = GroupLabel{GroupKind::A5, 0, 0};
            g.ext_degree_used = K->k / F->k;
            if (g.order() != 60) throw GroupError("A5 reduction not faithful");
            return g;
        }
    }
    throw GroupError("unknown standard subgroup kind");
}

namespace {

uint64_t element_order(const Mobius& m, size_t cap) {
    Mobius id = Mobius::identity(m.field());
    Mobius cur = m;
    for (uint64_t o = 1; o <= cap; ++o) {
        if (cur == id) return o;
        cur = mobius_compose(cur, m);
    }
    throw GroupError("element order exceeds group size; input not closed?");
}

bool check_dihedral(const std::vector<Mobius>& elements, uint64_t N,
                    const std::vector<uint64_t>& orders) {
    if (N < 4 || N % 2 != 0) return false;
    uint64_t n = N / 2;
    for (size_t i = 0; i < elements.size(); ++i) {
        if (orders[i] != n) continue;
        const Mobius& h = elements[i];
        std::set<std::array<uint64_t, 4>> cyc;
        Mobius cur = Mobius::identity(h.field());
        for (uint64_t j = 0; j < n; ++j) {
            cyc.insert(cur.key());
            cur = mobius_compose(cur, h);
        }
        Mobius hinv = h.inverse();
        bool ok = true;
        for (size_t j = 0; j < elements.size() && ok; ++j) {
            if (cyc.count(elements[j].key())) continue;
            const Mobius& r = elements[j];
            if (orders[j] != 2) ok = false;
            else if (!(mobius_compose(mobius_compose(r, h), r) == hinv)) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

bool histogram_matches(const std::map<uint64_t, uint64_t>& hist,
                       std::initializer_list<std::pair<uint64_t, uint64_t>> expect) {
    std::map<uint64_t, uint64_t> e(expect.begin(), expect.end());
    return hist == e;
}

}  // namespace

GroupLabel recognize_group_type(const std::vector<Mobius>& elements, Field F) {
    const uint64_t N = elements.size();
    if (N == 0) throw GroupError("empty element set");
    if (N == 1) return GroupLabel{GroupKind::Cyclic, 1, 0};
    std::vector<uint64_t> orders;
    orders.reserve(N);
    std::map<uint64_t, uint64_t> hist;
    for (const auto& m : elements) {
        uint64_t o = element_order(m, N);
        orders.push_back(o);
        ++hist[o];
    }
    for (uint64_t o : orders)
        if (o == N) return GroupLabel{GroupKind::Cyclic, N, 0};

    const uint64_t p = F->p;
    if (N % p == 0) {
        // p-irregular: semi-elementary, PGL2/PSL2, or dihedral (char 2)
        // A common fixed point of the whole group, if any, is the fixed point
        // of any order-p (unipotent) element and is rational over F.
        for (size_t i = 0; i < elements.size(); ++i) {
            if (orders[i] != p) continue;
            auto fps = mobius_fixed_points(elements[i], F);
            if (fps.size() != 1) break;
            bool common = true;
            for (const auto& m : elements)
                if (!(mobius_apply(m, fps[0]) == fps[0])) {
                    common = false;
                    break;
                }
            if (common) {
                uint64_t sylow = 1;
                for (uint64_t o : orders)
                    if (o % p == 0) ++sylow;
                return GroupLabel{GroupKind::SemiElementary, sylow, N / sylow};
            }
            break;
        }
        for (uint64_t q = p; q * q * q - q <= 2 * N && q <= (1u << 15); q *= p) {
            if (q * q * q - q == N) return GroupLabel{GroupKind::PGL2, q, 0};
            if (q % 2 == 1 && (q * q * q - q) / 2 == N) return GroupLabel{GroupKind::PSL2, q, 0};
        }
        if (check_dihedral(elements, N, orders)) return GroupLabel{GroupKind::Dihedral, N / 2, 0};
        return GroupLabel{GroupKind::Unknown, 0, 0};
    }

    if (check_dihedral(elements, N, orders)) return GroupLabel{GroupKind::Dihedral, N / 2, 0};
    if (N == 12 && histogram_matches(hist, {{1, 1}, {2, 3}, {3, 8}}))
        return GroupLabel{GroupKind::A4, 0, 0};
    if (N == 24 && histogram_matches(hist, {{1, 1}, {2, 9}, {3, 8}, {4, 6}}))
        return GroupLabel{GroupKind::S4, 0, 0};
    if (N == 60 && histogram_matches(hist, {{1, 1}, {2, 15}, {3, 20}, {5, 24}}))
        return GroupLabel{GroupKind::A5, 0, 0};
    return GroupLabel{GroupKind::Unknown, 0, 0};
}

}  // namespace p1dyn
