#include "p1dyn/ratmap.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace p1dyn {

HomPoly HomPoly::zero(Field F, int d) {
    return HomPoly{F, d, std::vector<Fe>(d + 1, F->zero())};
}

HomPoly HomPoly::from_ints(Field F, int d, const std::vector<long long>& c) {
    if (static_cast<int>(c.size()) != d + 1) throw RatMapError("coefficient count mismatch");
    HomPoly h = zero(F, d);
    for (int i = 0; i <= d; ++i) h.coeffs[i] = F->from_int(c[i]);
    return h;
}

HomPoly HomPoly::homogenize(const Poly& f, int d) {
    Poly t = poly_trim(f);
    if (t.empty()) throw RatMapError("cannot homogenize the zero polynomial");
    Field F = t[0].F;
    if (poly_deg(t) > d) throw RatMapError("degree exceeds homogenization target");
    HomPoly h = zero(F, d);
    for (size_t i = 0; i < t.size(); ++i) h.coeffs[i] = t[i];
    return h;
}

bool HomPoly::is_zero() const {
    for (const Fe& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

Fe HomPoly::eval(const Fe& x, const Fe& y) const {
    // Horner in x with accumulated powers of y
    Fe acc = F->zero();
    Fe ypow = F->one();
    std::vector<Fe> ypows(d + 1, F->one());
    for (int i = 1; i <= d; ++i) ypows[i] = F->mul(ypows[i - 1], y);
    for (int i = d; i >= 0; --i) acc = F->add(F->mul(acc, x), F->mul(coeffs[i], ypows[d - i]));
    return acc;
}

Poly HomPoly::dehomogenize() const { return poly_trim(coeffs); }

HomPoly HomPoly::embedded(Field target) const {
    HomPoly h = zero(target, d);
    for (int i = 0; i <= d; ++i) h.coeffs[i] = embed(coeffs[i], target);
    return h;
}

bool HomPoly::operator==(const HomPoly& o) const {
    return F == o.F && d == o.d && coeffs == o.coeffs;
}

HomPoly hp_add(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.d != b.d) throw RatMapError("homogeneous degree mismatch in sum");
    HomPoly r = a;
    for (int i = 0; i <= a.d; ++i) r.coeffs[i] = a.F->add(a.coeffs[i], b.coeffs[i]);
    return r;
}

HomPoly hp_sub(const HomPoly& a, const HomPoly& b) {
    HomPoly nb = b;
    for (Fe& c : nb.coeffs) c = b.F->neg(c);
    if (a.is_zero()) return nb;
    return hp_add(a, nb);
}

HomPoly hp_mul(const HomPoly& a, const HomPoly& b) {
    HomPoly r = HomPoly::zero(a.F, a.d + b.d);
    for (int i = 0; i <= a.d; ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (int j = 0; j <= b.d; ++j)
            r.coeffs[i + j] = a.F->add(r.coeffs[i + j], a.F->mul(a.coeffs[i], b.coeffs[j]));
    }
    return r;
}

HomPoly hp_scale(const HomPoly& a, const Fe& s) {
    HomPoly r = a;
    for (Fe& c : r.coeffs) c = a.F->mul(c, s);
    return r;
}

HomPoly hp_pow(const HomPoly& a, uint32_t e) {
    HomPoly r = HomPoly::zero(a.F, 0);
    r.coeffs[0] = a.F->one();
    HomPoly base = a;
    while (e > 0) {
        if (e & 1) r = hp_mul(r, base);
        base = hp_mul(base, base);
        e >>= 1;
    }
    return r;
}

HomPoly hp_dx(const HomPoly& a) {
    if (a.d == 0) return HomPoly::zero(a.F, 0);
    HomPoly r = HomPoly::zero(a.F, a.d - 1);
    for (int i = 1; i <= a.d; ++i)
        r.coeffs[i - 1] = a.F->mul(a.coeffs[i], a.F->from_int(i));
    return r;
}

HomPoly hp_dy(const HomPoly& a) {
    if (a.d == 0) return HomPoly::zero(a.F, 0);
    HomPoly r = HomPoly::zero(a.F, a.d - 1);
    for (int i = 0; i < a.d; ++i)
        r.coeffs[i] = a.F->mul(a.coeffs[i], a.F->from_int(a.d - i));
    return r;
}

HomPoly hp_substitute(const HomPoly& f, const Fe& a, const Fe& b, const Fe& c, const Fe& d) {
    Field F = f.F;
    HomPoly X = HomPoly{F, 1, {b, a}};  // a x + b y  (index 1 = coeff of x)
    HomPoly Y = HomPoly{F, 1, {d, c}};
    return hp_compose_pair(f, X, Y);
}

HomPoly hp_compose_pair(const HomPoly& f, const HomPoly& N, const HomPoly& D) {
    Field F = f.F;
    if (N.d != D.d) throw RatMapError("pair degrees differ in composition");
    int n = f.d;
    std::vector<HomPoly> npow(n + 1, HomPoly::zero(F, 0)), dpow(n + 1, HomPoly::zero(F, 0));
    npow[0].coeffs[0] = F->one();
    dpow[0].coeffs[0] = F->one();
    for (int i = 1; i <= n; ++i) {
        npow[i] = hp_mul(npow[i - 1], N);
        dpow[i] = hp_mul(dpow[i - 1], D);
    }
    HomPoly acc = HomPoly::zero(F, n * N.d);
    for (int i = 0; i <= n; ++i) {
        if (f.coeffs[i].is_zero()) continue;
        acc = hp_add(acc, hp_scale(hp_mul(npow[i], dpow[n - i]), f.coeffs[i]));
    }
    return acc;
}

namespace {

// x- and y-adic valuations of a nonzero homogeneous polynomial
int val_x(const HomPoly& h) {
    for (int i = 0; i <= h.d; ++i)
        if (!h.coeffs[i].is_zero()) return i;
    return h.d + 1;
}

int val_y(const HomPoly& h) {
    for (int i = h.d; i >= 0; --i)
        if (!h.coeffs[i].is_zero()) return h.d - i;
    return h.d + 1;
}

// divide by x^a y^b exactly
HomPoly strip_xy(const HomPoly& h, int a, int b) {
    HomPoly r = HomPoly::zero(h.F, h.d - a - b);
    for (int i = 0; i <= r.d; ++i) r.coeffs[i] = h.coeffs[i + a];
    return r;
}

HomPoly hp_divexact_hom(const HomPoly& a, const HomPoly& g) {
    // g has nonzero constant-in-x and top coefficients after the strip step;
    // divide dehomogenizations and rehomogenize
    Poly q = poly_divexact(a.dehomogenize(), g.dehomogenize());
    return HomPoly::homogenize(q, a.d - g.d);
}

}  // namespace

RatMap normalize(const HomPoly& num_in, const HomPoly& den_in) {
    if (num_in.F != den_in.F) throw RatMapError("context mismatch");
    if (num_in.d != den_in.d) throw RatMapError("declared degrees differ");
    if (num_in.is_zero() && den_in.is_zero()) throw RatMapError("zero pair");
    if (num_in.is_zero() || den_in.is_zero()) {
        // [N : 0] or [0 : D]: constant map once the common factor is removed
        throw RatMapError("degenerate pair: one coordinate is identically zero");
    }
    Field F = num_in.F;
    HomPoly num = num_in, den = den_in;
    int ax = std::min(val_x(num), val_x(den));
    int ay = std::min(val_y(num), val_y(den));
    if (ax + ay > 0) {
        num = strip_xy(num, ax, ay);
        den = strip_xy(den, ax, ay);
    }
    Poly g = poly_gcd(num.dehomogenize(), den.dehomogenize());
    if (poly_deg(g) > 0) {
        HomPoly gh = HomPoly::homogenize(g, poly_deg(g));
        num = hp_divexact_hom(num, gh);
        den = hp_divexact_hom(den, gh);
    }
    if (num.d < 1) throw RatMapError("map degenerates to degree 0");
    // canonical scale: first nonzero coefficient scanning num then den,
    // x-degree high to low, becomes 1
    Fe lead = F->zero();
    for (int i = num.d; i >= 0 && lead.is_zero(); --i) lead = num.coeffs[i];
    for (int i = den.d; i >= 0 && lead.is_zero(); --i) lead = den.coeffs[i];
    Fe s = F->inv(lead);
    return RatMap{hp_scale(num, s), hp_scale(den, s)};
}

RatMap ratmap_from_univariate(const Poly& num, const Poly& den) {
    Poly n = poly_trim(num), d = poly_trim(den);
    if (n.empty() && d.empty()) throw RatMapError("zero pair");
    if (d.empty()) throw RatMapError("denominator is zero");
    if (n.empty()) throw RatMapError("numerator is zero: constant map");
    int deg = std::max(poly_deg(n), poly_deg(d));
    return normalize(HomPoly::homogenize(n, deg), HomPoly::homogenize(d, deg));
}

RatMap ratmap_from_ints(Field F, const std::vector<long long>& num,
                        const std::vector<long long>& den) {
    return ratmap_from_univariate(poly_from_ints(F, num), poly_from_ints(F, den));
}

ProjPoint RatMap::apply(const ProjPoint& P) const {
    Field F = field();
    Field Fp = P.x.F;
    if (Fp != F && Fp->k % F->k == 0) return embedded(Fp).apply(P);
    ProjPoint Q = Fp == F ? P : point_embed(P, F);
    return ProjPoint::make(num.eval(Q.x, Q.y), den.eval(Q.x, Q.y));
}

RatMap RatMap::embedded(Field target) const {
    if (target == field()) return *this;
    return RatMap{num.embedded(target), den.embedded(target)};
}

std::string RatMap::str() const {
    Field F = field();
    auto poly_str = [&](const HomPoly& h) {
        std::ostringstream os;
        bool first = true;
        for (int i = h.d; i >= 0; --i) {
            if (h.coeffs[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << F->to_string(h.coeffs[i]);
            if (i > 0) os << "*z^" << i;
        }
        if (first) os << "0";
        return os.str();
    };
    return "(" + poly_str(num) + ") / (" + poly_str(den) + ")";
}

RatMap conjugate(const RatMap& f, const Mobius& alpha) {
    Field Fm = f.field();
    Mobius al = alpha;
    if (alpha.field() != Fm) {
        if (Fm->k % alpha.field()->k == 0)
            al = mobius_embed(alpha, Fm);
        else if (alpha.field()->k % Fm->k == 0) {
            return conjugate(f.embedded(alpha.field()), alpha);
        } else
            throw RatMapError("context mismatch in conjugation");
    }
    Field F = Fm;
    HomPoly nA = hp_substitute(f.num, al.a, al.b, al.c, al.d);
    HomPoly dA = hp_substitute(f.den, al.a, al.b, al.c, al.d);
    // alpha^{-1} applied to the output pair, up to the determinant scalar
    HomPoly num = hp_sub(hp_scale(nA, al.d), hp_scale(dA, al.b));
    HomPoly den = hp_add(hp_scale(nA, F->neg(al.c)), hp_scale(dA, al.a));
    return normalize(num, den);
}

RatMap compose(const RatMap& f, const RatMap& g) {
    if (f.field() != g.field()) throw RatMapError("context mismatch in composition");
    HomPoly num = hp_compose_pair(f.num, g.num, g.den);
    HomPoly den = hp_compose_pair(f.den, g.num, g.den);
    return normalize(num, den);
}

HomPoly fixed_point_form(const RatMap& f) {
    Field F = f.field();
    HomPoly y = HomPoly{F, 1, {F->one(), F->zero()}};
    HomPoly x = HomPoly{F, 1, {F->zero(), F->one()}};
    return hp_sub(hp_mul(y, f.num), hp_mul(x, f.den));
}

namespace {

std::vector<PointWithMult> projective_roots(const HomPoly& form, Field search) {
    // roots of a nonzero homogeneous form on P^1(search)
    if (form.is_zero()) throw RatMapError("zero form has no root divisor");
    std::vector<PointWithMult> out;
    Poly u = form.dehomogenize();
    int inf_mult = form.d - poly_deg(u);  // y-adic valuation
    if (!u.empty() && poly_deg(u) >= 1) {
        for (const auto& r : poly_roots(u, search))
            out.push_back({ProjPoint::finite(r.root), r.mult});
    } else if (poly_deg(u) == 0) {
        // no finite roots
    }
    if (inf_mult > 0) out.push_back({ProjPoint::infinity(search), inf_mult});
    std::sort(out.begin(), out.end(),
              [](const PointWithMult& a, const PointWithMult& b) { return point_less(a.P, b.P); });
    return out;
}

}  // namespace

std::vector<PointWithMult> fixed_points(const RatMap& f, Field search) {
    RatMap g = f.embedded(search);
    return projective_roots(fixed_point_form(g), search);
}

Fe multiplier(const RatMap& f, const ProjPoint& P) {
    Field F = P.x.F;
    RatMap g = F->k % f.field()->k == 0 ? f.embedded(F) : f;
    if (g.field() != F) throw RatMapError("fixed point lives outside an extension of the map");
    if (!(g.apply(P) == P)) throw RatMapError("multiplier requested at a non-fixed point");
    // move P to 0: sigma(z) = z + x_P for finite P, sigma(z) = 1/z for infinity
    Mobius sigma = P.is_infinity() ? Mobius::from_ints(F, 0, 1, 1, 0)
                                   : Mobius::make(F->one(), P.x, F->zero(), F->one());
    RatMap h = conjugate(g, sigma);
    // h fixes 0; multiplier = N'(0)/D(0) for the dehomogenizations
    Poly N = h.num.dehomogenize();
    Poly D = h.den.dehomogenize();
    Fe n1 = poly_deg(N) >= 1 ? N[1] : F->zero();
    Fe d0 = D.empty() ? F->zero() : D[0];
    if (d0.is_zero()) throw RatMapError("chart denominator vanishes at the fixed point");
    return F->div(n1, d0);
}

std::vector<PointWithMult> periodic_points(const RatMap& f, int n, Field search) {
    if (n != 1 && n != 2) throw RatMapError("periodic_points supports n = 1 or 2 only");
    if (n == 1) return fixed_points(f, search);
    RatMap g = f.embedded(search);
    return fixed_points(compose(g, g), search);
}

std::vector<PointWithMult> preimages(const RatMap& f, const ProjPoint& P, Field search) {
    RatMap g = f.embedded(search);
    ProjPoint Q = point_embed(P, search);
    HomPoly form = hp_sub(hp_scale(g.num, Q.y), hp_scale(g.den, Q.x));
    return projective_roots(form, search);
}

RatMap psi_map(const Poly& psi_num, const Poly& psi_den, uint64_t q) {
    Poly n = poly_trim(psi_num), d = poly_trim(psi_den);
    if (d.empty()) throw RatMapError("psi denominator is zero");
    if (n.empty()) throw RatMapError("psi numerator is zero");
    Field F = d[0].F;
    // check GF(q) fits inside F
    if (q < 2) throw RatMapError("q must be a prime power");
    uint32_t j = 0;
    for (uint64_t t = q; t > 1; t /= F->p, ++j)
        if (t % F->p != 0) throw RatMapError("q is not a power of the context characteristic");
    if (F->k % j != 0) throw RatMapError("context does not contain GF(q)");
    // W = z^q - z; f = (n(W) + z d(W)) / d(W)
    Poly W(q + 1, F->zero());
    W[1] = F->from_int(-1);
    W[q] = F->one();
    auto eval_at_W = [&](const Poly& g) {
        Poly acc{};
        for (size_t i = g.size(); i-- > 0;) {
            acc = poly_mul(acc, W);
            if (!g[i].is_zero()) {
                if (acc.empty()) acc = Poly{g[i]};
                else acc[0] = F->add(acc[0], g[i]);
            }
        }
        return poly_trim(std::move(acc));
    };
    Poly nW = eval_at_W(n);
    Poly dW = eval_at_W(d);
    Poly z{F->zero(), F->one()};
    Poly fnum = poly_add(nW, poly_mul(z, dW));
    return ratmap_from_univariate(fnum, dW);
}

int fixed_point_splitting_degree(const RatMap& f, int cap) {
    Poly u = fixed_point_form(f).dehomogenize();
    if (poly_deg(u) < 1) return 1;
    return poly_splitting_degree(u, cap);
}

Fe ratmap_resultant(const HomPoly& num, const HomPoly& den) {
    // Euclidean remainder sequence on the dehomogenizations, with the y-adic
    // valuations folded in as powers of the opposite leading value. Zero iff
    // the forms share a projective root over the algebraic closure.
    Field F = num.F;
    if (num.is_zero() || den.is_zero()) return F->zero();
    Poly a = num.dehomogenize(), b = den.dehomogenize();
    int s = num.d - poly_deg(a);  // y-valuation of num
    int t = den.d - poly_deg(b);
    if (s > 0 && t > 0) return F->zero();  // common root at infinity
    auto uni_res = [&](Poly A, Poly B) {
        Fe r = F->one();
        while (true) {
            int da = poly_deg(A), db = poly_deg(B);
            if (db < 0) return da <= 0 ? r : F->zero();
            if (db == 0) return F->mul(r, F->pow(B[0], static_cast<uint64_t>(std::max(da, 0))));
            Poly R = poly_rem(A, B);
            int dr = poly_deg(R);
            uint64_t e = static_cast<uint64_t>(da - std::max(dr, 0));
            Fe sign = ((static_cast<uint64_t>(da) * db) % 2 == 1) ? F->from_int(-1) : F->one();
            r = F->mul(r, F->mul(sign, F->pow(B[db], e)));
            A = std::move(B);
            B = std::move(R);
        }
    };
    Fe r = uni_res(a, b);
    if (s > 0) r = F->mul(r, F->pow(b.back(), static_cast<uint64_t>(s)));
    if (t > 0) r = F->mul(r, F->pow(a.back(), static_cast<uint64_t>(t)));
    return r;
}

}  // namespace p1dyn
