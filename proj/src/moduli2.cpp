#include "p1dyn/moduli2.hpp"

#include <algorithm>

namespace p1dyn {

ModuliPoint sigma_invariants(const RatMap& f) {
    if (f.degree() != 2) throw ModuliError("sigma invariants are defined for degree 2");
    Field F = f.field();
    int m = fixed_point_splitting_degree(f, 6);
    Field K = create_field(F->p, F->k * m);
    std::vector<Fe> lams;
    for (const auto& pm : fixed_points(f, K)) {
        Fe mu = multiplier(f.embedded(K), pm.P);
        for (int i = 0; i < pm.mult; ++i) lams.push_back(mu);
    }
    if (lams.size() != 3) throw ModuliError("fixed-point divisor did not split");
    Fe s1 = K->add(K->add(lams[0], lams[1]), lams[2]);
    Fe s2 = K->add(K->add(K->mul(lams[0], lams[1]), K->mul(lams[0], lams[2])),
                   K->mul(lams[1], lams[2]));
    Fe s3 = K->mul(K->mul(lams[0], lams[1]), lams[2]);
    ModuliPoint pt{contract(s1, F), contract(s2, F), contract(s3, F)};
    if (!(pt.s1 == F->add(pt.s3, F->from_int(2))))
        throw ModuliError("sigma1 = sigma3 + 2 violated");
    return pt;
}

Poly multiplier_polynomial(const ModuliPoint& pt) {
    Field F = pt.field();
    // x^3 - s1 x^2 + s2 x - (s1 - 2)
    return Poly{F->sub(F->from_int(2), pt.s1), pt.s2, F->neg(pt.s1), F->one()};
}

BiPoly BiPoly::make(Field F, int d1, int d2) {
    BiPoly b;
    b.F = F;
    b.d1 = d1;
    b.d2 = d2;
    b.c.assign(static_cast<size_t>(d1 + 1) * (d2 + 1), F->zero());
    return b;
}

Fe BiPoly::eval(const Fe& x1, const Fe& x2) const {
    Fe acc = F->zero();
    for (int j = d2; j >= 0; --j) {
        Fe row = F->zero();
        for (int i = d1; i >= 0; --i) row = F->add(F->mul(row, x1), at(i, j));
        acc = F->add(F->mul(acc, x2), row);
    }
    return acc;
}

bool BiPoly::equals(const BiPoly& o) const {
    int m1 = std::max(d1, o.d1), m2 = std::max(d2, o.d2);
    for (int i = 0; i <= m1; ++i)
        for (int j = 0; j <= m2; ++j) {
            Fe a = (i <= d1 && j <= d2) ? at(i, j) : F->zero();
            Fe b = (i <= o.d1 && j <= o.d2) ? o.at(i, j) : F->zero();
            if (!(a == b)) return false;
        }
    return true;
}

BiPoly bp_add(const BiPoly& a, const BiPoly& b) {
    BiPoly r = BiPoly::make(a.F, std::max(a.d1, b.d1), std::max(a.d2, b.d2));
    for (int i = 0; i <= r.d1; ++i)
        for (int j = 0; j <= r.d2; ++j) {
            Fe x = (i <= a.d1 && j <= a.d2) ? a.at(i, j) : a.F->zero();
            Fe y = (i <= b.d1 && j <= b.d2) ? b.at(i, j) : a.F->zero();
            r.at(i, j) = a.F->add(x, y);
        }
    return r;
}

BiPoly bp_sub(const BiPoly& a, const BiPoly& b) {
    BiPoly nb = b;
    for (Fe& e : nb.c) e = b.F->neg(e);
    return bp_add(a, nb);
}

BiPoly bp_mul(const BiPoly& a, const BiPoly& b) {
    BiPoly r = BiPoly::make(a.F, a.d1 + b.d1, a.d2 + b.d2);
    for (int i = 0; i <= a.d1; ++i)
        for (int j = 0; j <= a.d2; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int k = 0; k <= b.d1; ++k)
                for (int l = 0; l <= b.d2; ++l)
                    r.at(i + k, j + l) =
                        a.F->add(r.at(i + k, j + l), a.F->mul(a.at(i, j), b.at(k, l)));
        }
    return r;
}

BiPoly bp_from_terms(Field F, const std::vector<std::tuple<long long, int, int>>& terms) {
    int d1 = 0, d2 = 0;
    for (const auto& [v, i, j] : terms) {
        d1 = std::max(d1, i);
        d2 = std::max(d2, j);
    }
    BiPoly b = BiPoly::make(F, d1, d2);
    for (const auto& [v, i, j] : terms) b.at(i, j) = F->add(b.at(i, j), F->from_int(v));
    return b;
}

BiPoly locus_cubic(Field F) {
    // 2 s1^3 + s1^2 s2 - s1^2 - 4 s2^2 - 8 s1 s2 + 12 s1 + 12 s2 - 36
    return bp_from_terms(F, {{2, 3, 0},
                             {1, 2, 1},
                             {-1, 2, 0},
                             {-4, 0, 2},
                             {-8, 1, 1},
                             {12, 1, 0},
                             {12, 0, 1},
                             {-36, 0, 0}});
}

BiPoly per11_line(Field F) {
    return bp_from_terms(F, {{1, 0, 1}, {-2, 1, 0}, {3, 0, 0}});
}

BiPoly multiplier_discriminant(Field F) {
    // discriminant of x^3 + a x^2 + b x + c with a = -s1, b = s2, c = -(s1-2):
    // 18 a b c - 4 a^3 c + a^2 b^2 - 4 b^3 - 27 c^2
    BiPoly a = bp_from_terms(F, {{-1, 1, 0}});
    BiPoly b = bp_from_terms(F, {{1, 0, 1}});
    BiPoly c = bp_from_terms(F, {{-1, 1, 0}, {2, 0, 0}});
    BiPoly t18 = bp_mul(bp_from_terms(F, {{18, 0, 0}}), bp_mul(a, bp_mul(b, c)));
    BiPoly t4a3c = bp_mul(bp_from_terms(F, {{-4, 0, 0}}), bp_mul(bp_mul(a, bp_mul(a, a)), c));
    BiPoly ta2b2 = bp_mul(bp_mul(a, a), bp_mul(b, b));
    BiPoly t4b3 = bp_mul(bp_from_terms(F, {{-4, 0, 0}}), bp_mul(b, bp_mul(b, b)));
    BiPoly t27c2 = bp_mul(bp_from_terms(F, {{-27, 0, 0}}), bp_mul(c, c));
    return bp_add(bp_add(t18, t4a3c), bp_add(ta2b2, bp_add(t4b3, t27c2)));
}

bool discriminant_identity_holds(uint64_t p) {
    Field F = create_field(p, 1);
    BiPoly lhs = multiplier_discriminant(F);
    BiPoly rhs = bp_mul(per11_line(F), locus_cubic(F));
    return lhs.equals(rhs);
}

LocusVerdict locus_verdict(uint64_t p, const ModuliPoint& pt) {
    Field F = pt.field();
    if (F->p != p) throw ModuliError("characteristic mismatch");
    LocusVerdict v;
    v.on_Per11 = per11_line(F).eval(pt.s1, pt.s2).is_zero();
    if (p == 2) {
        v.on_S = pt.s1.is_zero();
        bool s2_zero = pt.s2.is_zero();
        bool s2_one = pt.s2 == F->one();
        if (v.on_S && s2_zero) {
            v.special = SpecialPoint::Cusp;  // the triple-multiplier point
            v.predicted = PredictedAut::S3;
        } else if (v.on_S && s2_one) {
            v.special = SpecialPoint::Char2AlphaTwoPoint;
            v.predicted = PredictedAut::TrivialAlpha2;
        } else if (v.on_S) {
            v.predicted = PredictedAut::C2;
        } else {
            v.predicted = PredictedAut::Trivial;
        }
        if (pt.s1 == F->one() && pt.s2 == F->one()) v.special = SpecialPoint::TripleOne;
        return v;
    }
    v.on_S = locus_cubic(F).eval(pt.s1, pt.s2).is_zero();
    ModuliPoint cusp{F->from_int(p == 3 ? 0 : -6), F->from_int(p == 3 ? 0 : 12), F->zero()};
    bool at_cusp = pt.s1 == cusp.s1 && pt.s2 == cusp.s2;
    bool at_triple_one = pt.s1 == F->from_int(3) && pt.s2 == F->from_int(3);
    if (!v.on_S) {
        v.predicted = PredictedAut::Trivial;
        if (at_triple_one) v.special = SpecialPoint::TripleOne;
        return v;
    }
    if (at_cusp) {
        v.special = SpecialPoint::Cusp;
        v.predicted = p == 3 ? PredictedAut::C2 : PredictedAut::S3;
    } else {
        if (at_triple_one) v.special = SpecialPoint::TripleOne;
        v.predicted = PredictedAut::C2;
    }
    return v;
}

LocusVerdict locus_verdict_ints(uint64_t p, long long s1, long long s2) {
    Field F = create_field(p, 1);
    ModuliPoint pt{F->from_int(s1), F->from_int(s2), F->sub(F->from_int(s1), F->from_int(2))};
    return locus_verdict(p, pt);
}

CuspData cusp_point(uint64_t p) {
    if (p == 2) throw ModuliError("the char-2 locus is a line pair: no cusp in this sense");
    Field F = create_field(p, 1);
    CuspData out;
    if (p == 3) {
        out.point = ModuliPoint{F->zero(), F->zero(), F->from_int(-2)};
        out.t1 = 1;
        out.t2 = 1;  // double tangent -(s1 + s2)^2
    } else {
        out.point = ModuliPoint{F->from_int(-6), F->from_int(12), F->from_int(-8)};
        out.t1 = 5;
        out.t2 = 2;  // double tangent -(5 s1' + 2 s2')^2
    }
    // verify: both partial derivatives vanish at the point
    BiPoly S = locus_cubic(F);
    auto partial = [&](const BiPoly& b, bool wrt_s1) {
        BiPoly r = BiPoly::make(F, b.d1, b.d2);
        for (int i = 0; i <= b.d1; ++i)
            for (int j = 0; j <= b.d2; ++j) {
                if (wrt_s1 && i >= 1)
                    r.at(i - 1, j) = F->mul(b.at(i, j), F->from_int(i));
                else if (!wrt_s1 && j >= 1)
                    r.at(i, j - 1) = F->mul(b.at(i, j), F->from_int(j));
            }
        return r;
    };
    if (!partial(S, true).eval(out.point.s1, out.point.s2).is_zero() ||
        !partial(S, false).eval(out.point.s1, out.point.s2).is_zero())
        throw ModuliError("cusp candidate is not singular");
    // the tangent line must not divide the cubic: S(t. parametrized line) != 0
    // with s1' = t2 * t, s2' = -t1 * t
    Field K = F;
    Poly t_param;  // S(point + t*(t2, -t1)) as a polynomial in t
    {
        // evaluate symbolically by expanding in powers of t using three
        // sample points would risk aliasing over tiny fields; expand exactly
        BiPoly Sc = S;
        // substitute s1 = s1_0 + t2 * t, s2 = s2_0 - t1 * t; collect in t
        std::vector<Fe> acc(8, K->zero());
        Fe dt1 = K->from_int(out.t2), dt2 = K->from_int(-out.t1);
        for (int i = 0; i <= Sc.d1; ++i)
            for (int j = 0; j <= Sc.d2; ++j) {
                if (Sc.at(i, j).is_zero()) continue;
                // (s1_0 + dt1 t)^i (s2_0 + dt2 t)^j
                std::vector<Fe> a{K->one()};
                auto mul_lin = [&](std::vector<Fe> v, const Fe& c0, const Fe& c1) {
                    std::vector<Fe> r(v.size() + 1, K->zero());
                    for (size_t s = 0; s < v.size(); ++s) {
                        r[s] = K->add(r[s], K->mul(v[s], c0));
                        r[s + 1] = K->add(r[s + 1], K->mul(v[s], c1));
                    }
                    return r;
                };
                for (int s = 0; s < i; ++s) a = mul_lin(a, out.point.s1, dt1);
                for (int s = 0; s < j; ++s) a = mul_lin(a, out.point.s2, dt2);
                for (size_t s = 0; s < a.size() && s < acc.size(); ++s)
                    acc[s] = K->add(acc[s], K->mul(a[s], Sc.at(i, j)));
            }
        t_param = poly_trim(std::move(acc));
    }
    if (t_param.empty()) throw ModuliError("tangent line divides the cubic");
    return out;
}

RatMap normal_form_map(const Fe& lambda) {
    Field F = lambda.F;
    if (F->mul(lambda, lambda) == F->one()) throw ModuliError("lambda^2 = 1 excluded");
    Poly num{F->zero(), lambda, F->one()};
    Poly den{F->one(), lambda};
    return ratmap_from_univariate(num, den);
}

Char2Family char2_family(const Fe& c) {
    Field F = c.F;
    if (F->p != 2) throw ModuliError("char2_family requires characteristic 2");
    Poly num{F->zero(), c, F->one()};
    RatMap f = ratmap_from_univariate(num, Poly{F->one()});
    Char2Family out{f, ModuliPoint{F->zero(), F->mul(c, c), F->zero()},
                    Mobius::affine(F->one(), F->add(c, F->one()))};
    out.sigma.s3 = F->zero();
    return out;
}

}  // namespace p1dyn
