#include "p1dyn/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace p1dyn {

namespace {

uint32_t power_of_char(uint64_t q, uint64_t p) {
    uint32_t j = 0;
    for (uint64_t t = q; t > 1; t /= p, ++j)
        if (t % p != 0) throw ConstructionError("q is not a power of the characteristic");
    if (j == 0) throw ConstructionError("q must be at least 2");
    return j;
}

Field join_fields(Field A, Field B) {
    if (A->p != B->p) throw ConstructionError("characteristic mismatch");
    return create_field(A->p, std::lcm(A->k, B->k));
}

std::string fe_str(const Fe& e) { return e.F->to_string(e); }

GroupDesc conjugated_group(const GroupDesc& g, const Mobius& tau) {
    // tau * g * tau^{-1}
    GroupDesc out;
    Field K = tau.field();
    out.F = K;
    Mobius ti = tau.inverse();
    for (const auto& m : g.elements)
        out.elements.push_back(mobius_compose(mobius_compose(tau, mobius_embed(m, K)), ti));
    out.elements = sort_unique(std::move(out.elements));
    out.label = g.label;
    return out;
}

std::vector<uint64_t> spectrum_keys(const RatMap& f, int period, int ext_cap) {
    // sorted multiplier keys over the minimal splitting extension, with
    // multiplicity; empty when the splitting degree exceeds the cap
    RatMap g = period == 1 ? f : compose(f, f);
    Poly u = fixed_point_form(g).dehomogenize();
    int m = poly_deg(u) >= 1 ? poly_splitting_degree(u, ext_cap) : 1;
    if (m >= ext_cap) return {};
    Field K = create_field(f.field()->p, f.field()->k * m);
    std::vector<uint64_t> keys;
    for (const auto& pm : fixed_points(g, K)) {
        uint64_t key = elem_key(multiplier(g, pm.P));
        for (int i = 0; i < pm.mult; ++i) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

long long integer_resultant(const std::vector<long long>& num, const std::vector<long long>& den) {
    // Sylvester determinant of the two binary forms, both taken at the larger
    // declared degree, denominator rows first (the sign convention the
    // characteristic-0 reduction certificates are stated in); fraction-free
    // Bareiss elimination in 128-bit integers
    size_t n = std::max(num.size(), den.size()) - 1;
    size_t N = 2 * n;
    std::vector<std::vector<__int128>> M(N, std::vector<__int128>(N, 0));
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i < den.size(); ++i)
            M[r][r + (n - i)] = den[i];
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i < num.size(); ++i)
            M[n + r][r + (n - i)] = num[i];
    __int128 prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < N; ++k) {
        if (M[k][k] == 0) {
            size_t s = k + 1;
            while (s < N && M[s][k] == 0) ++s;
            if (s == N) return 0;
            std::swap(M[s], M[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < N; ++i)
            for (size_t j = k + 1; j < N; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    __int128 det = sign * M[N - 1][N - 1];
    return static_cast<long long>(det);
}

ConstructionRecord power_map(const Fe& a, uint64_t q) {
    if (a.is_zero()) throw ConstructionError("a must be nonzero");
    Field F = a.F;
    uint32_t j = power_of_char(q, F->p);
    Field K = create_field(F->p, std::lcm(F->k, j));
    Fe aK = embed(a, K);
    // f = psi(z^q - z) + z for psi = a z, that is a z^q + (1-a) z
    HomPoly num = HomPoly::zero(K, static_cast<int>(q));
    num.coeffs[q] = aK;
    num.coeffs[1] = K->sub(K->one(), aK);
    HomPoly den = HomPoly::zero(K, static_cast<int>(q));
    den.coeffs[0] = K->one();
    ConstructionRecord rec;
    rec.name = "power-map";
    rec.parameters["a"] = fe_str(a);
    rec.parameters["q"] = std::to_string(q);
    rec.parameters["group_rational_over_base"] = "true";
    rec.map = normalize(num, den);
    Field Q = create_field(F->p, j);
    if (aK == K->one()) {
        rec.claimed_group = enumerate_pgl2(Q, Q->q);
        rec.claim = "automorphism group is PGL2(F_" + std::to_string(q) + ")";
    } else {
        rec.claimed_group = standard_subgroup(Q, StandardKind::Borel, q);
        rec.claim = "automorphism group is the Borel group of GF(" + std::to_string(q) + ")";
    }
    rec.search_field = K;
    return rec;
}

ConstructionRecord affine_psi_map(const Fe& a, const Fe& b, uint64_t q) {
    if (a.is_zero()) throw ConstructionError("a must be nonzero");
    Field F = a.F;
    uint32_t j = power_of_char(q, F->p);
    Field K0 = create_field(F->p, std::lcm(F->k, j));
    Fe aK = embed(a, K0), bK = embed(b.F == F ? b : contract(b, F), K0);
    // f = a z^q + (1-a) z + b
    Poly fz(q + 1, K0->zero());
    fz[q] = aK;
    fz[1] = K0->sub(K0->one(), aK);
    fz[0] = bK;
    Poly one{K0->one()};
    // conjugator to the b = 0 representative: a root of a z^q - a z + b
    Poly cpoly(q + 1, K0->zero());
    cpoly[q] = aK;
    cpoly[1] = K0->neg(aK);
    cpoly[0] = bK;
    int m = poly_splitting_degree(cpoly, 16);
    Field K = create_field(K0->p, K0->k * m);
    Fe c = poly_roots(cpoly, K).at(0).root;
    Mobius tau = Mobius::affine(K->one(), c);
    ConstructionRecord rec;
    rec.name = "affine-psi";
    rec.parameters["a"] = fe_str(a);
    rec.parameters["b"] = fe_str(b);
    rec.parameters["q"] = std::to_string(q);
    rec.parameters["group_rational_over_base"] = b.is_zero() ? "true" : "false";
    rec.map = ratmap_from_univariate(fz, one);
    rec.conjugator = tau;
    Field Q = create_field(F->p, j);
    GroupDesc base_claim = aK == K0->one() ? enumerate_pgl2(Q, Q->q)
                                           : standard_subgroup(Q, StandardKind::Borel, q);
    // Aut(f) = tau Aut(f0) tau^{-1} for f^tau = f0
    rec.claimed_group = conjugated_group(base_claim, tau);
    rec.claim = (aK == K0->one() ? std::string("conjugate of PGL2(F_q) for q = ")
                                 : std::string("conjugate of the Borel group for q = ")) +
                std::to_string(q);
    rec.search_field = K;
    return rec;
}

ConstructionRecord fractional_psi_map(const Fe& a, const Fe& b, const Fe& c, const Fe& d,
                                      uint64_t q) {
    Field F = a.F;
    if (c.is_zero()) throw ConstructionError("c must be nonzero");
    Fe delta = F->sub(F->mul(a, d), F->mul(b, c));
    if (delta.is_zero()) throw ConstructionError("psi is degenerate: ad - bc = 0");
    uint32_t j = power_of_char(q, F->p);
    Field K0 = create_field(F->p, std::lcm(F->k, j));
    Poly pn{embed(b, K0), embed(a, K0)};
    Poly pd{embed(d, K0), embed(c, K0)};
    RatMap f = psi_map(pn, pd, q);
    ConstructionRecord rec;
    rec.name = "fractional-psi";
    rec.parameters["a"] = fe_str(a);
    rec.parameters["b"] = fe_str(b);
    rec.parameters["c"] = fe_str(c);
    rec.parameters["d"] = fe_str(d);
    rec.parameters["q"] = std::to_string(q);
    Field Q = create_field(F->p, j);
    if (!a.is_zero() || F->p == 2) {
        // translations by GF(q)
        std::vector<Mobius> elems;
        for (uint64_t t = 0; t < Q->q; ++t)
            elems.push_back(Mobius::affine(Q->one(), Q->from_key(t)));
        rec.claimed_group.F = Q;
        rec.claimed_group.elements = sort_unique(std::move(elems));
        rec.claimed_group.label = recognize_group_type(rec.claimed_group.elements, Q);
        rec.claim = "automorphism group is the translation group of order " + std::to_string(q);
        bool hit = false;
        Field S = aut_search_field(f, 12, &hit);
        rec.search_field = join_fields(S, Q);
    } else {
        // dihedral of order 2q: translations plus z -> -z + s, s^q - s = -2d
        Fe dK = embed(F->div(d, c), K0);
        Poly spoly(q + 1, K0->zero());
        spoly[q] = K0->one();
        spoly[1] = K0->from_int(-1);
        spoly[0] = K0->mul(K0->from_int(2), dK);
        int m = poly_splitting_degree(spoly, 16);
        Field K = create_field(K0->p, K0->k * m);
        Fe s = poly_roots(spoly, K).at(0).root;
        std::vector<Mobius> gens;
        for (uint32_t i = 0; i < j; ++i) {
            Fe e = Q->zero();
            e.c[i] = 1;
            gens.push_back(Mobius::affine(K->one(), embed(e, K)));
        }
        gens.push_back(Mobius::make(K->from_int(-1), s, K->zero(), K->one()));
        rec.claimed_group = group_closure(gens);
        rec.claim = "automorphism group is dihedral of order " + std::to_string(2 * q);
        bool hit = false;
        Field S = aut_search_field(f, 12, &hit);
        rec.search_field = join_fields(S, K);
    }
    rec.map = f;
    return rec;
}

ConstructionRecord semi_elementary_map(Field F, const std::vector<Fe>& lambda_basis, uint64_t n) {
    GroupDesc gamma = semi_elementary_subgroup(F, lambda_basis, n);
    Field K = gamma.F;
    // product of (z - l) over the subgroup Lambda
    std::vector<Fe> lambda;
    for (const auto& m : gamma.elements)
        if (m.a == K->one()) lambda.push_back(m.b);  // translation parts enumerate Lambda
    std::sort(lambda.begin(), lambda.end(), elem_less);
    lambda.erase(std::unique(lambda.begin(), lambda.end()), lambda.end());
    Poly prod{K->one()};
    for (const Fe& l : lambda) prod = poly_mul(prod, Poly{K->neg(l), K->one()});
    Poly fz{K->zero(), K->one()};
    Poly power{K->one()};
    for (uint64_t i = 0; i < n + 1; ++i) power = poly_mul(power, prod);
    fz = poly_add(power, fz);
    ConstructionRecord rec;
    rec.name = "semi-elementary";
    rec.parameters["lambda_order"] = std::to_string(lambda.size());
    rec.parameters["n"] = std::to_string(n);
    rec.map = ratmap_from_univariate(fz, Poly{K->one()});
    rec.claimed_group = gamma;
    rec.claim = "automorphism group is the semi-elementary group of order " +
                std::to_string(lambda.size() * n);
    rec.search_field = K;
    return rec;
}

ConstructionRecord psl2_map(uint64_t q) {
    if (q % 2 == 0) throw ConstructionError("q must be odd");
    // the map degree grows like q^3/2; verification stays in seconds up to 9
    if (q < 3 || q > 9) throw ConstructionError("q outside the supported range");
    auto [u1, c1] = fundamental_sl2_invariants(q);
    uint64_t a = (q * (q - 3) + 4) / 2;
    uint64_t b = (q - 1) / 2;
    HomPoly F = hp_pow(c1, static_cast<uint32_t>(b));
    HomPoly G = hp_pow(u1, static_cast<uint32_t>(a));
    RatMap f = dm_map(F, G);
    if (static_cast<uint64_t>(f.degree()) != psl2_min_degree(q))
        throw ConstructionError("constructed degree disagrees with the minimal degree");
    Field Q = u1.F;
    ConstructionRecord rec;
    rec.name = "psl2";
    rec.parameters["q"] = std::to_string(q);
    rec.parameters["a"] = std::to_string(a);
    rec.parameters["b"] = std::to_string(b);
    rec.map = f;
    rec.claimed_group = standard_subgroup(Q, StandardKind::PSL2, q);
    rec.claim = "automorphism group is PSL2(F_" + std::to_string(q) + ")";
    rec.search_field = Q;
    // non-membership witness: [alpha x : y] for the least non-square alpha
    for (uint64_t key = 1; key < Q->q; ++key) {
        Fe alpha = Q->from_key(key);
        if (!is_square(alpha)) {
            rec.non_member_witness = Mobius::make(alpha, Q->zero(), Q->zero(), Q->one());
            break;
        }
    }
    return rec;
}

ConstructionRecord psl2_prime_map(uint64_t p, const Fe& c) {
    if (p < 3) throw ConstructionError("p must be an odd prime");
    if (c.is_zero()) throw ConstructionError("c must be nonzero");
    Field F = c.F;
    if (F->p != p) throw ConstructionError("c must live in characteristic p");
    uint64_t m = (p * p - 3 * p + 4) / 2;
    // psi = c z^m / ((z^(p-1) + 1)^((p-1)/2) + c z^(m-1))
    Poly num((size_t)m + 1, F->zero());
    num[m] = c;
    Poly base((size_t)p, F->zero());
    base[0] = F->one();
    base[p - 1] = F->one();
    Poly den{F->one()};
    for (uint64_t i = 0; i < (p - 1) / 2; ++i) den = poly_mul(den, base);
    Poly shift((size_t)m, F->zero());
    shift[m - 1] = c;
    den = poly_add(den, shift);
    RatMap f = psi_map(num, den, p);
    ConstructionRecord rec;
    rec.name = "psl2-prime";
    rec.parameters["p"] = std::to_string(p);
    rec.parameters["c"] = fe_str(c);
    rec.parameters["m"] = std::to_string(m);
    rec.map = f;
    Field Q = create_field(p, 1);
    rec.claimed_group = standard_subgroup(Q, StandardKind::PSL2, p);
    rec.claim = "automorphism group is PSL2(F_" + std::to_string(p) + ")";
    rec.search_field = join_fields(f.field(), Q);
    rec.multiplier_spectrum_fixed = spectrum_keys(f, 1, 12);
    rec.multiplier_spectrum_period2 = spectrum_keys(f, 2, 12);
    return rec;
}

ConstructionRecord cyclic_map(uint64_t n, Field F) {
    if (n < 2) throw ConstructionError("n must be at least 2");
    if (n % F->p == 0) throw ConstructionError("p divides n");
    // f = 1/z^(n-1) + z = (z^n + 1) / z^(n-1)
    Poly num((size_t)n + 1, F->zero());
    num[0] = F->one();
    num[n] = F->one();
    Poly den((size_t)n, F->zero());
    den[n - 1] = F->one();
    RatMap f = ratmap_from_univariate(num, den);
    ConstructionRecord rec;
    rec.name = "cyclic";
    rec.parameters["n"] = std::to_string(n);
    rec.map = f;
    rec.claimed_group = standard_subgroup(F, StandardKind::Cyclic, n);
    rec.claim = "automorphism group is cyclic of order " + std::to_string(n);
    bool hit = false;
    Field S = aut_search_field(f, 12, &hit);
    rec.search_field = join_fields(S, rec.claimed_group.F);
    return rec;
}

ConstructionRecord dihedral_map(uint64_t n, Field F, std::optional<Fe> a_forced) {
    const uint64_t p = F->p;
    if (p == 2) throw ConstructionError("dihedral realization requires p > 2");
    if (n < 2 || n % p == 0) throw ConstructionError("n must be >= 2 and coprime to p");
    ConstructionRecord rec;
    rec.name = "dihedral";
    rec.parameters["n"] = std::to_string(n);
    RatMap f = [&]() -> RatMap {
        if (a_forced) {
            if (n != 2) throw ConstructionError("the cubic family applies to n = 2 only");
            Field K = a_forced->F;
            for (long long bad : {-3ll, -1ll, 0ll, 1ll})
                if (*a_forced == K->from_int(bad))
                    throw ConstructionError("a lies in the exceptional set");
            rec.parameters["branch"] = "cubic-family";
            rec.parameters["a"] = fe_str(*a_forced);
            Poly num{K->zero(), *a_forced, K->zero(), K->one()};
            Poly den{K->one(), K->zero(), *a_forced};
            return ratmap_from_univariate(num, den);
        }
        if ((n + 1) % p != 0) {
            rec.parameters["branch"] = "z^(n+1)";
            Poly num((size_t)n + 2, F->zero());
            num[n + 1] = F->one();
            return ratmap_from_univariate(num, Poly{F->one()});
        }
        if (n % p != 1 && n > 2) {
            rec.parameters["branch"] = "1/z^(n-1)";
            Poly den((size_t)n, F->zero());
            den[n - 1] = F->one();
            return ratmap_from_univariate(Poly{F->one()}, den);
        }
        if (n == 2) {
            // least valid a in the canonical element order, extending the
            // field when every element is exceptional (p = 3)
            for (uint32_t ext = 1; ext <= 2; ++ext) {
                Field K = create_field(p, F->k * ext);
                std::vector<uint64_t> bad;
                for (long long v : {-3ll, -1ll, 0ll, 1ll}) bad.push_back(elem_key(K->from_int(v)));
                for (uint64_t key = 0; key < K->q; ++key) {
                    if (std::find(bad.begin(), bad.end(), key) != bad.end()) continue;
                    Fe a = K->from_key(key);
                    rec.parameters["branch"] = "cubic-family";
                    rec.parameters["a"] = fe_str(a);
                    Poly num{K->zero(), a, K->zero(), K->one()};
                    Poly den{K->one(), K->zero(), a};
                    return ratmap_from_univariate(num, den);
                }
            }
        }
        throw ConstructionError("no dihedral branch applies");
    }();
    rec.map = f;
    rec.claimed_group = standard_subgroup(F, StandardKind::Dihedral, n);
    rec.claim = "automorphism group is dihedral of order " + std::to_string(2 * n);
    bool hit = false;
    Field S = aut_search_field(f, 12, &hit);
    rec.search_field = join_fields(join_fields(S, rec.claimed_group.F), f.field());
    return rec;
}

ConstructionRecord platonic_map(Platonic kind, uint64_t p) {
    ConstructionRecord rec;
    rec.name = "platonic";
    rec.parameters["p"] = std::to_string(p);
    Field Fp = create_field(p, 1);
    RatMap f = [&]() -> RatMap {
        switch (kind) {
            case Platonic::A4: {
                if (p < 5) throw ConstructionError("A4 requires p >= 5");
                rec.parameters["kind"] = "A4";
                // sqrt(-3) in GF(p) or GF(p^2)
                Poly sq{Fp->from_int(3), Fp->zero(), Fp->one()};
                int m = poly_splitting_degree(sq, 2);
                Field K = create_field(p, m);
                Fe s = poly_roots(sq, K).at(0).root;
                rec.parameters["sqrt_minus_3"] = fe_str(s);
                // (s z^2 - 1) / (z^3 - s z)
                Poly num{K->from_int(-1), K->zero(), s};
                Poly den{K->zero(), K->neg(s), K->zero(), K->one()};
                return ratmap_from_univariate(num, den);
            }
            case Platonic::S4: {
                if (p < 5) throw ConstructionError("S4 requires p >= 5");
                rec.parameters["kind"] = "S4";
                if (p != 5) {
                    rec.parameters["variant"] = "degree-5";
                    return ratmap_from_ints(Fp, {0, 5, 0, 0, 0, -1}, {-1, 0, 0, 0, 5});
                }
                rec.parameters["variant"] = "degree-7-fallback";
                return ratmap_from_ints(Fp, {-1, 0, 0, 0, -7}, {0, 0, 0, 7, 0, 0, 0, 1});
            }
            case Platonic::A5: {
                if (p < 7) throw ConstructionError("A5 requires p >= 7");
                rec.parameters["kind"] = "A5";
                if (p != 11) {
                    rec.parameters["variant"] = "degree-11";
                    return ratmap_from_ints(Fp, {0, -11, 0, 0, 0, 0, 66, 0, 0, 0, 0, 1},
                                            {1, 0, 0, 0, 0, -66, 0, 0, 0, 0, -11});
                }
                rec.parameters["variant"] = "degree-19-fallback";
                return ratmap_from_ints(
                    Fp, {1, 0, 0, 0, 0, 171, 0, 0, 0, 0, 247, 0, 0, 0, 0, -57},
                    {0, 0, 0, 0, -57, 0, 0, 0, 0, -247, 0, 0, 0, 0, 171, 0, 0, 0, 0, -1});
            }
        }
        throw ConstructionError("unknown platonic kind");
    }();
    rec.map = f;
    rec.parameters["degree"] = std::to_string(f.degree());
    // degree test: no automorphism of order p can exist when p divides none
    // of deg-1, deg, deg+1
    uint64_t d = f.degree();
    bool degtest_ok = (d % p != 0) && ((d + 1) % p != 0) && ((d - 1) % p != 0);
    rec.parameters["p_regular_by_degree_test"] = degtest_ok ? "true" : "false";
    if (!degtest_ok) throw ConstructionError("degree test admits p-irregular symmetry");
    StandardKind sk = kind == Platonic::A4   ? StandardKind::A4
                      : kind == Platonic::S4 ? StandardKind::S4
                                             : StandardKind::A5;
    rec.claimed_group = standard_subgroup(Fp, sk, 0);
    rec.claim = std::string("automorphism group is ") +
                (kind == Platonic::A4 ? "A4" : kind == Platonic::S4 ? "S4" : "A5");
    bool hit = false;
    Field S = aut_search_field(f, 12, &hit);
    rec.search_field = join_fields(join_fields(S, rec.claimed_group.F), f.field());
    return rec;
}

VerifyOutcome verify_record(const ConstructionRecord& rec) {
    VerifyOutcome out;
    out.aut = aut_group(rec.map, rec.search_field);
    out.ok = out.aut.group.same_elements(rec.claimed_group);
    return out;
}

}  // namespace p1dyn
