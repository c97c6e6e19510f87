#include "p1dyn/ff.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>

namespace p1dyn {

namespace {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---- raw polynomials over Z/p (low-to-high), used to bootstrap contexts ----

using ZpPoly = std::vector<uint32_t>;

ZpPoly zp_trim(ZpPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int zp_deg(const ZpPoly& f) { return static_cast<int>(f.size()) - 1; }

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    return zp_trim(std::move(r));
}

uint32_t zp_inv_scalar(uint32_t a, uint32_t p) {
    // extended Euclid on integers
    int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int64_t qq = r / newr;
        std::tie(t, newt) = std::make_tuple(newt, t - qq * newt);
        std::tie(r, newr) = std::make_tuple(newr, r - qq * newr);
    }
    if (r != 1) throw FieldError("not invertible mod p");
    return static_cast<uint32_t>(((t % p) + p) % p);
}

ZpPoly zp_rem(ZpPoly a, const ZpPoly& b, uint32_t p) {
    a = zp_trim(std::move(a));
    uint32_t lead_inv = zp_inv_scalar(b.back(), p);
    while (zp_deg(a) >= zp_deg(b)) {
        uint32_t factor = static_cast<uint32_t>(uint64_t(a.back()) * lead_inv % p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            uint64_t sub = uint64_t(factor) * b[i] % p;
            a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
        }
        a = zp_trim(std::move(a));
    }
    return a;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, uint32_t p) {
    a = zp_trim(std::move(a));
    b = zp_trim(std::move(b));
    while (!b.empty()) {
        ZpPoly r = zp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint32_t s = zp_inv_scalar(a.back(), p);
        for (auto& c : a) c = static_cast<uint32_t>(uint64_t(c) * s % p);
    }
    return a;
}

ZpPoly zp_powmod(ZpPoly base, uint64_t e, const ZpPoly& mod, uint32_t p) {
    ZpPoly result{1};
    base = zp_rem(std::move(base), mod, p);
    while (e > 0) {
        if (e & 1) result = zp_rem(zp_mul(result, base, p), mod, p);
        base = zp_rem(zp_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return result;
}

ZpPoly zp_sub(const ZpPoly& a, const ZpPoly& b, uint32_t p) {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint32_t x = i < a.size() ? a[i] : 0;
        uint32_t y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    return zp_trim(std::move(r));
}

// Monic f of degree k >= 1 over GF(p): irreducible iff x^(p^k) = x mod f and
// gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
bool zp_irreducible(const ZpPoly& f, uint32_t p) {
    int k = zp_deg(f);
    if (k < 1) return false;
    if (k == 1) return true;
    ZpPoly x{0, 1};
    uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    if (!zp_sub(zp_powmod(x, pk, f, p), x, p).empty()) return false;
    int kk = k;
    for (int r = 2; r <= kk; ++r) {
        if (kk % r != 0) continue;
        while (kk % r == 0) kk /= r;
        uint64_t pe = 1;
        for (int i = 0; i < k / r; ++i) pe *= p;
        ZpPoly diff = zp_sub(zp_powmod(x, pe, f, p), x, p);
        if (zp_deg(zp_gcd(diff, f, p)) > 0) return false;
    }
    return true;
}

std::vector<uint32_t> find_modulus(uint32_t p, uint32_t k) {
    if (k == 1) return {0, 1};  // x
    // lexicographically least monic irreducible, comparing (c0, c1, ...).
    // c0 = 0 is divisible by x, so the scan starts at the c0 = 1 block.
    uint64_t total = 1, block = 1;
    for (uint32_t i = 0; i < k; ++i) total *= p;
    for (uint32_t i = 0; i + 1 < k; ++i) block *= p;
    for (uint64_t m = block; m < total; ++m) {
        ZpPoly f(k + 1, 0);
        f[k] = 1;
        uint64_t t = m;
        for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
            f[i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        // cheap prefilter: no roots in GF(p)
        bool has_root = false;
        for (uint32_t x = 0; x < p && !has_root; ++x) {
            uint64_t acc = 0;
            for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
            if (acc == 0) has_root = true;
        }
        if (has_root) continue;
        if (zp_irreducible(f, p)) return f;
    }
    throw FieldError("no irreducible modulus found");  // unreachable
}

struct Registry {
    std::mutex mu;
    std::map<std::pair<uint64_t, uint32_t>, std::unique_ptr<FieldCtx>> fields;
    // per (source, target): powers of the image of the source generator;
    // shared_ptr so threads can hold the table without the lock
    std::map<std::pair<Field, Field>, std::shared_ptr<const std::vector<Fe>>> embeddings;
    // per (sub, big): column-major matrix of embedded sub basis, for contract
    std::map<std::pair<Field, Field>, std::vector<std::vector<uint32_t>>> contract_basis;
};

Registry& registry() {
    static Registry* r = new Registry();
    return *r;
}

void check_same(const Fe& a, const Fe& b) {
    if (a.F != b.F) throw FieldError("field context mismatch");
}

}  // namespace

bool Fe::is_zero() const {
    for (uint32_t v : c)
        if (v != 0) return false;
    return true;
}

uint64_t elem_key(const Fe& e) {
    uint64_t key = 0;
    for (size_t i = e.c.size(); i-- > 0;) key = key * e.F->p + e.c[i];
    return key;
}

bool elem_less(const Fe& a, const Fe& b) { return elem_key(a) < elem_key(b); }

Fe FieldCtx::zero() const { return Fe{this, std::vector<uint32_t>(k, 0)}; }

Fe FieldCtx::one() const {
    Fe e = zero();
    e.c[0] = 1 % p;
    return e;
}

Fe FieldCtx::from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    Fe e = zero();
    e.c[0] = static_cast<uint32_t>(r);
    return e;
}

Fe FieldCtx::from_key(uint64_t key) const {
    Fe e = zero();
    for (uint32_t i = 0; i < k; ++i) {
        e.c[i] = static_cast<uint32_t>(key % p);
        key /= p;
    }
    return e;
}

Fe FieldCtx::gen() const {
    Fe e = zero();
    if (k > 1) e.c[1] = 1;
    return e;  // class of x; zero when k = 1 (modulus x)
}

Fe FieldCtx::add(const Fe& a, const Fe& b) const {
    check_same(a, b);
    Fe r = a;
    for (uint32_t i = 0; i < k; ++i) r.c[i] = (r.c[i] + b.c[i]) % p;
    return r;
}

Fe FieldCtx::sub(const Fe& a, const Fe& b) const {
    check_same(a, b);
    Fe r = a;
    for (uint32_t i = 0; i < k; ++i) r.c[i] = (r.c[i] + p - b.c[i]) % p;
    return r;
}

Fe FieldCtx::neg(const Fe& a) const {
    Fe r = a;
    for (uint32_t i = 0; i < k; ++i) r.c[i] = (p - r.c[i]) % p;
    return r;
}

Fe FieldCtx::mul(const Fe& a, const Fe& b) const {
    check_same(a, b);
    if (k == 1) {
        Fe r = zero();
        r.c[0] = static_cast<uint32_t>(uint64_t(a.c[0]) * b.c[0] % p);
        return r;
    }
    std::vector<uint64_t> prod(2 * k - 1, 0);
    for (uint32_t i = 0; i < k; ++i) {
        if (a.c[i] == 0) continue;
        for (uint32_t j = 0; j < k; ++j)
            prod[i + j] = (prod[i + j] + uint64_t(a.c[i]) * b.c[j]) % p;
    }
    // reduce by the monic modulus
    for (size_t d = prod.size(); d-- > k;) {
        uint64_t lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        for (uint32_t i = 0; i < k; ++i)
            prod[d - k + i] = (prod[d - k + i] + uint64_t(p - modulus[i]) % p * lead) % p;
    }
    Fe r = zero();
    for (uint32_t i = 0; i < k; ++i) r.c[i] = static_cast<uint32_t>(prod[i]);
    return r;
}

Fe FieldCtx::inv(const Fe& a) const {
    if (a.is_zero()) throw FieldError("division by zero");
    if (k == 1) {
        Fe r = zero();
        r.c[0] = zp_inv_scalar(a.c[0], p);
        return r;
    }
    // extended Euclid on representative polynomials
    ZpPoly r0(modulus.begin(), modulus.end());
    ZpPoly r1(a.c.begin(), a.c.end());
    r1 = zp_trim(std::move(r1));
    ZpPoly t0{}, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        ZpPoly q;
        ZpPoly rem = r0;
        uint32_t lead_inv = zp_inv_scalar(r1.back(), p);
        while (zp_deg(rem) >= zp_deg(r1)) {
            uint32_t factor = static_cast<uint32_t>(uint64_t(rem.back()) * lead_inv % p);
            size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = factor;
            for (size_t i = 0; i < r1.size(); ++i) {
                uint64_t s = uint64_t(factor) * r1[i] % p;
                rem[shift + i] = static_cast<uint32_t>((rem[shift + i] + p - s) % p);
            }
            rem = zp_trim(std::move(rem));
        }
        ZpPoly qt1 = zp_mul(q, t1, p);
        ZpPoly nt(std::max(t0.size(), qt1.size()), 0);
        for (size_t i = 0; i < nt.size(); ++i) {
            uint32_t x = i < t0.size() ? t0[i] : 0;
            uint32_t y = i < qt1.size() ? qt1[i] : 0;
            nt[i] = (x + p - y) % p;
        }
        t0 = std::move(t1);
        t1 = zp_trim(std::move(nt));
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r0 = gcd (a unit); scale t0 by its inverse
    uint32_t s = zp_inv_scalar(r0[0], p);
    Fe out = zero();
    for (size_t i = 0; i < t0.size() && i < k; ++i)
        out.c[i] = static_cast<uint32_t>(uint64_t(t0[i]) * s % p);
    return out;
}

Fe FieldCtx::div(const Fe& a, const Fe& b) const { return mul(a, inv(b)); }

Fe FieldCtx::pow(const Fe& a, uint64_t e) const {
    Fe result = one();
    Fe base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Fe FieldCtx::frobenius(const Fe& a) const { return pow(a, p); }

uint64_t FieldCtx::mul_order(const Fe& a) const {
    if (a.is_zero()) throw FieldError("order of zero");
    uint64_t order = q - 1;
    uint64_t n = order;
    for (uint64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) n /= d;
        while (order % d == 0 && pow(a, order / d) == one()) order /= d;
    }
    if (n > 1)
        while (order % n == 0 && pow(a, order / n) == one()) order /= n;
    return order;
}

std::string FieldCtx::to_string(const Fe& a) const {
    if (k == 1) return std::to_string(a.c[0]);
    std::string s = "[";
    for (uint32_t i = 0; i < k; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[i]);
    }
    return s + "]";
}

Field create_field(uint64_t p, uint32_t k, uint64_t size_bound) {
    if (!is_prime_u64(p)) throw FieldError("p is not prime");
    if (k == 0) throw FieldError("extension degree must be positive");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > size_bound) throw FieldError("field size bound exceeded");
    }
    Registry& reg = registry();
    std::scoped_lock lock(reg.mu);
    auto key = std::make_pair(p, k);
    auto it = reg.fields.find(key);
    if (it != reg.fields.end()) return it->second.get();
    auto ctx = std::make_unique<FieldCtx>();
    ctx->p = static_cast<uint32_t>(p);
    ctx->k = k;
    ctx->q = q;
    ctx->modulus = find_modulus(static_cast<uint32_t>(p), k);
    Field f = ctx.get();
    reg.fields.emplace(key, std::move(ctx));
    return f;
}

Field create_field_q(uint64_t q) {
    if (q < 2) throw FieldError("q must be a prime power >= 2");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) {
            p = d;
            break;
        }
    uint32_t k = 0;
    for (uint64_t t = q; t > 1; t /= p, ++k)
        if (t % p != 0) throw FieldError("q is not a prime power");
    return create_field(p, k);
}

namespace {

// forward declaration; defined after poly_roots below
std::shared_ptr<const std::vector<Fe>> embedding_powers(Field src, Field tgt);

// lock-free fast path: each thread keeps the tables it has already resolved
const std::vector<Fe>& embedding_powers_cached(Field src, Field tgt) {
    thread_local std::map<std::pair<Field, Field>, std::shared_ptr<const std::vector<Fe>>> local;
    auto key = std::make_pair(src, tgt);
    auto it = local.find(key);
    if (it == local.end()) it = local.emplace(key, embedding_powers(src, tgt)).first;
    return *it->second;
}

Fe apply_embedding(const Fe& e, const std::vector<Fe>& powers, Field tgt) {
    Fe acc = tgt->zero();
    for (size_t i = 0; i < e.c.size(); ++i) {
        if (e.c[i] == 0) continue;
        Fe term = powers[i];
        Fe scalar = tgt->from_int(e.c[i]);
        acc = tgt->add(acc, tgt->mul(term, scalar));
    }
    return acc;
}

}  // namespace

Fe embed(const Fe& e, Field target) {
    if (e.F == target) return e;
    if (e.F->p != target->p || target->k % e.F->k != 0)
        throw FieldError("no embedding: source degree does not divide target degree");
    return apply_embedding(e, embedding_powers_cached(e.F, target), target);
}

bool in_subfield(const Fe& e, Field sub) {
    if (e.F == sub) return true;
    // x in GF(p^k) iff x^(p^k) = x
    uint64_t qk = sub->q;
    return e.F->pow(e, qk) == e;
}

Fe contract(const Fe& e, Field sub) {
    if (e.F == sub) return e;
    Field big = e.F;
    if (big->p != sub->p || big->k % sub->k != 0)
        throw FieldError("contract: not a subfield");
    Registry& reg = registry();
    std::vector<std::vector<uint32_t>> basis;
    {
        std::scoped_lock lock(reg.mu);
        auto it = reg.contract_basis.find({sub, big});
        if (it != reg.contract_basis.end()) basis = it->second;
    }
    if (basis.empty()) {
        for (uint32_t i = 0; i < sub->k; ++i) {
            Fe bi = sub->zero();
            bi.c[i] = 1;
            basis.push_back(embed(bi, big).c);
        }
        std::scoped_lock lock(reg.mu);
        reg.contract_basis.insert({{sub, big}, basis});
    }
    // solve basis * v = e.c over GF(p)
    uint32_t p = big->p;
    uint32_t rows = big->k, cols = sub->k;
    std::vector<std::vector<uint32_t>> m(rows, std::vector<uint32_t>(cols + 1, 0));
    for (uint32_t r = 0; r < rows; ++r) {
        for (uint32_t c = 0; c < cols; ++c) m[r][c] = basis[c][r];
        m[r][cols] = e.c[r];
    }
    std::vector<int> pivot_col_of_row(rows, -1);
    uint32_t row = 0;
    for (uint32_t col = 0; col < cols && row < rows; ++col) {
        uint32_t sel = row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        uint32_t inv = zp_inv_scalar(m[row][col], p);
        for (uint32_t c = col; c <= cols; ++c)
            m[row][c] = static_cast<uint32_t>(uint64_t(m[row][c]) * inv % p);
        for (uint32_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            uint32_t f = m[r][col];
            for (uint32_t c = col; c <= cols; ++c) {
                uint64_t s = uint64_t(f) * m[row][c] % p;
                m[r][c] = static_cast<uint32_t>((m[r][c] + p - s) % p);
            }
        }
        pivot_col_of_row[row] = static_cast<int>(col);
        ++row;
    }
    for (uint32_t r = row; r < rows; ++r)
        if (m[r][cols] != 0) throw FieldError("contract: element not in subfield");
    Fe out = sub->zero();
    for (uint32_t r = 0; r < row; ++r)
        if (pivot_col_of_row[r] >= 0) out.c[pivot_col_of_row[r]] = m[r][cols];
    return out;
}

Fe primitive_root(Field F) {
    uint64_t n = F->q - 1;
    std::vector<uint64_t> primes;
    uint64_t m = n;
    for (uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);
    for (uint64_t key = 1; key < F->q; ++key) {
        Fe cand = F->from_key(key);
        bool ok = true;
        for (uint64_t r : primes)
            if (F->pow(cand, n / r) == F->one()) {
                ok = false;
                break;
            }
        if (ok) return cand;
    }
    throw FieldError("no primitive root found");
}

std::vector<Fe> roots_of_unity(Field F, uint64_t n, bool* truncated) {
    if (n == 0) throw FieldError("n must be positive");
    if (n % F->p == 0) throw FieldError("p divides n");
    uint64_t n2 = std::gcd(n, F->q - 1);
    if (truncated) *truncated = (n2 != n);
    Fe g = primitive_root(F);
    Fe zeta = F->pow(g, (F->q - 1) / n2);
    std::vector<Fe> out;
    Fe cur = F->one();
    for (uint64_t i = 0; i < n2; ++i) {
        out.push_back(cur);
        cur = F->mul(cur, zeta);
    }
    std::sort(out.begin(), out.end(), elem_less);
    return out;
}

bool is_square(const Fe& e) {
    Field F = e.F;
    if (F->p == 2) return true;
    if (e.is_zero()) return true;
    return F->pow(e, (F->q - 1) / 2) == F->one();
}

// ---- univariate polynomials ----------------------------------------------

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_from_ints(Field F, const std::vector<long long>& coeffs) {
    Poly f;
    f.reserve(coeffs.size());
    for (long long v : coeffs) f.push_back(F->from_int(v));
    return poly_trim(std::move(f));
}

Poly poly_add(const Poly& a, const Poly& b) {
    const Poly& longer = a.size() >= b.size() ? a : b;
    const Poly& shorter = a.size() >= b.size() ? b : a;
    Poly r = longer;
    Field F = r.empty() ? nullptr : r[0].F;
    for (size_t i = 0; i < shorter.size(); ++i) r[i] = F->add(r[i], shorter[i]);
    return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    if (b.empty()) return a;
    Field F = b[0].F;
    Poly nb;
    nb.reserve(b.size());
    for (const Fe& e : b) nb.push_back(F->neg(e));
    return poly_add(a, nb);
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Field F = a[0].F;
    Poly r(a.size() + b.size() - 1, F->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F->add(r[i + j], F->mul(a[i], b[j]));
    }
    return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& a, const Fe& s) {
    Poly r;
    r.reserve(a.size());
    Field F = s.F;
    for (const Fe& e : a) r.push_back(F->mul(e, s));
    return poly_trim(std::move(r));
}

Poly poly_monic(const Poly& a) {
    Poly t = poly_trim(a);
    if (t.empty()) return t;
    Field F = t[0].F;
    return poly_scale(t, F->inv(t.back()));
}

void poly_divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
    Poly bb = poly_trim(b);
    if (bb.empty()) throw FieldError("polynomial division by zero");
    Field F = bb[0].F;
    rem = poly_trim(a);
    quo.clear();
    if (poly_deg(rem) >= poly_deg(bb)) quo.assign(rem.size() - bb.size() + 1, F->zero());
    Fe lead_inv = F->inv(bb.back());
    while (poly_deg(rem) >= poly_deg(bb)) {
        Fe factor = F->mul(rem.back(), lead_inv);
        size_t shift = rem.size() - bb.size();
        quo[shift] = factor;
        for (size_t i = 0; i < bb.size(); ++i)
            rem[shift + i] = F->sub(rem[shift + i], F->mul(factor, bb[i]));
        rem = poly_trim(std::move(rem));
    }
    quo = poly_trim(std::move(quo));
}

Poly poly_rem(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

Poly poly_divexact(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    if (!r.empty()) throw FieldError("inexact polynomial division");
    return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = poly_trim(a), y = poly_trim(b);
    while (!y.empty()) {
        Poly r = poly_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return poly_monic(x);
}

Fe poly_eval(const Poly& f, const Fe& x) {
    Field F = x.F;
    Fe acc = F->zero();
    for (size_t i = f.size(); i-- > 0;) acc = F->add(F->mul(acc, x), f[i]);
    return acc;
}

Poly poly_deriv(const Poly& f) {
    if (f.size() <= 1) return {};
    Field F = f[0].F;
    Poly r(f.size() - 1, F->zero());
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = F->mul(f[i], F->from_int(static_cast<long long>(i)));
    return poly_trim(std::move(r));
}

Poly poly_powmod(const Poly& base, uint64_t e, const Poly& mod) {
    Field F = mod.empty() ? nullptr : mod[0].F;
    Poly result{F->one()};
    Poly b = poly_rem(base, mod);
    while (e > 0) {
        if (e & 1) result = poly_rem(poly_mul(result, b), mod);
        b = poly_rem(poly_mul(b, b), mod);
        e >>= 1;
    }
    return result;
}

Poly poly_embed(const Poly& f, Field target) {
    Poly r;
    r.reserve(f.size());
    for (const Fe& e : f) r.push_back(embed(e, target));
    return r;
}

bool poly_is_irreducible(const Poly& f) {
    Poly g = poly_trim(f);
    if (g.empty() || poly_deg(g) < 1) return false;
    Field F = g[0].F;
    // convert to a Zp question only when k = 1; otherwise run the same test
    // with Fe arithmetic
    int k = poly_deg(g);
    if (k == 1) return true;
    Poly x{F->zero(), F->one()};
    uint64_t qk = 1;
    for (int i = 0; i < k; ++i) qk *= F->q;
    Poly xq = poly_powmod(x, qk, g);
    if (!poly_trim(poly_sub(xq, x)).empty()) return false;
    int kk = k;
    for (int r = 2; r <= kk; ++r) {
        if (kk % r != 0) continue;
        while (kk % r == 0) kk /= r;
        uint64_t pe = 1;
        for (int i = 0; i < k / r; ++i) pe *= F->q;
        Poly xe = poly_powmod(x, pe, g);
        if (poly_deg(poly_gcd(poly_sub(xe, x), g)) > 0) return false;
    }
    return true;
}

std::vector<int> poly_factor_degrees(const Poly& f) {
    Poly g = poly_monic(f);
    if (g.empty()) throw FieldError("zero polynomial");
    Field F = g[0].F;
    // squarefree part: f / gcd(f, f'); repeat to strip p-th power content
    std::vector<int> degrees;
    while (poly_deg(g) > 0) {
        Poly d = poly_deriv(g);
        Poly sf;
        if (poly_trim(d).empty()) {
            // g is a polynomial in x^p: take the p-th root and continue
            Poly root((poly_deg(g) / F->p) + 1, F->zero());
            for (int i = 0; i <= poly_deg(g); i += F->p) {
                // c^(p^(k-1)) is the p-th root of c in GF(p^k)
                Fe croot = g[i];
                for (uint32_t j = 0; j + 1 < F->k; ++j) croot = F->frobenius(croot);
                root[i / F->p] = croot;
            }
            g = poly_trim(std::move(root));
            continue;
        }
        sf = poly_divexact(g, poly_gcd(g, d));
        // distinct-degree factorization of sf
        Poly x{F->zero(), F->one()};
        Poly h = x, v = sf;
        int dd = 1;
        while (poly_deg(v) >= 2 * dd) {
            h = poly_powmod(h, F->q, v);
            Poly gd = poly_gcd(poly_sub(h, x), v);
            if (poly_deg(gd) > 0) {
                for (int m = 0; m < poly_deg(gd) / dd; ++m) degrees.push_back(dd);
                v = poly_divexact(v, gd);
                h = poly_rem(h, v);
            }
            ++dd;
        }
        if (poly_deg(v) > 0) degrees.push_back(poly_deg(v));
        g = poly_divexact(g, sf);
    }
    return degrees;
}

Poly poly_radical(const Poly& f) {
    Poly g = poly_monic(f);
    if (g.empty()) throw FieldError("zero polynomial");
    Field F = g[0].F;
    if (poly_deg(g) <= 0) return Poly{F->one()};
    Poly d = poly_deriv(g);
    if (poly_trim(d).empty()) {
        // g = h(x^p): take the p-th root
        Poly root((poly_deg(g) / F->p) + 1, F->zero());
        for (int i = 0; i <= poly_deg(g); i += F->p) {
            Fe croot = g[i];
            for (uint32_t j = 0; j + 1 < F->k; ++j) croot = F->frobenius(croot);
            root[i / F->p] = croot;
        }
        return poly_radical(poly_trim(std::move(root)));
    }
    Poly v = poly_gcd(g, d);
    Poly w = poly_divexact(g, v);  // factors with multiplicity prime to p, once each
    Poly rv = poly_radical(v);
    return poly_divexact(poly_mul(w, rv), poly_gcd(w, rv));
}

int poly_splitting_degree(const Poly& f, int cap) {
    auto degs = poly_factor_degrees(f);
    long long l = 1;
    for (int d : degs) {
        l = std::lcm(l, static_cast<long long>(d));
        if (l > cap) return cap;
    }
    return static_cast<int>(l);
}

namespace {

constexpr uint64_t kScanThreshold = 512;

// distinct roots of a squarefree product of linear factors, by equal-degree
// splitting (all factors degree 1); deterministic shift sequence
void split_linear(const Poly& g, Field K, std::vector<Fe>& out) {
    int d = poly_deg(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(K->neg(K->div(g[0], g[1])));
        return;
    }
    Poly x{K->zero(), K->one()};
    for (uint64_t shift = 0;; ++shift) {
        Poly h;
        if (K->p == 2) {
            // trace map of a*x; the trace form is nondegenerate, so some
            // nonzero a separates any two distinct roots
            Fe a = K->from_key(1 + shift % (K->q - 1));
            Poly base = poly_rem(Poly{K->zero(), a}, g);
            Poly acc = base;
            Poly cur = base;
            uint32_t steps = 0;
            uint64_t qq = K->q;
            while ((qq >>= 1) > 1) ++steps;
            for (uint32_t i = 0; i < steps; ++i) {
                cur = poly_rem(poly_mul(cur, cur), g);
                acc = poly_add(acc, cur);
            }
            h = acc;
        } else {
            Fe a = K->from_key(shift % K->q);
            Poly base{a, K->one()};
            h = poly_powmod(base, (K->q - 1) / 2, g);
            h = poly_sub(h, Poly{K->one()});
        }
        Poly g1 = poly_gcd(h, g);
        if (poly_deg(g1) > 0 && poly_deg(g1) < d) {
            split_linear(g1, K, out);
            split_linear(poly_divexact(g, g1), K, out);
            return;
        }
        if (shift > 4 * K->q) throw FieldError("equal-degree splitting failed");
    }
}

}  // namespace

std::vector<PolyRoot> poly_roots(const Poly& f, Field search) {
    Poly ff = poly_trim(f);
    if (ff.empty()) throw FieldError("zero polynomial has no root set");
    Field K = search;
    Poly g = poly_embed(ff, K);
    std::vector<Fe> roots;
    if (poly_deg(g) >= 1) {
        if (K->q <= kScanThreshold) {
            for (uint64_t key = 0; key < K->q; ++key) {
                Fe x = K->from_key(key);
                if (poly_eval(g, x).is_zero()) roots.push_back(x);
            }
        } else {
            // gcd with x^q - x isolates the K-rational part, squarefree
            Poly x{K->zero(), K->one()};
            Poly mon = poly_monic(g);
            Poly xq = poly_powmod(x, K->q, mon);
            Poly rad = poly_gcd(poly_sub(xq, x), mon);
            split_linear(rad, K, roots);
        }
    }
    std::sort(roots.begin(), roots.end(), elem_less);
    std::vector<PolyRoot> out;
    Poly rem = g;
    for (const Fe& r : roots) {
        int mult = 0;
        Poly lin{K->neg(r), K->one()};
        while (true) {
            Poly quo, rr;
            poly_divmod(rem, lin, quo, rr);
            if (!rr.empty()) break;
            rem = std::move(quo);
            ++mult;
        }
        out.push_back({r, mult});
    }
    return out;
}

namespace {

std::shared_ptr<const std::vector<Fe>> embedding_powers(Field src, Field tgt) {
    Registry& reg = registry();
    {
        std::scoped_lock lock(reg.mu);
        auto it = reg.embeddings.find({src, tgt});
        if (it != reg.embeddings.end()) return it->second;
    }
    std::vector<Fe> powers;
    if (src->k == 1) {
        // the prime field embeds by 1 -> 1; no root finding involved
        powers = {tgt->one()};
    } else {
        Fe gen_img = tgt->zero();
        if (src->k == tgt->k) {
            gen_img = tgt->gen();
        } else {
            // route through the largest intermediate subfield so that towers
            // and direct embeddings agree
            uint32_t best = src->k;
            for (uint32_t b = src->k; b < tgt->k; ++b)
                if (tgt->k % b == 0 && b % src->k == 0 && b > best) best = b;
            if (best > src->k) {
                Field mid = create_field(src->p, best);
                Fe mid_img = embed(src->gen(), mid);
                gen_img = embed(mid_img, tgt);
            } else {
                // direct: least root of the source modulus in the target
                Poly mod;
                Field base = create_field(src->p, 1);
                for (uint32_t i = 0; i <= src->k; ++i)
                    mod.push_back(base->from_int(src->modulus[i]));
                auto roots = poly_roots(mod, tgt);
                if (roots.empty()) throw FieldError("embedding root not found");
                gen_img = roots.front().root;
            }
        }
        powers.reserve(src->k);
        Fe cur = tgt->one();
        for (uint32_t i = 0; i < src->k; ++i) {
            powers.push_back(cur);
            cur = tgt->mul(cur, gen_img);
        }
    }
    auto table = std::make_shared<const std::vector<Fe>>(std::move(powers));
    std::scoped_lock lock(reg.mu);
    auto [it, inserted] = reg.embeddings.emplace(std::make_pair(src, tgt), table);
    return it->second;
}

}  // namespace

}  // namespace p1dyn
