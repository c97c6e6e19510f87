#include "p1dyn/expr.hpp"

#include <cctype>
#include <map>

namespace p1dyn {

namespace {

struct BivPoly {
    std::map<std::pair<int, int>, Fe> t;  // (x-degree, y-degree) -> coefficient

    static BivPoly constant(Field, const Fe& v) {
        BivPoly b;
        if (!v.is_zero()) b.t[{0, 0}] = v;
        return b;
    }
    bool is_zero() const { return t.empty(); }
};

BivPoly bv_add(Field F, const BivPoly& a, const BivPoly& b) {
    BivPoly r = a;
    for (const auto& [k, v] : b.t) {
        auto it = r.t.find(k);
        if (it == r.t.end())
            r.t[k] = v;
        else {
            it->second = F->add(it->second, v);
            if (it->second.is_zero()) r.t.erase(it);
        }
    }
    return r;
}

BivPoly bv_neg(Field F, const BivPoly& a) {
    BivPoly r = a;
    for (auto& [k, v] : r.t) v = F->neg(v);
    return r;
}

BivPoly bv_mul(Field F, const BivPoly& a, const BivPoly& b) {
    BivPoly r;
    for (const auto& [ka, va] : a.t)
        for (const auto& [kb, vb] : b.t) {
            auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
            Fe prod = F->mul(va, vb);
            auto it = r.t.find(key);
            if (it == r.t.end())
                r.t[key] = prod;
            else {
                it->second = F->add(it->second, prod);
                if (it->second.is_zero()) r.t.erase(it);
            }
        }
    return r;
}

struct BivRat {
    BivPoly n, d;
};

struct Parser {
    Field F;
    std::string s;
    size_t pos = 0;

    explicit Parser(Field F, std::string text) : F(F), s(std::move(text)) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool starts_atom() {
        char c = peek();
        return c == '(' || c == 'z' || c == 'x' || c == 'y' ||
               std::isdigit(static_cast<unsigned char>(c));
    }

    BivRat parse() {
        BivRat r = expr();
        skip();
        if (pos != s.size()) throw ParseError("trailing input at position " + std::to_string(pos));
        return r;
    }

    BivRat expr() {
        BivRat acc = term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                BivRat rhs = term();
                BivPoly nn = bv_add(F, bv_mul(F, acc.n, rhs.d),
                                    c == '+' ? bv_mul(F, rhs.n, acc.d)
                                             : bv_neg(F, bv_mul(F, rhs.n, acc.d)));
                acc = BivRat{nn, bv_mul(F, acc.d, rhs.d)};
            } else {
                return acc;
            }
        }
    }

    BivRat term() {
        BivRat acc = factor();
        while (true) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos;
                BivRat rhs = factor();
                if (c == '*')
                    acc = BivRat{bv_mul(F, acc.n, rhs.n), bv_mul(F, acc.d, rhs.d)};
                else {
                    if (rhs.n.is_zero()) throw ParseError("division by zero expression");
                    acc = BivRat{bv_mul(F, acc.n, rhs.d), bv_mul(F, acc.d, rhs.n)};
                }
            } else if (starts_atom()) {
                // juxtaposition: "2z", "2(z+1)"
                BivRat rhs = factor();
                acc = BivRat{bv_mul(F, acc.n, rhs.n), bv_mul(F, acc.d, rhs.d)};
            } else {
                return acc;
            }
        }
    }

    BivRat factor() {
        char c = peek();
        if (c == '-') {
            ++pos;
            BivRat r = factor();
            return BivRat{bv_neg(F, r.n), r.d};
        }
        BivRat base = atom();
        if (peek() == '^') {
            ++pos;
            skip();
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                ++pos;
            }
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("exponent expected");
            long long e = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                e = e * 10 + (s[pos++] - '0');
            BivRat r{BivPoly::constant(F, F->one()), BivPoly::constant(F, F->one())};
            for (long long i = 0; i < e; ++i)
                r = BivRat{bv_mul(F, r.n, base.n), bv_mul(F, r.d, base.d)};
            if (neg) std::swap(r.n, r.d);
            if (r.d.is_zero()) throw ParseError("zero denominator from exponent");
            return r;
        }
        return base;
    }

    BivRat atom() {
        char c = peek();
        BivPoly one = BivPoly::constant(F, F->one());
        if (c == '(') {
            ++pos;
            BivRat r = expr();
            if (peek() != ')') throw ParseError("missing )");
            ++pos;
            return r;
        }
        if (c == 'z' || c == 'x') {
            ++pos;
            BivPoly v;
            v.t[{1, 0}] = F->one();
            return BivRat{v, one};
        }
        if (c == 'y') {
            ++pos;
            BivPoly v;
            v.t[{0, 1}] = F->one();
            return BivRat{v, one};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                v = v * 10 + (s[pos++] - '0');
            return BivRat{BivPoly::constant(F, F->from_int(v)), one};
        }
        throw ParseError(std::string("unexpected character '") + c + "'");
    }
};

Poly to_univariate(Field F, const BivPoly& b) {
    Poly out;
    for (const auto& [k, v] : b.t) {
        if (k.second != 0) throw ParseError("y is not allowed in a map expression");
        if (out.size() <= static_cast<size_t>(k.first)) out.resize(k.first + 1, F->zero());
        out[k.first] = v;
    }
    return poly_trim(std::move(out));
}

}  // namespace

RatMap parse_ratmap(const std::string& text, Field F) {
    Parser p(F, text);
    BivRat r = p.parse();
    Poly num = to_univariate(F, r.n);
    Poly den = to_univariate(F, r.d);
    return ratmap_from_univariate(num, den);
}

HomPoly parse_hompoly(const std::string& text, Field F) {
    Parser p(F, text);
    BivRat r = p.parse();
    // the denominator must be a nonzero constant
    if (r.d.t.size() != 1 || r.d.t.begin()->first != std::make_pair(0, 0))
        throw ParseError("polynomial input must not have a denominator");
    Fe scale = F->inv(r.d.t.begin()->second);
    if (r.n.is_zero()) throw ParseError("zero polynomial");
    int deg = -1;
    for (const auto& [k, v] : r.n.t) {
        int d = k.first + k.second;
        if (deg == -1) deg = d;
        if (d != deg) throw ParseError("polynomial is not homogeneous");
    }
    HomPoly h = HomPoly::zero(F, deg);
    for (const auto& [k, v] : r.n.t) h.coeffs[k.first] = F->mul(v, scale);
    return h;
}

}  // namespace p1dyn
