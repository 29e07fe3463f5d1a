#include "germ/parser.hpp"

#include "germ/error.hpp"

#include <cctype>
#include <string>

namespace germ {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void err(size_t at, const std::string& msg) const {
        fail("input.parse", msg + " at position " + std::to_string(at + 1));
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }

    Int integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) err(pos, "expected a number");
        return Int(s.substr(start, pos - start));
    }

    // integer or rational literal p/q
    BiPoly number() {
        size_t at = pos;
        Int p = integer();
        if (eat('/')) {
            Int q = integer();
            if (q == 0) err(at, "zero denominator");
            return BiPoly::constant(Scalar(Rat(p, q)));
        }
        return BiPoly::constant(Scalar(Rat(p)));
    }

    unsigned exponent() {
        skip_ws();
        size_t at = pos;
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
            err(at, "expected a nonnegative integer exponent");
        Int e = integer();
        if (e > 64) err(at, "exponent too large");
        return e.convert_to<unsigned>();
    }

    BiPoly primary() {
        skip_ws();
        size_t at = pos;
        if (pos >= s.size()) err(at, "unexpected end of input");
        char c = s[pos];
        if (std::isdigit((unsigned char)c)) return number();
        if (c == 'x') {
            ++pos;
            return BiPoly::x();
        }
        if (c == 'y') {
            ++pos;
            return BiPoly::y();
        }
        if (c == 'i') {
            ++pos;
            return BiPoly::constant(Scalar::i());
        }
        if (c == '(') {
            ++pos;
            BiPoly e = expr();
            if (!eat(')')) err(pos, "expected ')'");
            return e;
        }
        err(at, std::string("unexpected '") + c + "'");
    }

    BiPoly factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        BiPoly b = primary();
        while (eat('^')) b = b.pow(exponent());
        return b;
    }

    BiPoly term() {
        BiPoly b = factor();
        while (eat('*')) b = b * factor();
        return b;
    }

    BiPoly expr() {
        BiPoly b = term();
        for (;;) {
            if (eat('+')) b = b + term();
            else if (eat('-')) b = b - term();
            else return b;
        }
    }

    // top-level product kept factor by factor; the overall sign is reported
    // separately since it cannot fold into an even-powered base
    std::vector<std::pair<BiPoly, int>> factored_term(bool& neg) {
        std::vector<std::pair<BiPoly, int>> out;
        neg = false;
        for (;;) {
            for (;;) {
                if (eat('-')) neg = !neg;
                else if (!eat('+')) break;
            }
            BiPoly b = primary();
            int e = 1;
            while (eat('^')) e *= (int)exponent();
            if (e > 0) out.push_back({std::move(b), e});
            if (!eat('*')) break;
        }
        return out;
    }

    void expect_end() {
        skip_ws();
        if (pos < s.size()) err(pos, std::string("unexpected '") + s[pos] + "'");
    }
};

void require_germ(const BiPoly& f) {
    for (auto& [k, v] : f.terms())
        if (k.first == 0 && k.second == 0 && !v.is_zero())
            fail("input.not-a-germ", "the polynomial does not vanish at the origin");
}

} // namespace

BiPoly parse_poly(const std::string& text) {
    Parser p(text);
    BiPoly f = p.expr();
    p.expect_end();
    require_germ(f);
    return f;
}

std::vector<std::pair<BiPoly, int>> parse_factored(const std::string& text) {
    Parser p(text);
    size_t save = p.pos;
    std::vector<std::pair<BiPoly, int>> factors;
    bool neg = false;
    bool split = true;
    try {
        factors = p.factored_term(neg);
        p.skip_ws();
        if (p.pos < p.s.size()) split = false; // a sum, not a bare product
    } catch (const GermError&) {
        split = false;
    }
    if (split) {
        if (neg) { // fold the sign into an odd-powered vanishing factor
            bool folded = false;
            for (auto& [f, e] : factors)
                if (!folded && e % 2 == 1) {
                    f = -f;
                    folded = true;
                }
            if (!folded) split = false;
        }
        // every factor must vanish at the origin; units keep the whole form
        for (auto& [f, e] : factors)
            for (auto& [k, v] : f.terms())
                if (k.first == 0 && k.second == 0 && !v.is_zero()) split = false;
    }
    if (!split) {
        p.pos = save;
        BiPoly f = p.expr();
        p.expect_end();
        require_germ(f);
        return {{std::move(f), 1}};
    }
    BiPoly prod = BiPoly::constant(Scalar(1));
    for (auto& [f, e] : factors) prod = prod * f.pow((unsigned)e);
    require_germ(prod);
    return factors;
}

} // namespace germ
