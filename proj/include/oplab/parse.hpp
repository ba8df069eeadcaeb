#pragma once

// Small recursive-descent parser for inline polynomial arguments like
// "x^2+1", "3/2*x*y - z^3" or "x1*x2^2". Variables are x1..xN, with x, y,
// z as aliases for x1, x2, x3.

#include "oplab/errors.hpp"
#include "oplab/polynomial.hpp"

#include <cctype>
#include <string>

namespace oplab {

namespace detail {

struct PolyParser {
    const std::string& src;
    std::size_t pos = 0;
    std::size_t num_vars;

    explicit PolyParser(const std::string& s, std::size_t nv) : src(s), num_vars(nv) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw SpecError("polynomial '" + src + "': " + what + " at position " + std::to_string(pos));
    }

    unsigned parse_uint() {
        skip_ws();
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) fail("expected a number");
        unsigned long v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            v = v * 10 + static_cast<unsigned long>(src[pos] - '0');
            if (v > 1'000'000'000ul) fail("number too large");
            ++pos;
        }
        return static_cast<unsigned>(v);
    }

    PolyQ parse_expr() {
        PolyQ acc = parse_term();
        for (;;) {
            if (eat('+')) acc += parse_term();
            else if (eat('-')) acc -= parse_term();
            else return acc;
        }
    }

    PolyQ parse_term() {
        PolyQ acc = parse_factor();
        for (;;) {
            skip_ws();
            if (eat('*')) acc *= parse_factor();
            else return acc;
        }
    }

    PolyQ parse_factor() {
        PolyQ base = parse_base();
        skip_ws();
        if (eat('^')) return base.pow(parse_uint());
        return base;
    }

    PolyQ parse_base() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input");
        char c = src[pos];
        if (c == '(') {
            ++pos;
            PolyQ inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos;
            return -parse_factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned num = parse_uint();
            if (eat('/')) {
                unsigned den = parse_uint();
                if (den == 0) fail("zero denominator");
                return PolyQ::constant(Rat(static_cast<long>(num), static_cast<long>(den)), num_vars);
            }
            return PolyQ::constant(Rat(static_cast<long>(num)), num_vars);
        }
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos;
            std::size_t index;
            if (c == 'x' && pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                index = parse_uint();
                if (index == 0) fail("variables are numbered from x1");
                --index;
            } else {
                index = static_cast<std::size_t>(c - 'x');
            }
            if (index >= num_vars)
                fail("variable index " + std::to_string(index + 1) + " exceeds dimension " +
                     std::to_string(num_vars));
            return PolyQ::variable(index, num_vars);
        }
        fail("unexpected character");
    }
};

} // namespace detail

// Largest variable index mentioned, for dimension inference; at least 1.
inline std::size_t polynomial_dimension_hint(const std::string& s) {
    std::size_t dim = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == 'y') dim = std::max<std::size_t>(dim, 2);
        if (c == 'z') dim = std::max<std::size_t>(dim, 3);
        if (c == 'x' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
            std::size_t j = i + 1;
            unsigned long v = 0;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                v = v * 10 + static_cast<unsigned long>(s[j] - '0');
                ++j;
            }
            dim = std::max<std::size_t>(dim, v);
        }
    }
    return dim;
}

inline PolyQ parse_polynomial(const std::string& s, std::size_t num_vars) {
    detail::PolyParser p(s, num_vars);
    PolyQ out = p.parse_expr();
    p.skip_ws();
    if (p.pos != s.size()) p.fail("trailing input");
    return out;
}

} // namespace oplab
