#pragma once

// Exact multivariate polynomials over a field scalar K (rationals by
// default). Terms are kept in a map from exponent multi-index to nonzero
// coefficient; the map's lexicographic key order is the canonical term
// order used everywhere (printing, leading terms, normalization).

#include "oplab/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oplab {

using Exponents = std::vector<std::uint32_t>;

template <class K>
concept ScalarField = requires(K a, K b) {
    K();
    K(1);
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { a / b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.to_string() } -> std::convertible_to<std::string>;
};

template <ScalarField K = Rat>
class Polynomial {
public:
    using Terms = std::map<Exponents, K>;

    explicit Polynomial(std::size_t num_vars = 1) : nvars_(num_vars) {
        if (num_vars == 0) throw std::invalid_argument("Polynomial: need at least one variable");
    }

    static Polynomial zero(std::size_t num_vars) { return Polynomial(num_vars); }

    static Polynomial constant(const K& c, std::size_t num_vars) {
        Polynomial p(num_vars);
        if (!c.is_zero()) p.terms_.emplace(Exponents(num_vars, 0), c);
        return p;
    }

    static Polynomial variable(std::size_t i, std::size_t num_vars) {
        if (i >= num_vars) throw std::out_of_range("Polynomial: variable index");
        Polynomial p(num_vars);
        Exponents e(num_vars, 0);
        e[i] = 1;
        p.terms_.emplace(std::move(e), K(1));
        return p;
    }

    static Polynomial monomial(const Exponents& exps, const K& c) {
        Polynomial p(exps.size());
        if (!c.is_zero()) p.terms_.emplace(exps, c);
        return p;
    }

    std::size_t num_vars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0));
    }

    K constant_term() const {
        auto it = terms_.find(Exponents(nvars_, 0));
        return it == terms_.end() ? K() : it->second;
    }

    std::size_t total_degree() const {
        std::size_t d = 0;
        for (const auto& [e, c] : terms_) {
            std::size_t s = 0;
            for (auto x : e) s += x;
            if (s > d) d = s;
        }
        return d;
    }

    std::size_t degree_in(std::size_t var) const {
        std::size_t d = 0;
        for (const auto& [e, c] : terms_)
            if (e[var] > d) d = e[var];
        return d;
    }

    void add_term(const Exponents& exps, const K& c) {
        if (exps.size() != nvars_) throw std::invalid_argument("Polynomial: exponent arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(exps, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_vars(b);
        Polynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial& operator*=(const K& s) {
        if (s.is_zero()) { terms_.clear(); return *this; }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator*(Polynomial p, const K& s) { p *= s; return p; }
    friend Polynomial operator*(const K& s, Polynomial p) { p *= s; return p; }

    Polynomial& operator/=(const K& s) {
        if (s.is_zero()) throw std::domain_error("Polynomial: division by zero scalar");
        for (auto& [e, c] : terms_) c = c / s;
        return *this;
    }
    friend Polynomial operator/(Polynomial p, const K& s) { p /= s; return p; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(K(1), nvars_);
        Polynomial base = *this;
        while (e) {
            if (e & 1u) r *= base;
            if (e >>= 1u) base *= base;
        }
        return r;
    }

    Polynomial derivative(std::size_t var) const {
        if (var >= nvars_) throw std::out_of_range("Polynomial: variable index");
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents ne = e;
            ne[var] -= 1;
            r.add_term(ne, c * K(static_cast<long>(e[var])));
        }
        return r;
    }

    K evaluate(const std::vector<K>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("Polynomial: point arity mismatch");
        // per-variable power cache
        std::vector<std::vector<K>> pows(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) pows[i].push_back(K(1));
        K acc{};
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (std::size_t i = 0; i < nvars_; ++i) {
                while (pows[i].size() <= e[i]) pows[i].push_back(pows[i].back() * point[i]);
                if (e[i]) t *= pows[i][e[i]];
            }
            acc += t;
        }
        return acc;
    }

    // Substitute each variable by the given polynomial (all replacements
    // must share one variable count, which becomes the result's).
    Polynomial compose(const std::vector<Polynomial>& repl) const {
        if (repl.size() != nvars_) throw std::invalid_argument("Polynomial: compose arity mismatch");
        std::size_t out_vars = repl.empty() ? nvars_ : repl[0].num_vars();
        for (const auto& p : repl)
            if (p.num_vars() != out_vars) throw std::invalid_argument("Polynomial: compose var mismatch");
        std::vector<std::vector<Polynomial>> pows(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) pows[i].push_back(constant(K(1), out_vars));
        Polynomial acc(out_vars);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(c, out_vars);
            for (std::size_t i = 0; i < nvars_; ++i) {
                while (pows[i].size() <= e[i]) pows[i].push_back(pows[i].back() * repl[i]);
                if (e[i]) t *= pows[i][e[i]];
            }
            acc += t;
        }
        return acc;
    }

    // f(x) -> f(x + h)
    Polynomial shift(const std::vector<K>& h) const {
        if (h.size() != nvars_) throw std::invalid_argument("Polynomial: shift arity mismatch");
        std::vector<Polynomial> repl;
        repl.reserve(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i)
            repl.push_back(variable(i, nvars_) + constant(h[i], nvars_));
        return compose(repl);
    }

    // Leading term under the canonical (lex) order.
    std::pair<Exponents, K> leading_term() const {
        if (terms_.empty()) throw std::domain_error("Polynomial: leading term of zero");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    // Exact division: returns q with *this == q * d, or nullopt when d
    // does not divide. Leading-term elimination in the canonical order.
    std::optional<Polynomial> divide_exact(const Polynomial& d) const {
        check_vars(d);
        if (d.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
        Polynomial r = *this;
        Polynomial q(nvars_);
        auto [de, dc] = d.leading_term();
        while (!r.is_zero()) {
            auto [re, rc] = r.leading_term();
            Exponents qe(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (re[i] < de[i]) return std::nullopt;
                qe[i] = re[i] - de[i];
            }
            K qc = rc / dc;
            Polynomial qt = monomial(qe, qc);
            q += qt;
            r -= qt * d;
        }
        return q;
    }

    // Rat only: gcd of coefficients (nonnegative), 0 for the zero polynomial.
    K content() const
        requires std::same_as<K, Rat>
    {
        K g{};
        for (const auto& [e, c] : terms_) g = Rat::gcd(g, c);
        return g;
    }

    template <class K2, class Fn>
    Polynomial<K2> map_coefficients(Fn&& f) const {
        Polynomial<K2> r(nvars_);
        for (const auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) out += " + ";
            first = false;
            out += it->second.to_string();
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (it->first[i] == 0) continue;
                out += "*";
                out += i < names.size() ? names[i] : ("x" + std::to_string(i + 1));
                if (it->first[i] > 1) out += "^" + std::to_string(it->first[i]);
            }
        }
        return out;
    }

private:
    void check_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    }

    std::size_t nvars_;
    Terms terms_;
};

using PolyQ = Polynomial<Rat>;

} // namespace oplab
