#pragma once

// Exact rational functions num/den. Normalization keeps the denominator
// primitive with positive leading coefficient (monic over non-rational
// scalars); full gcd cancellation is attempted only through cheap exact
// divisions, and equality always falls back to cross-multiplication, so
// no correctness depends on cancellation succeeding.

#include "oplab/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace oplab {

template <ScalarField K = Rat>
class RationalFunction {
public:
    explicit RationalFunction(std::size_t num_vars = 1)
        : num_(Polynomial<K>::zero(num_vars)), den_(Polynomial<K>::constant(K(1), num_vars)) {}

    RationalFunction(Polynomial<K> num, Polynomial<K> den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (num_.num_vars() != den_.num_vars())
            throw std::invalid_argument("RationalFunction: variable count mismatch");
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        normalize();
    }

    RationalFunction(const Polynomial<K>& num) : RationalFunction(num, Polynomial<K>::constant(K(1), num.num_vars())) {}

    static RationalFunction constant(const K& c, std::size_t num_vars) {
        return RationalFunction(Polynomial<K>::constant(c, num_vars));
    }

    static RationalFunction reciprocal(const Polynomial<K>& p) {
        return RationalFunction(Polynomial<K>::constant(K(1), p.num_vars()), p);
    }

    const Polynomial<K>& num() const { return num_; }
    const Polynomial<K>& den() const { return den_; }
    std::size_t num_vars() const { return num_.num_vars(); }
    bool is_zero() const { return num_.is_zero(); }

    bool is_polynomial() const {
        return den_ == Polynomial<K>::constant(K(1), num_vars());
    }
    const Polynomial<K>& as_polynomial() const {
        if (!is_polynomial()) throw std::domain_error("RationalFunction: not a polynomial");
        return num_;
    }

    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        // one denominator may divide the other
        if (auto q = b.den_.divide_exact(a.den_))
            return RationalFunction(a.num_ * *q + b.num_, b.den_);
        if (auto q = a.den_.divide_exact(b.den_))
            return RationalFunction(a.num_ + b.num_ * *q, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return a + (-b);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        // cancel cross factors when they divide exactly
        Polynomial<K> n1 = a.num_, d2 = b.den_;
        if (auto q = n1.divide_exact(d2)) {
            n1 = *q;
            d2 = Polynomial<K>::constant(K(1), a.num_vars());
        }
        Polynomial<K> n2 = b.num_, d1 = a.den_;
        if (auto q = n2.divide_exact(d1)) {
            n2 = *q;
            d1 = Polynomial<K>::constant(K(1), a.num_vars());
        }
        return RationalFunction(n1 * n2, d1 * d2);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.num_.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return a * RationalFunction(b.den_, b.num_);
    }

    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    // Value equality by cross-multiplication.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    // quotient rule; the common factor of den^2 is reduced when possible
    RationalFunction derivative(std::size_t var) const {
        Polynomial<K> n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
        if (auto q = n.divide_exact(den_)) return RationalFunction(*q, den_);
        return RationalFunction(n, den_ * den_);
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (is_polynomial()) return num_.to_string(names);
        return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Polynomial<K>::constant(K(1), num_vars());
            return;
        }
        if (auto q = num_.divide_exact(den_)) {
            num_ = *q;
            den_ = Polynomial<K>::constant(K(1), num_vars());
            return;
        }
        if constexpr (std::same_as<K, Rat>) {
            K scale = den_.content();
            if (den_.leading_term().second.sign() < 0) scale = -scale;
            num_ /= scale;
            den_ /= scale;
        } else {
            K lead = den_.leading_term().second;
            num_ /= lead;
            den_ /= lead;
        }
    }

    Polynomial<K> num_, den_;
};

using RatFuncQ = RationalFunction<Rat>;

} // namespace oplab
