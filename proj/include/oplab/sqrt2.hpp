#pragma once

// The quadratic field Q(sqrt 2), represented exactly as a + b*sqrt2 with
// rational a, b. Needed wherever an operator carries the scaling sqrt2/2:
// its square is rational, so mixed computations stay exact.

#include "oplab/rational.hpp"

#include <stdexcept>
#include <string>

namespace oplab {

class Sqrt2Rat {
public:
    Sqrt2Rat() = default;
    Sqrt2Rat(long n) : a_(n) {}
    Sqrt2Rat(Rat a, Rat b = Rat(0)) : a_(std::move(a)), b_(std::move(b)) {}

    static Sqrt2Rat sqrt2() { return Sqrt2Rat(Rat(0), Rat(1)); }
    static Sqrt2Rat from_rat(const Rat& r) { return Sqrt2Rat(r); }

    const Rat& rational_part() const { return a_; }
    const Rat& sqrt2_part() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    // Throws when the value lies outside Q.
    Rat to_rat() const {
        if (!b_.is_zero()) throw std::domain_error("Sqrt2Rat: not rational");
        return a_;
    }

    std::string to_string() const {
        if (b_.is_zero()) return a_.to_string();
        std::string s = b_.to_string() + "*sqrt2";
        if (a_.is_zero()) return s;
        return a_.to_string() + (b_.sign() > 0 ? "+" : "") + s;
    }

    Sqrt2Rat operator-() const { return Sqrt2Rat(-a_, -b_); }
    Sqrt2Rat& operator+=(const Sqrt2Rat& o) { a_ += o.a_; b_ += o.b_; return *this; }
    Sqrt2Rat& operator-=(const Sqrt2Rat& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    Sqrt2Rat& operator*=(const Sqrt2Rat& o) {
        // (a + b r)(c + d r) = ac + 2bd + (ad + bc) r,  r*r = 2
        Rat na = a_ * o.a_ + Rat(2) * b_ * o.b_;
        Rat nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    Sqrt2Rat& operator/=(const Sqrt2Rat& o) {
        // norm a^2 - 2 b^2 vanishes only at 0 (sqrt2 irrational)
        Rat norm = o.a_ * o.a_ - Rat(2) * o.b_ * o.b_;
        if (norm.is_zero()) throw std::domain_error("Sqrt2Rat: division by zero");
        Sqrt2Rat conj(o.a_ / norm, -o.b_ / norm);
        return *this *= conj;
    }

    friend Sqrt2Rat operator+(Sqrt2Rat x, const Sqrt2Rat& y) { x += y; return x; }
    friend Sqrt2Rat operator-(Sqrt2Rat x, const Sqrt2Rat& y) { x -= y; return x; }
    friend Sqrt2Rat operator*(Sqrt2Rat x, const Sqrt2Rat& y) { x *= y; return x; }
    friend Sqrt2Rat operator/(Sqrt2Rat x, const Sqrt2Rat& y) { x /= y; return x; }
    friend bool operator==(const Sqrt2Rat& x, const Sqrt2Rat& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Sqrt2Rat& x, const Sqrt2Rat& y) { return !(x == y); }

private:
    Rat a_, b_;
};

} // namespace oplab
