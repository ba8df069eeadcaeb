#pragma once

// Exact rational scalar used throughout the library. Thin value wrapper
// around GMP's mpq_class so that arithmetic expressions always yield a
// plain Rat (no expression-template surprises in generic code) and so the
// string format is pinned in one place.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oplab {

class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p", "p/q", optional leading '-'.
    static Rat from_string(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rat: empty string");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rat: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }

    // Canonical form: "p" when the denominator is 1, else "p/q".
    std::string to_string() const { return v_.get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    // Valid only when is_integer() and in range.
    long to_long() const {
        if (!is_integer()) throw std::domain_error("Rat: not an integer");
        if (!v_.get_num().fits_slong_p()) throw std::domain_error("Rat: out of long range");
        return v_.get_num().get_si();
    }

    const mpq_class& raw() const { return v_; }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const { return sign() < 0 ? -*this : *this; }

    // gcd of |a| and |b| as a nonnegative rational: gcd of numerators over
    // lcm of denominators. gcd(0,0) = 0.
    static Rat gcd(const Rat& a, const Rat& b) {
        mpz_class gn, gl;
        mpz_gcd(gn.get_mpz_t(), a.v_.get_num().get_mpz_t(), b.v_.get_num().get_mpz_t());
        mpz_lcm(gl.get_mpz_t(), a.v_.get_den().get_mpz_t(), b.v_.get_den().get_mpz_t());
        mpq_class r(gn, gl);
        r.canonicalize();
        return Rat(r);
    }

private:
    mpq_class v_;
};

inline Rat pow(Rat base, unsigned e) {
    Rat r(1);
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

} // namespace oplab
