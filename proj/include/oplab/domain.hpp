#pragma once

// Axis-aligned open box domains with rational (possibly infinite)
// endpoints, plus conservative interval bounds for polynomials over a
// box. Bounds are used to validate analytic side conditions (a scaled
// function never hitting a value on the domain); they over-approximate,
// so a passed check is always sound.

#include "oplab/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace oplab {

// Extended rational: finite value or +/- infinity.
struct ExtRat {
    int inf = 0; // -1, 0, +1
    Rat v;

    static ExtRat neg_inf() { return {-1, Rat(0)}; }
    static ExtRat pos_inf() { return {+1, Rat(0)}; }
    static ExtRat finite(Rat r) { return {0, std::move(r)}; }

    bool operator<(const ExtRat& o) const {
        if (inf != o.inf) return inf < o.inf;
        return inf == 0 && v < o.v;
    }
    bool operator==(const ExtRat& o) const { return inf == o.inf && (inf != 0 || v == o.v); }

    ExtRat operator-() const { return {-inf, -v}; }
    ExtRat operator+(const ExtRat& o) const {
        if (inf != 0) return *this; // inf + finite, inf + same inf
        if (o.inf != 0) return o;
        return finite(v + o.v);
    }
    // 0 * inf treated as 0, which is the right convention for endpoint
    // candidates of closed-interval products.
    ExtRat operator*(const ExtRat& o) const {
        if (inf == 0 && o.inf == 0) return finite(v * o.v);
        int s1 = inf != 0 ? inf : v.sign();
        int s2 = o.inf != 0 ? o.inf : o.v.sign();
        if (s1 == 0 || s2 == 0) return finite(Rat(0));
        return s1 * s2 > 0 ? pos_inf() : neg_inf();
    }
};

inline ExtRat abs_ext(const ExtRat& x) {
    if (x.inf != 0) return ExtRat::pos_inf();
    return ExtRat::finite(x.v.abs());
}

inline ExtRat ext_pow(const ExtRat& x, unsigned e) {
    if (x.inf == 0) return ExtRat::finite(pow(x.v, e));
    return (x.inf > 0 || e % 2 == 0) ? ExtRat::pos_inf() : ExtRat::neg_inf();
}

struct RatInterval {
    ExtRat lo, hi;

    static RatInterval point(const Rat& r) { return {ExtRat::finite(r), ExtRat::finite(r)}; }
    static RatInterval whole() { return {ExtRat::neg_inf(), ExtRat::pos_inf()}; }

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator*(const RatInterval& o) const {
        ExtRat c[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
        RatInterval r{c[0], c[0]};
        for (int i = 1; i < 4; ++i) {
            if (c[i] < r.lo) r.lo = c[i];
            if (r.hi < c[i]) r.hi = c[i];
        }
        return r;
    }
    RatInterval pow(unsigned e) const {
        if (e == 0) return point(Rat(1));
        if (e % 2 == 1) return {ext_pow(lo, e), ext_pow(hi, e)}; // odd powers are monotone
        ExtRat zero = ExtRat::finite(Rat(0));
        ExtRat alo = abs_ext(lo), ahi = abs_ext(hi);
        ExtRat amax = alo < ahi ? ahi : alo;
        ExtRat amin;
        if (!(zero < lo) && !(hi < zero)) amin = zero; // straddles zero
        else amin = alo < ahi ? alo : ahi;
        return {ext_pow(amin, e), ext_pow(amax, e)};
    }

    bool excludes(const Rat& x) const {
        ExtRat e = ExtRat::finite(x);
        return e < lo || hi < e;
    }
    bool contains(const Rat& x) const { return !excludes(x); }
};

// Open axis-aligned box; an endpoint may be infinite.
struct Box {
    struct Side {
        std::optional<Rat> lo, hi; // nullopt = unbounded
    };
    std::vector<Side> sides;

    explicit Box(std::size_t dim) : sides(dim) {}

    static Box whole(std::size_t dim) { return Box(dim); }

    static Box cube(const std::vector<Rat>& center, const Rat& radius) {
        if (radius.sign() <= 0) throw std::invalid_argument("Box: radius must be positive");
        Box b(center.size());
        for (std::size_t i = 0; i < center.size(); ++i) {
            b.sides[i].lo = center[i] - radius;
            b.sides[i].hi = center[i] + radius;
        }
        return b;
    }

    std::size_t dim() const { return sides.size(); }

    void validate() const {
        for (const auto& s : sides)
            if (s.lo && s.hi && !(*s.lo < *s.hi))
                throw std::invalid_argument("Box: empty side (lo >= hi)");
    }

    bool bounded() const {
        for (const auto& s : sides)
            if (!s.lo || !s.hi) return false;
        return true;
    }

    bool contains_interior(const std::vector<Rat>& p) const {
        if (p.size() != dim()) throw std::invalid_argument("Box: point dimension mismatch");
        for (std::size_t i = 0; i < dim(); ++i) {
            if (sides[i].lo && !(*sides[i].lo < p[i])) return false;
            if (sides[i].hi && !(p[i] < *sides[i].hi)) return false;
        }
        return true;
    }

    // closure of `inner` contained in this open box
    bool strictly_contains(const Box& inner) const {
        if (inner.dim() != dim()) throw std::invalid_argument("Box: dimension mismatch");
        for (std::size_t i = 0; i < dim(); ++i) {
            if (sides[i].lo && (!inner.sides[i].lo || !(*sides[i].lo < *inner.sides[i].lo))) return false;
            if (sides[i].hi && (!inner.sides[i].hi || !(*inner.sides[i].hi < *sides[i].hi))) return false;
        }
        return true;
    }

    bool interiors_overlap(const Box& o) const {
        for (std::size_t i = 0; i < dim(); ++i) {
            const auto& a = sides[i];
            const auto& b = o.sides[i];
            if (a.hi && b.lo && !(*b.lo < *a.hi)) return false;
            if (b.hi && a.lo && !(*a.lo < *b.hi)) return false;
        }
        return true;
    }

    RatInterval var_interval(std::size_t i) const {
        return {sides[i].lo ? ExtRat::finite(*sides[i].lo) : ExtRat::neg_inf(),
                sides[i].hi ? ExtRat::finite(*sides[i].hi) : ExtRat::pos_inf()};
    }
};

// Nonempty open box domain (boxes are convex, hence connected).
struct Domain {
    Box box;

    explicit Domain(Box b) : box(std::move(b)) { box.validate(); }
    static Domain whole(std::size_t dim) { return Domain(Box::whole(dim)); }
    std::size_t dim() const { return box.dim(); }
};

// Conservative interval containing the range of p over the closure of box.
inline RatInterval bound_over_box(const PolyQ& p, const Box& box) {
    if (p.num_vars() != box.dim()) throw std::invalid_argument("bound_over_box: dimension mismatch");
    RatInterval acc = RatInterval::point(Rat(0));
    for (const auto& [e, c] : p.terms()) {
        RatInterval t = RatInterval::point(c);
        for (std::size_t i = 0; i < p.num_vars(); ++i)
            if (e[i]) t = t * box.var_interval(i).pow(e[i]);
        acc = acc + t;
    }
    return acc;
}

} // namespace oplab
