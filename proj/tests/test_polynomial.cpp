#include "oplab/domain.hpp"
#include "oplab/polynomial.hpp"
#include "oplab/ratfunc.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace oplab;

namespace {

// Independent differentiation oracle: substitute x_i -> x_i + t in a
// fresh variable t and read off the coefficient of t^1. Exercises only
// compose(), never derivative().
PolyQ derivative_oracle(const PolyQ& f, std::size_t var) {
    std::size_t n = f.num_vars();
    std::vector<PolyQ> repl;
    for (std::size_t i = 0; i < n; ++i) {
        PolyQ xi = PolyQ::variable(i, n + 1);
        if (i == var) xi += PolyQ::variable(n, n + 1);
        repl.push_back(xi);
    }
    PolyQ lifted = f.compose(repl);
    PolyQ out(n);
    for (const auto& [e, c] : lifted.terms()) {
        if (e[n] != 1) continue;
        Exponents drop(e.begin(), e.end() - 1);
        out.add_term(drop, c);
    }
    return out;
}

PolyQ x(std::size_t i, std::size_t n) { return PolyQ::variable(i, n); }

} // namespace

TEST_CASE("polynomial ring axioms on concrete values") {
    PolyQ a = x(0, 2) * x(0, 2) + Rat(3) * x(1, 2);
    PolyQ b = x(0, 2) - PolyQ::constant(Rat(1, 2), 2);
    PolyQ c = x(1, 2) * x(1, 2);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a - a).is_zero());
    CHECK(a * PolyQ::constant(Rat(1), 2) == a);
    CHECK((a * PolyQ::zero(2)).is_zero());
    CHECK_THROWS(a + PolyQ::variable(0, 3));
}

TEST_CASE("no zero coefficients are stored") {
    PolyQ a = x(0, 1) + PolyQ::constant(Rat(1), 1);
    PolyQ b = x(0, 1) - PolyQ::constant(Rat(1), 1);
    PolyQ p = a * b; // x^2 - 1, no x term
    CHECK(p.terms().size() == 2);
    PolyQ q = a * a - a * a;
    CHECK(q.terms().empty());
}

TEST_CASE("derivative matches the substitution oracle") {
    PolyQ f = x(0, 2) * x(0, 2) * x(1, 2) + Rat(5, 3) * x(1, 2) - PolyQ::constant(Rat(7), 2);
    for (std::size_t v = 0; v < 2; ++v) CHECK(f.derivative(v) == derivative_oracle(f, v));

    // x1^2 x2: d/dx1 = 2 x1 x2, d/dx2 = x1^2
    PolyQ g = x(0, 2).pow(2) * x(1, 2);
    CHECK(g.derivative(0) == Rat(2) * (x(0, 2) * x(1, 2)));
    CHECK(g.derivative(1) == x(0, 2).pow(2));
    CHECK(g.derivative(0) == derivative_oracle(g, 0));

    PolyQ cst = PolyQ::constant(Rat(9, 4), 3);
    for (std::size_t v = 0; v < 3; ++v) CHECK(cst.derivative(v).is_zero());
}

TEST_CASE("shift expands binomially") {
    PolyQ f = x(0, 1).pow(2);
    PolyQ s = f.shift({Rat(1)});
    CHECK(s == f + Rat(2) * x(0, 1) + PolyQ::constant(Rat(1), 1));
    PolyQ g = x(0, 2) * x(1, 2);
    CHECK(g.shift({Rat(0), Rat(0)}) == g);
    CHECK(g.shift({Rat(1), Rat(-1)}) ==
          (x(0, 2) + PolyQ::constant(Rat(1), 2)) * (x(1, 2) - PolyQ::constant(Rat(1), 2)));
}

TEST_CASE("evaluation is exact") {
    PolyQ f = x(0, 2).pow(3) - Rat(1, 2) * x(1, 2);
    CHECK(f.evaluate({Rat(2, 3), Rat(4)}) == Rat(8, 27) - Rat(2));
}

TEST_CASE("exact division succeeds exactly on multiples") {
    PolyQ a = x(0, 2) + x(1, 2);
    PolyQ b = x(0, 2) - x(1, 2) + PolyQ::constant(Rat(2, 7), 2);
    PolyQ prod = a * b;
    auto q = prod.divide_exact(a);
    REQUIRE(q.has_value());
    CHECK(*q == b);
    CHECK(prod.divide_exact(b) == a);
    CHECK_FALSE((prod + PolyQ::constant(Rat(1), 2)).divide_exact(a).has_value());
    CHECK_FALSE(a.divide_exact(prod).has_value());
    CHECK_THROWS(a.divide_exact(PolyQ::zero(2)));
}

TEST_CASE("content") {
    PolyQ p = Rat(6) * x(0, 1) + PolyQ::constant(Rat(9), 1);
    CHECK(p.content() == Rat(3));
    PolyQ q = Rat(1, 2) * x(0, 1) + PolyQ::constant(Rat(1, 3), 1);
    CHECK(q.content() == Rat(1, 6));
}

TEST_CASE("printing is canonical") {
    PolyQ f = x(0, 2).pow(2) * x(1, 2) - Rat(1, 2) * x(1, 2) + PolyQ::constant(Rat(3), 2);
    CHECK(f.to_string() == "1*x1^2*x2 + -1/2*x2 + 3");
    CHECK(PolyQ::zero(2).to_string() == "0");
}

TEST_CASE("rational function normalization and equality") {
    std::size_t n = 1;
    PolyQ xv = x(0, n);
    PolyQ one = PolyQ::constant(Rat(1), n);

    RatFuncQ r(xv * xv - one, xv - one); // reduces to x+1 via exact division
    CHECK(r.is_polynomial());
    CHECK(r.as_polynomial() == xv + one);

    RatFuncQ a(one, xv);
    RatFuncQ b(one, xv * xv);
    RatFuncQ sum = a + b; // (x+1)/x^2
    CHECK(sum == RatFuncQ(xv + one, xv * xv));
    CHECK(sum.den() == xv * xv);

    // denominator normalized: primitive, positive leading coefficient
    RatFuncQ c(one, Rat(-2) * xv);
    CHECK(c.den() == xv);
    CHECK(c.num() == PolyQ::constant(Rat(-1, 2), n));

    CHECK(a - a == RatFuncQ(n));
    CHECK((a * RatFuncQ(xv)).is_polynomial());
    CHECK_THROWS(a / RatFuncQ(n));
    CHECK_THROWS(RatFuncQ(one, PolyQ::zero(n)));
}

TEST_CASE("rational function derivative") {
    std::size_t n = 1;
    PolyQ xv = x(0, n);
    RatFuncQ inv = RatFuncQ::reciprocal(xv);
    // d/dx 1/x = -1/x^2, second derivative 2/x^3
    CHECK(inv.derivative(0) == RatFuncQ(-PolyQ::constant(Rat(1), n), xv * xv));
    CHECK(inv.derivative(0).derivative(0) == RatFuncQ(PolyQ::constant(Rat(2), n), xv * xv * xv));
}

TEST_CASE("interval bounds over boxes are conservative and usable") {
    std::size_t n = 1;
    PolyQ f = x(0, n) + PolyQ::constant(Rat(3), n); // on (-1,1): range (2,4)
    Box box = Box::cube({Rat(0)}, Rat(1));
    RatInterval iv = bound_over_box(f, box);
    CHECK(iv.lo == ExtRat::finite(Rat(2)));
    CHECK(iv.hi == ExtRat::finite(Rat(4)));
    CHECK(iv.excludes(Rat(1)));
    CHECK(iv.contains(Rat(3)));

    // unbounded domain: x^2+1 stays away from zero
    PolyQ g = x(0, n).pow(2) + PolyQ::constant(Rat(1), n);
    RatInterval gv = bound_over_box(g, Box::whole(n));
    CHECK(gv.excludes(Rat(0)));
    CHECK(gv.lo == ExtRat::finite(Rat(1)));
    CHECK(gv.hi == ExtRat::pos_inf());
}
