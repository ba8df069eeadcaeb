#pragma once

// The canonical second-order operator pair over box domains:
//
//   T(f) = <f'' c, c> + <f', b>      A(f) = <f', c>
//
// with polynomial coefficient fields b, c, plus the exact identity checks
// built on them: the second-order Leibniz rule, the Laplacian/gradient
// identity, the power identities, the reciprocal identity and the steps
// of its derivation, and the shift-difference example. Every check
// returns an exact residual; a zero residual is a proof of the identity
// for that instance.

#include "oplab/domain.hpp"
#include "oplab/polynomial.hpp"
#include "oplab/ratfunc.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace oplab {

template <ScalarField K>
using VectorFieldT = std::vector<Polynomial<K>>;
using VectorField = VectorFieldT<Rat>;

template <ScalarField K>
VectorFieldT<K> gradient(const Polynomial<K>& f) {
    VectorFieldT<K> g;
    g.reserve(f.num_vars());
    for (std::size_t i = 0; i < f.num_vars(); ++i) g.push_back(f.derivative(i));
    return g;
}

template <ScalarField K>
std::vector<VectorFieldT<K>> hessian(const Polynomial<K>& f) {
    std::vector<VectorFieldT<K>> h(f.num_vars());
    for (std::size_t i = 0; i < f.num_vars(); ++i) {
        Polynomial<K> fi = f.derivative(i);
        for (std::size_t j = 0; j < f.num_vars(); ++j) h[i].push_back(fi.derivative(j));
    }
    return h;
}

template <ScalarField K>
Polynomial<K> laplacian(const Polynomial<K>& f) {
    Polynomial<K> r(f.num_vars());
    for (std::size_t i = 0; i < f.num_vars(); ++i) r += f.derivative(i).derivative(i);
    return r;
}

template <ScalarField K>
Polynomial<K> dot(const VectorFieldT<K>& a, const VectorFieldT<K>& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("dot: size mismatch");
    Polynomial<K> r(a[0].num_vars());
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

// Coefficient fields (b, c) and smoothness class k. The class constraints
// mirror the degeneration of the canonical form: k = 1 forces c = 0 and
// k = 0 forces b = c = 0.
template <ScalarField K = Rat>
class OperatorSpecT {
public:
    OperatorSpecT(VectorFieldT<K> b, VectorFieldT<K> c, unsigned k)
        : b_(std::move(b)), c_(std::move(c)), k_(k) {
        if (b_.empty() || b_.size() != c_.size())
            throw std::invalid_argument("OperatorSpec: b and c must have equal positive dimension");
        dim_ = b_.size();
        for (const auto& p : b_)
            if (p.num_vars() != dim_) throw std::invalid_argument("OperatorSpec: b component arity mismatch");
        for (const auto& p : c_)
            if (p.num_vars() != dim_) throw std::invalid_argument("OperatorSpec: c component arity mismatch");
        if (k_ == 1 && !all_zero(c_))
            throw std::invalid_argument("OperatorSpec: k=1 requires c=0");
        if (k_ == 0 && (!all_zero(b_) || !all_zero(c_)))
            throw std::invalid_argument("OperatorSpec: k=0 requires b=0 and c=0");
    }

    static OperatorSpecT zero(std::size_t dim, unsigned k = 2) {
        VectorFieldT<K> z(dim, Polynomial<K>::zero(dim));
        return OperatorSpecT(z, z, k);
    }

    const VectorFieldT<K>& b() const { return b_; }
    const VectorFieldT<K>& c() const { return c_; }
    unsigned k() const { return k_; }
    std::size_t dim() const { return dim_; }

private:
    static bool all_zero(const VectorFieldT<K>& v) {
        for (const auto& p : v)
            if (!p.is_zero()) return false;
        return true;
    }

    VectorFieldT<K> b_, c_;
    unsigned k_;
    std::size_t dim_;
};

using OperatorSpec = OperatorSpecT<Rat>;

template <ScalarField K>
Polynomial<K> apply_T(const OperatorSpecT<K>& spec, const Polynomial<K>& f) {
    if (f.num_vars() != spec.dim()) throw std::invalid_argument("apply_T: dimension mismatch");
    auto h = hessian(f);
    Polynomial<K> r(spec.dim());
    for (std::size_t i = 0; i < spec.dim(); ++i)
        for (std::size_t j = 0; j < spec.dim(); ++j) r += h[i][j] * spec.c()[i] * spec.c()[j];
    for (std::size_t i = 0; i < spec.dim(); ++i) r += f.derivative(i) * spec.b()[i];
    return r;
}

template <ScalarField K>
Polynomial<K> apply_A(const OperatorSpecT<K>& spec, const Polynomial<K>& f) {
    if (f.num_vars() != spec.dim()) throw std::invalid_argument("apply_A: dimension mismatch");
    Polynomial<K> r(spec.dim());
    for (std::size_t i = 0; i < spec.dim(); ++i) r += f.derivative(i) * spec.c()[i];
    return r;
}

template <ScalarField K>
RationalFunction<K> apply_T(const OperatorSpecT<K>& spec, const RationalFunction<K>& f) {
    if (f.num_vars() != spec.dim()) throw std::invalid_argument("apply_T: dimension mismatch");
    RationalFunction<K> r(spec.dim());
    std::vector<RationalFunction<K>> grad;
    grad.reserve(spec.dim());
    for (std::size_t i = 0; i < spec.dim(); ++i) grad.push_back(f.derivative(i));
    for (std::size_t i = 0; i < spec.dim(); ++i)
        for (std::size_t j = 0; j < spec.dim(); ++j)
            r += grad[i].derivative(j) * RationalFunction<K>(spec.c()[i] * spec.c()[j]);
    for (std::size_t i = 0; i < spec.dim(); ++i) r += grad[i] * RationalFunction<K>(spec.b()[i]);
    return r;
}

template <ScalarField K>
RationalFunction<K> apply_A(const OperatorSpecT<K>& spec, const RationalFunction<K>& f) {
    if (f.num_vars() != spec.dim()) throw std::invalid_argument("apply_A: dimension mismatch");
    RationalFunction<K> r(spec.dim());
    for (std::size_t i = 0; i < spec.dim(); ++i)
        r += f.derivative(i) * RationalFunction<K>(spec.c()[i]);
    return r;
}

// T(fg) - f T(g) - T(f) g - 2 A(f) A(g)
template <ScalarField K>
Polynomial<K> second_order_leibniz_residual(const OperatorSpecT<K>& spec, const Polynomial<K>& f,
                                            const Polynomial<K>& g) {
    Polynomial<K> r = apply_T(spec, f * g);
    r -= f * apply_T(spec, g);
    r -= apply_T(spec, f) * g;
    r -= K(2) * (apply_A(spec, f) * apply_A(spec, g));
    return r;
}

// T(fg) - f T(g) - T(f) g, the first-order (derivation) residual
template <ScalarField K>
Polynomial<K> first_order_leibniz_residual(const OperatorSpecT<K>& spec, const Polynomial<K>& f,
                                           const Polynomial<K>& g) {
    return apply_T(spec, f * g) - f * apply_T(spec, g) - apply_T(spec, f) * g;
}

// lap(fg) - g lap(f) - f lap(g) - 2 <grad f, grad g>
template <ScalarField K>
Polynomial<K> laplacian_identity_residual(const Polynomial<K>& f, const Polynomial<K>& g) {
    Polynomial<K> r = laplacian(f * g);
    r -= g * laplacian(f);
    r -= f * laplacian(g);
    r -= K(2) * dot(gradient(f), gradient(g));
    return r;
}

// T(f^n) - n f^(n-1) T(f) - n A(f) A(f^(n-1))
template <ScalarField K>
Polynomial<K> power_identity_residual(const OperatorSpecT<K>& spec, const Polynomial<K>& f, unsigned n) {
    if (n < 2) throw std::invalid_argument("power_identity_residual: n >= 2 required");
    Polynomial<K> fn1 = f.pow(n - 1);
    Polynomial<K> r = apply_T(spec, fn1 * f);
    r -= K(static_cast<long>(n)) * (fn1 * apply_T(spec, f));
    r -= K(static_cast<long>(n)) * (apply_A(spec, f) * apply_A(spec, fn1));
    return r;
}

// T(1/f) + (1/f^2) T(f) - (2/f^3) A(f)^2
template <ScalarField K>
RationalFunction<K> reciprocal_identity_residual(const OperatorSpecT<K>& spec, const Polynomial<K>& f) {
    if (f.is_zero()) throw std::invalid_argument("reciprocal_identity_residual: f must be nonzero");
    RationalFunction<K> inv = RationalFunction<K>::reciprocal(f);
    RationalFunction<K> r = apply_T(spec, inv);
    RationalFunction<K> f2 = RationalFunction<K>(f * f);
    RationalFunction<K> f3 = RationalFunction<K>(f * f * f);
    r += RationalFunction<K>(apply_T(spec, f)) / f2;
    Polynomial<K> af = apply_A(spec, f);
    r -= RationalFunction<K>(K(2) * (af * af)) / f3;
    return r;
}

// shift-difference operator (D_h f)(x) = f(x+h) - f(x)
inline PolyQ difference_apply(const std::vector<Rat>& h, const PolyQ& f) {
    if (h.size() != f.num_vars()) throw std::invalid_argument("difference_apply: dimension mismatch");
    bool all_zero = true;
    for (const auto& r : h)
        if (!r.is_zero()) all_zero = false;
    if (all_zero) throw std::invalid_argument("difference_apply: h must be nonzero");
    return f.shift(h) - f;
}

// D(fg) - f Dg - (Df) g - (Df)(Dg); the last term is 2 B(Df, Dg) with
// B(u,v) = uv/2, the rational form of the sqrt2/2-scaled pair.
inline PolyQ difference_example_residual(const std::vector<Rat>& h, const PolyQ& f, const PolyQ& g) {
    PolyQ df = difference_apply(h, f);
    PolyQ dg = difference_apply(h, g);
    return difference_apply(h, f * g) - f * dg - df * g - df * dg;
}

struct ProofChainResult {
    // 2/(f^2-1) - 1/(f-1) + 1/(f+1)
    RatFuncQ partial_fraction_residual;
    // (f^2-1)[T(f^2)-2fT(f)-2A(f)^2] - 2[A(f^2)^2-4f^2A(f)^2]
    PolyQ key_identity_residual;
    // T(f^2)-2fT(f)-2A(f)^2 and A(f^2)-2fA(f), each expected to vanish
    PolyQ square_bracket_residual;
    PolyQ chain_rule_residual;
    std::vector<Rat> rationals; // the validated scaling set
    std::vector<PolyQ> scaled_residuals;

    bool all_zero() const {
        if (!partial_fraction_residual.is_zero()) return false;
        if (!key_identity_residual.is_zero() || !square_bracket_residual.is_zero() ||
            !chain_rule_residual.is_zero())
            return false;
        for (const auto& p : scaled_residuals)
            if (!p.is_zero()) return false;
        return true;
    }
};

inline PolyQ proof_chain_key_identity_residual(const OperatorSpec& spec, const PolyQ& f) {
    PolyQ f2 = f * f;
    PolyQ af = apply_A(spec, f);
    PolyQ af2 = apply_A(spec, f2);
    PolyQ bracket1 = apply_T(spec, f2) - Rat(2) * (f * apply_T(spec, f)) - Rat(2) * (af * af);
    PolyQ bracket2 = af2 * af2 - Rat(4) * (f2 * (af * af));
    return (f2 - PolyQ::constant(Rat(1), f.num_vars())) * bracket1 - Rat(2) * bracket2;
}

inline Rat rat_ceil_abs_bound(const RatInterval& iv) {
    if (iv.lo.inf != 0 || iv.hi.inf != 0)
        throw std::domain_error("rat_ceil_abs_bound: unbounded interval");
    Rat m = iv.lo.v.abs();
    if (m < iv.hi.v.abs()) m = iv.hi.v.abs();
    // smallest integer >= m
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), m.raw().get_num().get_mpz_t(), m.raw().get_den().get_mpz_t());
    return Rat(mpq_class(q));
}

// r is admissible when (r f)(x) never hits +-1 on the domain box;
// certified conservatively through interval bounds.
inline bool scaling_rational_valid(const PolyQ& f, const Rat& r, const Domain& domain) {
    RatInterval iv = bound_over_box(f, domain.box) * RatInterval::point(r);
    return iv.excludes(Rat(1)) && iv.excludes(Rat(-1));
}

// Five small reciprocals below 1/bound(|f|) are always admissible on a
// bounded box.
inline std::vector<Rat> generate_scaling_rationals(const PolyQ& f, const Domain& domain, std::size_t count = 5) {
    if (!domain.box.bounded())
        throw std::invalid_argument("generate_scaling_rationals: domain must be bounded");
    Rat m = rat_ceil_abs_bound(bound_over_box(f, domain.box));
    std::vector<Rat> out;
    long i = 1;
    while (out.size() < count) {
        Rat r = Rat(1) / (m + Rat(i));
        if (scaling_rational_valid(f, r, domain)) out.push_back(r);
        ++i;
        if (i > 1000) throw std::runtime_error("generate_scaling_rationals: no admissible rationals found");
    }
    return out;
}

// Verifies each step of the reciprocal-identity derivation on a concrete
// (spec, f): the partial-fraction split, the key identity with both of
// its vanishing brackets, and the identity at five admissible scalings.
inline ProofChainResult check_eq7_proof_chain(const OperatorSpec& spec, const PolyQ& f,
                                              std::vector<Rat> rationals = {},
                                              const Domain* domain = nullptr) {
    if (f.is_constant()) throw std::invalid_argument("check_eq7_proof_chain: f must be nonconstant");
    std::size_t n = f.num_vars();
    ProofChainResult out{RatFuncQ(n), PolyQ(n), PolyQ(n), PolyQ(n), {}, {}};

    PolyQ one = PolyQ::constant(Rat(1), n);
    PolyQ f2m1 = f * f - one;
    out.partial_fraction_residual = RatFuncQ(PolyQ::constant(Rat(2), n), f2m1) -
                                    RatFuncQ(one, f - one) + RatFuncQ(one, f + one);

    out.key_identity_residual = proof_chain_key_identity_residual(spec, f);
    PolyQ af = apply_A(spec, f);
    out.square_bracket_residual =
        apply_T(spec, f * f) - Rat(2) * (f * apply_T(spec, f)) - Rat(2) * (af * af);
    out.chain_rule_residual = apply_A(spec, f * f) - Rat(2) * (f * af);

    Domain default_domain = Domain(Box::cube(std::vector<Rat>(n, Rat(0)), Rat(1)));
    const Domain& dom = domain ? *domain : default_domain;
    if (rationals.empty()) {
        out.rationals = generate_scaling_rationals(f, dom);
    } else {
        for (const auto& r : rationals)
            if (!scaling_rational_valid(f, r, dom))
                throw std::invalid_argument("check_eq7_proof_chain: rational " + r.to_string() +
                                            " not admissible on the domain");
        out.rationals = std::move(rationals);
    }
    for (const auto& r : out.rationals) out.scaled_residuals.push_back(proof_chain_key_identity_residual(spec, f * r));
    return out;
}

} // namespace oplab
