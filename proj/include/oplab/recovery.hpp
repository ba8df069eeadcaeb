#pragma once

// Black-box recovery: given oracles for T and A that map polynomials to
// polynomials, recover the coefficient fields of the canonical form
//
//   T(f) = <f'' c, c> + <f', b>      A(f) = <f', c>
//
// and validate the fit on higher-degree probes, or produce a concrete
// probe whose residual is nonzero. The scalar field is generic: the
// shift-difference pair needs Q(sqrt2) for its A-channel, and all of its
// recovery arithmetic stays exact there.
//
// Probing ladder: degree 0 pins T(1) = A(1) = 0, degree 1 reads off b and
// c, degree 2 cross-checks the products c_i c_j against the quadratic
// T-probes. Those stages determine every probe of degree <= 2 (the
// oracles are additive and Q-homogeneous, which is spot-checked), so
// validation starts at degree-3 monomials, followed by seeded random
// polynomials. T is checked before A on every probe.

#include "oplab/errors.hpp"
#include "oplab/operators.hpp"
#include "oplab/polynomial.hpp"
#include "oplab/rng.hpp"
#include "oplab/sqrt2.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oplab {

template <ScalarField K>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static Rat from_rat(const Rat& r) { return r; }
    static constexpr const char* name = "rational";
};

template <>
struct scalar_traits<Sqrt2Rat> {
    static Sqrt2Rat from_rat(const Rat& r) { return Sqrt2Rat::from_rat(r); }
    static constexpr const char* name = "rational+sqrt2";
};

template <ScalarField K>
Polynomial<K> lift_poly(const PolyQ& p) {
    return p.template map_coefficients<K>([](const Rat& r) { return scalar_traits<K>::from_rat(r); });
}

template <ScalarField K>
struct OperatorOracle {
    std::function<Polynomial<K>(const Polynomial<K>&)> apply_T;
    std::function<Polynomial<K>(const Polynomial<K>&)> apply_A;
    std::size_t dim = 1;
    unsigned smoothness = 2;
    std::string description;
};

inline OperatorOracle<Rat> canonical_oracle(OperatorSpec spec) {
    auto shared = std::make_shared<OperatorSpec>(std::move(spec));
    OperatorOracle<Rat> o;
    o.dim = shared->dim();
    o.smoothness = shared->k();
    o.description = "canonical";
    o.apply_T = [shared](const PolyQ& f) { return oplab::apply_T(*shared, f); };
    o.apply_A = [shared](const PolyQ& f) { return oplab::apply_A(*shared, f); };
    return o;
}

inline OperatorOracle<Rat> zero_oracle(std::size_t dim) {
    OperatorOracle<Rat> o;
    o.dim = dim;
    o.smoothness = 2;
    o.description = "zero";
    o.apply_T = [dim](const PolyQ& f) { return PolyQ::zero(f.num_vars()); };
    o.apply_A = o.apply_T;
    return o;
}

// T f = f(x+h) - f(x), A f = -(sqrt2/2) T f. The pair satisfies the
// second-order Leibniz rule yet is not of the canonical form; quadratic
// probes cannot tell (2 c_i c_j = h_i h_j matches the T-channel), cubic
// probes reject.
inline OperatorOracle<Sqrt2Rat> difference_oracle(const std::vector<Rat>& h) {
    bool nonzero = false;
    for (const auto& r : h)
        if (!r.is_zero()) nonzero = true;
    if (!nonzero) throw SpecError("difference oracle: h must be nonzero");
    std::vector<Sqrt2Rat> hk;
    hk.reserve(h.size());
    for (const auto& r : h) hk.push_back(Sqrt2Rat::from_rat(r));
    auto diff = [hk](const Polynomial<Sqrt2Rat>& f) { return f.shift(hk) - f; };
    OperatorOracle<Sqrt2Rat> o;
    o.dim = h.size();
    o.smoothness = 2;
    o.description = "difference";
    o.apply_T = diff;
    Sqrt2Rat scale(Rat(0), Rat(-1, 2)); // -(sqrt2/2)
    o.apply_A = [diff, scale](const Polynomial<Sqrt2Rat>& f) { return diff(f) * scale; };
    return o;
}

template <ScalarField K>
struct NotOfForm {
    PolyQ probe;            // the rational probe polynomial handed to the oracle
    Polynomial<K> residual; // oracle output minus prediction
    std::string channel;    // "T" | "A" | "quadratic"
};

template <ScalarField K>
struct RecoveredFields {
    VectorFieldT<K> b;
    VectorFieldT<K> c;                                 // A-channel representative
    std::vector<std::vector<Polynomial<K>>> products;  // T-channel c_i c_j, symmetric
};

template <ScalarField K>
struct FitResult {
    std::optional<RecoveredFields<K>> fits;
    std::optional<NotOfForm<K>> rejection;
    bool fits_form() const { return fits.has_value(); }
};

struct ClassifyOptions {
    unsigned max_probe_degree = 3;
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    unsigned hypothesis_checks = 8;
};

// Sampled additivity and Q-homogeneity check of both oracles; the
// canonical form only makes sense for additive operators, so a violation
// is a hypothesis error, not a NotOfForm outcome.
template <ScalarField K>
void spot_check_hypotheses(const OperatorOracle<K>& o, std::uint64_t seed, unsigned rounds) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (unsigned i = 0; i < rounds; ++i) {
        Polynomial<K> f = lift_poly<K>(rng.polynomial(o.dim, 3));
        Polynomial<K> g = lift_poly<K>(rng.polynomial(o.dim, 3));
        K r = scalar_traits<K>::from_rat(rng.nonzero_rat());
        if (o.apply_T(f + g) != o.apply_T(f) + o.apply_T(g) || o.apply_T(f * r) != o.apply_T(f) * r)
            throw HypothesisViolation("oracle T is not additive and homogeneous on sampled probes");
        if (o.apply_A(f + g) != o.apply_A(f) + o.apply_A(g) || o.apply_A(f * r) != o.apply_A(f) * r)
            throw HypothesisViolation("oracle A is not additive and homogeneous on sampled probes");
    }
}

// b_i = T(x_i): coordinate probes have zero second derivative.
template <ScalarField K>
VectorFieldT<K> recover_b(const OperatorOracle<K>& o) {
    VectorFieldT<K> b;
    b.reserve(o.dim);
    for (std::size_t i = 0; i < o.dim; ++i)
        b.push_back(o.apply_T(lift_poly<K>(PolyQ::variable(i, o.dim))));
    return b;
}

// c_i = A(x_i), cross-checked against the quadratic T-channel
// T(x_i x_j) = x_i b_j + x_j b_i + 2 c_i c_j. Disagreement is an
// immediate rejection with the offending probe.
template <ScalarField K>
FitResult<K> recover_c_products(const OperatorOracle<K>& o, const VectorFieldT<K>& b) {
    FitResult<K> out;
    RecoveredFields<K> fields;
    fields.b = b;
    for (std::size_t i = 0; i < o.dim; ++i)
        fields.c.push_back(o.apply_A(lift_poly<K>(PolyQ::variable(i, o.dim))));
    fields.products.assign(o.dim, std::vector<Polynomial<K>>(o.dim, Polynomial<K>::zero(o.dim)));
    K half = K(1) / K(2);
    for (std::size_t i = 0; i < o.dim; ++i) {
        for (std::size_t j = i; j < o.dim; ++j) {
            PolyQ probe = PolyQ::variable(i, o.dim) * PolyQ::variable(j, o.dim);
            Polynomial<K> xi = lift_poly<K>(PolyQ::variable(i, o.dim));
            Polynomial<K> xj = lift_poly<K>(PolyQ::variable(j, o.dim));
            Polynomial<K> extracted = (o.apply_T(lift_poly<K>(probe)) - xi * b[j] - xj * b[i]) * half;
            Polynomial<K> from_a = fields.c[i] * fields.c[j];
            if (extracted != from_a) {
                out.rejection = NotOfForm<K>{probe, extracted - from_a, "quadratic"};
                return out;
            }
            fields.products[i][j] = extracted;
            fields.products[j][i] = extracted;
        }
    }
    out.fits = std::move(fields);
    return out;
}

// The degree <= 2 stage on its own: degree-0 vanishing, b, c, products.
template <ScalarField K>
FitResult<K> recover(const OperatorOracle<K>& o) {
    Polynomial<K> one = Polynomial<K>::constant(K(1), o.dim);
    Polynomial<K> t1 = o.apply_T(one);
    if (!t1.is_zero()) {
        FitResult<K> out;
        out.rejection = NotOfForm<K>{PolyQ::constant(Rat(1), o.dim), t1, "T"};
        return out;
    }
    Polynomial<K> a1 = o.apply_A(one);
    if (!a1.is_zero()) {
        FitResult<K> out;
        out.rejection = NotOfForm<K>{PolyQ::constant(Rat(1), o.dim), a1, "A"};
        return out;
    }
    return recover_c_products(o, recover_b(o));
}

namespace detail {

inline void monomials_of_degree(std::size_t dim, unsigned degree, std::vector<Exponents>& out) {
    Exponents cur(dim, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos + 1 == dim) {
            cur[pos] = left;
            out.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, degree);
}

} // namespace detail

// Validate one probe against the recovered fields; returns the rejection
// if either channel disagrees. The T prediction uses the product fields
// (all the canonical form ever needs), the A prediction uses c itself.
template <ScalarField K>
std::optional<NotOfForm<K>> validate_probe(const OperatorOracle<K>& o, const RecoveredFields<K>& f,
                                           const PolyQ& probe) {
    Polynomial<K> lifted = lift_poly<K>(probe);
    Polynomial<K> predicted_t = Polynomial<K>::zero(o.dim);
    for (std::size_t i = 0; i < o.dim; ++i) {
        Polynomial<K> di = lifted.derivative(i);
        for (std::size_t j = 0; j < o.dim; ++j) predicted_t += di.derivative(j) * f.products[i][j];
        predicted_t += di * f.b[i];
    }
    Polynomial<K> got_t = o.apply_T(lifted);
    if (got_t != predicted_t) return NotOfForm<K>{probe, got_t - predicted_t, "T"};

    Polynomial<K> predicted_a = Polynomial<K>::zero(o.dim);
    for (std::size_t i = 0; i < o.dim; ++i) predicted_a += lifted.derivative(i) * f.c[i];
    Polynomial<K> got_a = o.apply_A(lifted);
    if (got_a != predicted_a) return NotOfForm<K>{probe, got_a - predicted_a, "A"};
    return std::nullopt;
}

// Validation sweep over monomials of degree 3..max_degree (graded
// lexicographic) and seeded random polynomials.
template <ScalarField K>
std::optional<NotOfForm<K>> validate_fit(const OperatorOracle<K>& o, const RecoveredFields<K>& f,
                                         unsigned max_degree, std::uint64_t trials, std::uint64_t seed) {
    for (unsigned d = 3; d <= max_degree; ++d) {
        std::vector<Exponents> mons;
        detail::monomials_of_degree(o.dim, d, mons);
        for (const auto& e : mons)
            if (auto bad = validate_probe(o, f, PolyQ::monomial(e, Rat(1)))) return bad;
    }
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        PolyQ probe = rng.polynomial(o.dim, max_degree < 3 ? 3 : max_degree);
        if (auto bad = validate_probe(o, f, probe)) return bad;
    }
    return std::nullopt;
}

template <ScalarField K>
FitResult<K> classify(const OperatorOracle<K>& o, const ClassifyOptions& opts = {}) {
    if (opts.max_probe_degree < 3)
        throw SpecError("classify: max_probe_degree must be >= 3, degree-2 probes cannot separate");
    spot_check_hypotheses(o, opts.seed, opts.hypothesis_checks);
    FitResult<K> fit = recover(o);
    if (!fit.fits_form()) return fit;
    if (auto bad = validate_fit(o, *fit.fits, opts.max_probe_degree, opts.trials, opts.seed)) {
        FitResult<K> out;
        out.rejection = std::move(bad);
        return out;
    }
    return fit;
}

} // namespace oplab
