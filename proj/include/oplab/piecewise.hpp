#pragma once

// Compactly supported piecewise polynomials on axis-aligned boxes, the
// tensor-product polynomial bump, exact smoothness verification across
// piece boundaries on rational sample grids, and the two pointwise
// operator properties they witness: non-degeneracy and dependence on the
// derivative.

#include "oplab/domain.hpp"
#include "oplab/errors.hpp"
#include "oplab/operators.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace oplab {

class PiecewisePolynomial {
public:
    struct Piece {
        Box box;
        PolyQ poly;
    };

    explicit PiecewisePolynomial(std::size_t dim, std::vector<Piece> pieces = {})
        : dim_(dim), pieces_(std::move(pieces)) {
        for (const auto& pc : pieces_) {
            if (pc.box.dim() != dim_ || pc.poly.num_vars() != dim_)
                throw SpecError("piecewise: piece dimension mismatch");
            if (!pc.box.bounded()) throw SpecError("piecewise: pieces must be bounded (compact support)");
            pc.box.validate();
        }
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            for (std::size_t j = i + 1; j < pieces_.size(); ++j)
                if (pieces_[i].box.interiors_overlap(pieces_[j].box))
                    throw SpecError("piecewise: piece interiors overlap");
    }

    std::size_t dim() const { return dim_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    static bool closure_contains(const Box& b, const std::vector<Rat>& p) {
        for (std::size_t i = 0; i < b.dim(); ++i)
            if (p[i] < *b.sides[i].lo || *b.sides[i].hi < p[i]) return false;
        return true;
    }

    // the polynomial in force at p (first piece whose closure contains p,
    // zero outside); pieces agree on shared boundaries for continuous
    // functions, so the choice is immaterial there
    const PolyQ* piece_polynomial_at(const std::vector<Rat>& p) const {
        for (const auto& pc : pieces_)
            if (closure_contains(pc.box, p)) return &pc.poly;
        return nullptr;
    }

    Rat evaluate(const std::vector<Rat>& p) const {
        if (p.size() != dim_) throw SpecError("piecewise: point dimension mismatch");
        const PolyQ* poly = piece_polynomial_at(p);
        return poly ? poly->evaluate(p) : Rat(0);
    }

    // support contained in the closed union of piece boxes
    bool supported_inside(const Box& outer) const {
        for (const auto& pc : pieces_)
            if (!outer.strictly_contains(pc.box)) return false;
        return true;
    }

    PiecewisePolynomial multiplied_by(const PolyQ& f) const {
        std::vector<Piece> out;
        for (const auto& pc : pieces_) out.push_back({pc.box, pc.poly * f});
        return PiecewisePolynomial(dim_, std::move(out));
    }

private:
    std::size_t dim_;
    std::vector<Piece> pieces_;
};

// Tensor-product bump: product over axes of (1 - u^2)^(k+1) with
// u = (t_i - center_i)/radius, supported on the closed cube of the given
// radius. Value 1 and gradient 0 at the center; all derivatives through
// order k vanish on the support boundary.
inline PiecewisePolynomial make_bump(const std::vector<Rat>& center, const Rat& radius, unsigned k) {
    if (radius.sign() <= 0) throw SpecError("bump: radius must be positive");
    std::size_t n = center.size();
    if (n == 0) throw SpecError("bump: need at least one dimension");
    PolyQ poly = PolyQ::constant(Rat(1), n);
    for (std::size_t i = 0; i < n; ++i) {
        PolyQ u = (PolyQ::variable(i, n) - PolyQ::constant(center[i], n)) / radius;
        PolyQ factor = PolyQ::constant(Rat(1), n) - u * u;
        poly *= factor.pow(k + 1);
    }
    return PiecewisePolynomial(n, {{Box::cube(center, radius), std::move(poly)}});
}

namespace detail {

inline void multi_indices_up_to(std::size_t dim, unsigned order, std::vector<Exponents>& out) {
    Exponents cur(dim, 0);
    // graded enumeration by recursion over total order
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos + 1 == dim) {
            for (unsigned e = 0; e <= left; ++e) {
                cur[pos] = e;
                out.push_back(cur);
            }
            cur[pos] = 0;
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, order);
}

inline PolyQ partial(const PolyQ& f, const Exponents& alpha) {
    PolyQ g = f;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::uint32_t r = 0; r < alpha[i]; ++r) g = g.derivative(i);
    return g;
}

} // namespace detail

struct SmoothnessBreak {
    std::size_t piece;
    std::size_t axis;
    bool upper_side;
    std::vector<Rat> point;
    Exponents derivative;
};

// Verify agreement of all partial derivatives of total order <= k across
// every facet, on a rational sample grid. For each facet sample, the
// neighbor is the piece covering the outward side there, or the zero
// function when nothing does.
inline std::optional<SmoothnessBreak> verify_smoothness(const PiecewisePolynomial& pw, unsigned k,
                                                        unsigned samples_per_axis = 5) {
    std::size_t n = pw.dim();
    std::vector<Exponents> alphas;
    detail::multi_indices_up_to(n, k, alphas);

    for (std::size_t pi = 0; pi < pw.pieces().size(); ++pi) {
        const auto& piece = pw.pieces()[pi];
        for (std::size_t axis = 0; axis < n; ++axis) {
            for (int side = 0; side < 2; ++side) {
                Rat fixed = side ? *piece.box.sides[axis].hi : *piece.box.sides[axis].lo;
                // grid over the remaining axes, endpoints included
                std::vector<Rat> p(n);
                std::vector<unsigned> grid(n, 0);
                bool done = false;
                while (!done) {
                    for (std::size_t i = 0; i < n; ++i) {
                        if (i == axis) {
                            p[i] = fixed;
                        } else {
                            Rat lo = *piece.box.sides[i].lo, hi = *piece.box.sides[i].hi;
                            Rat t = samples_per_axis == 1 ? Rat(1, 2)
                                                          : Rat(static_cast<long>(grid[i]),
                                                                static_cast<long>(samples_per_axis - 1));
                            p[i] = lo + t * (hi - lo);
                        }
                    }
                    // the piece covering the outward side at p, if any
                    const PolyQ* neighbor = nullptr;
                    for (const auto& other : pw.pieces()) {
                        if (&other == &piece) continue;
                        if (!PiecewisePolynomial::closure_contains(other.box, p)) continue;
                        bool covers_outward = side ? (p[axis] < *other.box.sides[axis].hi)
                                                   : (*other.box.sides[axis].lo < p[axis]);
                        if (covers_outward) {
                            neighbor = &other.poly;
                            break;
                        }
                    }
                    for (const auto& alpha : alphas) {
                        Rat inside = detail::partial(piece.poly, alpha).evaluate(p);
                        Rat outside = neighbor ? detail::partial(*neighbor, alpha).evaluate(p) : Rat(0);
                        if (inside != outside)
                            return SmoothnessBreak{pi, axis, side == 1, p, alpha};
                    }
                    // odometer over the free axes
                    done = true;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (i == axis) continue;
                        if (++grid[i] < samples_per_axis) {
                            done = false;
                            break;
                        }
                        grid[i] = 0;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

// A(g) evaluated at a point, for a piecewise polynomial argument.
inline Rat apply_A_at(const OperatorSpec& spec, const PiecewisePolynomial& g, const std::vector<Rat>& x) {
    const PolyQ* poly = g.piece_polynomial_at(x);
    Rat acc(0);
    if (!poly) return acc;
    for (std::size_t i = 0; i < spec.dim(); ++i)
        acc += poly->derivative(i).evaluate(x) * spec.c()[i].evaluate(x);
    return acc;
}

struct NondegeneracyWitness {
    std::size_t axis;  // j with c_j(x) != 0
    Rat determinant;   // of the 2x2 value/operator-value matrix
    PiecewisePolynomial g1, g2;
    Rat g1_value, g1_operator_value;
    Rat g2_value, g2_operator_value;
};

// For scalar-valued A(f) = <f', c>: produce g1, g2 supported in the cube
// around x whose (value, A-value) vectors at x are linearly independent,
// or nothing when c(x) = 0 (A is degenerate at x).
inline std::optional<NondegeneracyWitness> check_nondegenerate(const OperatorSpec& spec,
                                                               const std::vector<Rat>& x, const Rat& radius,
                                                               const Domain& domain) {
    if (x.size() != spec.dim()) throw SpecError("nondegenerate: point dimension mismatch");
    if (!domain.box.contains_interior(x)) throw SpecError("nondegenerate: x must be interior to the domain");
    Box support = Box::cube(x, radius);
    if (!domain.box.strictly_contains(support))
        throw SpecError("nondegenerate: support cube leaves the domain; shrink the radius");

    std::optional<std::size_t> axis;
    for (std::size_t j = 0; j < spec.dim(); ++j)
        if (!spec.c()[j].evaluate(x).is_zero()) {
            axis = j;
            break;
        }
    if (!axis) return std::nullopt; // c(x) = 0: degenerate at x

    PiecewisePolynomial g1 = make_bump(x, radius, spec.k());
    PolyQ tj = PolyQ::variable(*axis, spec.dim()) - PolyQ::constant(x[*axis], spec.dim());
    PiecewisePolynomial g2 = g1.multiplied_by(tj);

    NondegeneracyWitness w{*axis, Rat(0), g1, g2, g1.evaluate(x), apply_A_at(spec, g1, x),
                           g2.evaluate(x), apply_A_at(spec, g2, x)};
    w.determinant = w.g1_value * w.g2_operator_value - w.g2_value * w.g1_operator_value;
    return w;
}

struct DerivativeDependenceWitness {
    std::size_t axis;
    PiecewisePolynomial f2; // f1 is identically zero
    Rat common_value;       // f1(x) = f2(x)
    Rat a_f2;               // A f2(x), nonzero
};

// Functions agreeing in value at x whose A-values differ there: f1 = 0
// and f2 = (t_j - x_j) * bump. Fails exactly when c(x) = 0.
inline std::optional<DerivativeDependenceWitness> depends_on_derivative(const OperatorSpec& spec,
                                                                        const std::vector<Rat>& x,
                                                                        const Rat& radius = Rat(1)) {
    if (x.size() != spec.dim()) throw SpecError("depends_on_derivative: point dimension mismatch");
    std::optional<std::size_t> axis;
    for (std::size_t j = 0; j < spec.dim(); ++j)
        if (!spec.c()[j].evaluate(x).is_zero()) {
            axis = j;
            break;
        }
    if (!axis) return std::nullopt;

    PiecewisePolynomial bump = make_bump(x, radius, spec.k());
    PolyQ tj = PolyQ::variable(*axis, spec.dim()) - PolyQ::constant(x[*axis], spec.dim());
    PiecewisePolynomial f2 = bump.multiplied_by(tj);
    return DerivativeDependenceWitness{*axis, f2, f2.evaluate(x), apply_A_at(spec, f2, x)};
}

} // namespace oplab
