#pragma once

// Seeded deterministic generation for the random suites. Values are drawn
// from mt19937_64 through plain modulo mapping: the stream for a given
// seed is pinned by the mt19937_64 standard, independent of the standard
// library's distribution implementations.

#include "oplab/operators.hpp"
#include "oplab/polynomial.hpp"

#include <cstdint>
#include <random>

namespace oplab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t next() { return g_(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : g_() % n; }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    Rat rat(long num_bound = 9, long den_bound = 9) {
        return Rat(range(-num_bound, num_bound), range(1, den_bound));
    }

    Rat nonzero_rat(long num_bound = 9, long den_bound = 9) {
        for (;;) {
            Rat r = rat(num_bound, den_bound);
            if (!r.is_zero()) return r;
        }
    }

    PolyQ polynomial(std::size_t num_vars, unsigned max_degree, std::size_t terms = 4) {
        PolyQ p(num_vars);
        for (std::size_t t = 0; t < terms; ++t) {
            Exponents e(num_vars, 0);
            unsigned remaining = max_degree;
            for (std::size_t i = 0; i < num_vars; ++i) {
                e[i] = static_cast<std::uint32_t>(below(remaining + 1));
                remaining -= e[i];
            }
            p.add_term(e, rat());
        }
        return p;
    }

    PolyQ nonzero_polynomial(std::size_t num_vars, unsigned max_degree, std::size_t terms = 4) {
        for (;;) {
            PolyQ p = polynomial(num_vars, max_degree, terms);
            if (!p.is_zero()) return p;
        }
    }

    PolyQ nonconstant_polynomial(std::size_t num_vars, unsigned max_degree, std::size_t terms = 4) {
        for (;;) {
            PolyQ p = polynomial(num_vars, max_degree, terms);
            if (!p.is_constant()) return p;
        }
    }

    VectorField vector_field(std::size_t dim, unsigned max_degree, std::size_t terms = 3) {
        VectorField v;
        for (std::size_t i = 0; i < dim; ++i) v.push_back(polynomial(dim, max_degree, terms));
        return v;
    }

    OperatorSpec spec(std::size_t dim, unsigned max_degree, unsigned k = 2) {
        if (k == 0) return OperatorSpec::zero(dim, 0);
        if (k == 1) {
            VectorField zero(dim, PolyQ::zero(dim));
            return OperatorSpec(vector_field(dim, max_degree), zero, 1);
        }
        return OperatorSpec(vector_field(dim, max_degree), vector_field(dim, max_degree), k);
    }

    std::vector<Rat> point(std::size_t dim, long num_bound = 4, long den_bound = 4) {
        std::vector<Rat> p;
        for (std::size_t i = 0; i < dim; ++i) p.push_back(rat(num_bound, den_bound));
        return p;
    }

private:
    std::mt19937_64 g_;
};

} // namespace oplab
