// Exact operator calculus on polynomials: build a coefficient pair,
// apply T and A, and watch the residuals vanish symbolically.

#include "oplab/operators.hpp"
#include "oplab/recovery.hpp"

#include <iostream>

using namespace oplab;

int main() {
    std::size_t n = 2;
    PolyQ x1 = PolyQ::variable(0, n), x2 = PolyQ::variable(1, n);

    // T(f) = <f'' c, c> + <f', b> with b = (x2, 0), c = (1, 1)
    OperatorSpec spec({x2, PolyQ::zero(n)}, {PolyQ::constant(Rat(1), n), PolyQ::constant(Rat(1), n)}, 2);

    PolyQ f = x1 * x2;
    std::cout << "T(x1*x2)        = " << apply_T(spec, f).to_string() << "\n";
    std::cout << "A(x1*x2)        = " << apply_A(spec, f).to_string() << "\n";

    PolyQ g = x1 * x1 - Rat(1, 2) * x2;
    std::cout << "Leibniz residual = " << second_order_leibniz_residual(spec, f, g).to_string() << "\n";
    std::cout << "eq7 residual     = " << reciprocal_identity_residual(spec, x1 + PolyQ::constant(Rat(3), n)).to_string()
              << "\n";

    // the shift-difference pair obeys the rule but is not of the form
    auto fit = classify(difference_oracle({Rat(1)}));
    std::cout << "difference pair: " << (fit.fits_form() ? "fits the canonical form" : "rejected") << "\n";
    if (!fit.fits_form())
        std::cout << "  probe " << fit.rejection->probe.to_string() << ", residual "
                  << fit.rejection->residual.to_string() << "\n";
    return 0;
}
