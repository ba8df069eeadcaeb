// Sweep every (T, A, B) triple on a small ring and print what survives
// the power-identity filter and whether any survivor breaks the product
// rule. Build: cmake --build build --target lemma_sweep

#include "oplab/relations.hpp"

#include <iostream>

using namespace oplab;

int main() {
    for (auto [n, modulus] : {std::pair<unsigned, std::uint64_t>{2, 5}, {3, 7}}) {
        auto ring = Ring::make(RingSpec::modular(modulus));
        auto report = verify_lemma2(ring, n);
        std::cout << "Z_" << modulus << ", n = " << n << ": " << report.outcome << "  (triples "
                  << report.details["triples"] << ", survivors " << report.details["survivors"]
                  << ", violations " << report.details["violations"] << ")\n";
    }

    // relaxing the unit-annihilation filter exposes a counterexample
    auto ring = Ring::make(RingSpec::modular(7));
    auto probe = search_violations(ring, 3, {"unit_annihilation"});
    std::cout << "Z_7, n = 3, A(1)=0 relaxed: " << (probe.failed() ? "counterexample found" : "empty")
              << "\n";
    if (probe.failed()) std::cout << "  witness: " << probe.witness.dump() << "\n";
    return 0;
}
