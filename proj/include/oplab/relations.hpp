#pragma once

// Operator-equation checks on finite rings. A triple (T, A, B) consists
// of additive T: P -> Q, additive A: P -> R and symmetric bi-additive
// B: R x R -> Q, with P a subring of Q. The checks cover
//
//   (eq1)    T(fg) = f T(g) + T(f) g + 2 B(A(f), A(g))
//   (eq2)    T(f^2) = 2 f T(f) + 2 B(A(f), A(f))
//   (bullet) T(f^n) = n f^(n-1) T(f) + n B(A(f), A(f^(n-1)))
//
// plus the symmetric n-additive functional built from a triple, the full
// lemma sweep (bullet for all f, and A(1) = 0 when n > 2, imply eq1 when
// char(Q) > n!), and the counterexample search with relaxed hypotheses.
// Sweeps are index-partitioned across threads without early exit, so
// reports are identical for any worker count.

#include "oplab/json_io.hpp"
#include "oplab/multiadd.hpp"
#include "oplab/report.hpp"

#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace oplab {

struct OperatorTriple {
    AdditiveMap T; // P -> Q
    AdditiveMap A; // P -> R
    SymBiAddMap B; // R x R -> Q

    OperatorTriple(AdditiveMap t, AdditiveMap a, SymBiAddMap b)
        : T(std::move(t)), A(std::move(a)), B(std::move(b)) {
        if (!T.domain()->same_as(*A.domain()))
            throw SpecError("operator triple: T and A must share the domain subring");
        if (!(T.domain()->ring()->spec() == T.codomain()->spec()))
            throw SpecError("operator triple: P must be a subring of T's codomain Q");
        if (!(B.domain()->ring()->spec() == A.codomain()->spec()) || !B.domain()->is_whole())
            throw SpecError("operator triple: B must consume A's codomain ring R");
        if (!(B.codomain()->spec() == T.codomain()->spec()))
            throw SpecError("operator triple: B must produce values in Q");
    }

    const SubringPtr& P() const { return T.domain(); }
    const RingPtr& Q() const { return T.codomain(); }
    const RingPtr& R() const { return A.codomain(); }
};

namespace detail {

// rhs of (eq1) at (f, g)
inline Elem eq1_rhs(const OperatorTriple& t, Elem f, Elem g) {
    const Ring& Q = *t.Q();
    Elem r = Q.add(Q.mul(f, t.T.apply(g)), Q.mul(t.T.apply(f), g));
    return Q.add(r, Q.scalar_mul(2, t.B.apply(t.A.apply(f), t.A.apply(g))));
}

// rhs of (bullet) at f for a given n
inline Elem bullet_rhs(const OperatorTriple& t, Elem f, unsigned n) {
    const Ring& Q = *t.Q();
    Elem fn1 = Q.pow(f, n - 1);
    Elem r = Q.scalar_mul(n, Q.mul(fn1, t.T.apply(f)));
    return Q.add(r, Q.scalar_mul(n, t.B.apply(t.A.apply(f), t.A.apply(fn1))));
}

inline bool bullet_holds_everywhere(const OperatorTriple& t, unsigned n) {
    const Ring& Q = *t.Q();
    for (Elem f : t.P()->elements())
        if (t.T.apply(Q.pow(f, n)) != bullet_rhs(t, f, n)) return false;
    return true;
}

inline Json subring_to_json(const Subring& P) {
    if (P.is_whole()) return "whole";
    Json arr = Json::array();
    for (Elem e : P.elements()) arr.push_back(elem_to_json(P.ring()->spec(), e));
    return arr;
}

inline Json triple_replay(const OperatorTriple& t, const std::string& equation,
                          std::optional<unsigned> n, const Json& witness) {
    Json j;
    j["kind"] = "triple_equation";
    j["equation"] = equation;
    if (n) j["n"] = *n;
    j["rings"] = Json{{"Q", ring_spec_to_json(t.Q()->spec())},
                      {"R", ring_spec_to_json(t.R()->spec())},
                      {"P", subring_to_json(*t.P())}};
    j["T"] = additive_map_to_json(t.T);
    j["A"] = additive_map_to_json(t.A);
    j["B"] = biadd_map_to_json(t.B);
    j["witness"] = witness;
    return j;
}

} // namespace detail

// Exhaustive check of (eq1) over P x P.
inline VerificationReport check_eq1(const OperatorTriple& t) {
    Timer tm;
    VerificationReport r;
    r.equation = "eq1";
    const Ring& Q = *t.Q();
    for (Elem f : t.P()->elements()) {
        for (Elem g : t.P()->elements()) {
            ++r.checked;
            Elem lhs = t.T.apply(Q.mul(f, g));
            Elem rhs = detail::eq1_rhs(t, f, g);
            if (lhs != rhs) {
                r.outcome = "fail";
                const RingSpec& qs = Q.spec();
                r.witness = Json{{"f", elem_to_json(qs, f)},
                                 {"g", elem_to_json(qs, g)},
                                 {"lhs", elem_to_json(qs, lhs)},
                                 {"rhs", elem_to_json(qs, rhs)}};
                r.replay = detail::triple_replay(t, "eq1", std::nullopt, Json{{"f", elem_to_json(qs, f)}, {"g", elem_to_json(qs, g)}});
                r.elapsed_ms = tm.elapsed_ms();
                return r;
            }
        }
    }
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

// Exhaustive check of (bullet) for one n over the given scope (defaults
// to all of P); (eq2) is the n = 2 case.
inline VerificationReport check_bullet_on(const OperatorTriple& t, unsigned n,
                                          const std::vector<Elem>& scope, const std::string& equation) {
    if (n < 2) throw SpecError(equation + ": n must be >= 2");
    Timer tm;
    VerificationReport r;
    r.equation = equation;
    const Ring& Q = *t.Q();
    for (Elem f : scope) {
        if (!t.P()->contains(f)) throw SpecError(equation + ": scope element outside P");
        ++r.checked;
        Elem lhs = t.T.apply(Q.pow(f, n));
        Elem rhs = detail::bullet_rhs(t, f, n);
        if (lhs != rhs) {
            r.outcome = "fail";
            const RingSpec& qs = Q.spec();
            r.witness = Json{{"f", elem_to_json(qs, f)},
                             {"lhs", elem_to_json(qs, lhs)},
                             {"rhs", elem_to_json(qs, rhs)}};
            r.replay = detail::triple_replay(t, "bullet", n, Json{{"f", elem_to_json(qs, f)}});
            break;
        }
    }
    r.details["n"] = n;
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

inline VerificationReport check_bullet(const OperatorTriple& t, unsigned n) {
    return check_bullet_on(t, n, t.P()->elements(), "bullet");
}

inline VerificationReport check_eq2(const OperatorTriple& t) {
    auto r = check_bullet_on(t, 2, t.P()->elements(), "eq2");
    return r;
}

inline VerificationReport check_bullet_on_subset(const OperatorTriple& t, const std::vector<Elem>& U,
                                                 unsigned n) {
    if (U.empty()) throw SpecError("bullet_subset: U must be nonempty");
    return check_bullet_on(t, n, U, "bullet_subset");
}

// Two-phase first-order check for a lone additive T (B = 0 setting):
// phase 1 is T(f^n) = n f^(n-1) T(f) for all f, phase 2 the derivation
// rule T(fg) = f T(g) + T(f) g for all f, g.
inline VerificationReport check_first_order(const AdditiveMap& T, unsigned n) {
    if (n < 2) throw SpecError("first_order: n must be >= 2");
    Timer tm;
    VerificationReport r;
    r.equation = "first_order";
    const Ring& Q = *T.codomain();
    const Subring& P = *T.domain();
    const RingSpec& qs = Q.spec();

    bool phase1 = true;
    for (Elem f : P.elements()) {
        ++r.checked;
        Elem lhs = T.apply(Q.pow(f, n));
        Elem rhs = Q.scalar_mul(n, Q.mul(Q.pow(f, n - 1), T.apply(f)));
        if (lhs != rhs) {
            phase1 = false;
            if (r.witness.is_null())
                r.witness = Json{{"phase", 1}, {"f", elem_to_json(qs, f)}, {"lhs", elem_to_json(qs, lhs)},
                                 {"rhs", elem_to_json(qs, rhs)}};
            break;
        }
    }
    bool phase2 = true;
    for (Elem f : P.elements()) {
        for (Elem g : P.elements()) {
            ++r.checked;
            Elem lhs = T.apply(Q.mul(f, g));
            Elem rhs = Q.add(Q.mul(f, T.apply(g)), Q.mul(T.apply(f), g));
            if (lhs != rhs) {
                phase2 = false;
                if (r.witness.is_null())
                    r.witness = Json{{"phase", 2}, {"f", elem_to_json(qs, f)}, {"g", elem_to_json(qs, g)},
                                     {"lhs", elem_to_json(qs, lhs)}, {"rhs", elem_to_json(qs, rhs)}};
                break;
            }
        }
        if (!phase2) break;
    }
    r.details["n"] = n;
    r.details["phase1"] = phase1 ? "pass" : "fail";
    r.details["phase2"] = phase2 ? "pass" : "fail";
    r.outcome = phase1 && phase2 ? "pass" : "fail";
    if (r.failed()) {
        Json rep;
        rep["kind"] = "first_order";
        rep["n"] = n;
        rep["rings"] = Json{{"Q", ring_spec_to_json(qs)}, {"P", detail::subring_to_json(P)}};
        rep["T"] = additive_map_to_json(T);
        rep["witness"] = r.witness;
        r.replay = rep;
    }
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

// Derived consequence checker for an (eq1)-satisfying triple. Substituting
// g = f turns (eq1) into (eq2), so the n = 2 power identity is asserted.
// Higher powers are NOT a consequence for abstract bi-additive B: on Z5,
// T(f) = 3f, A(f) = f, B(u,v) = uv satisfies (eq1) yet fails (bullet) at
// n = 3 (3f^3 against 2f^3). The function-space derivation uses B as a
// module-bilinear product and the chain rule for A, structure a general
// triple does not have. Outcomes for n >= 3 are therefore reported as
// observations, never asserted.
inline VerificationReport verify_power_consequences(const OperatorTriple& t, unsigned max_n = 5) {
    if (max_n < 2) throw SpecError("power_consequences: max_n must be >= 2");
    Timer tm;
    VerificationReport r;
    r.equation = "power_consequences";
    VerificationReport eq1 = check_eq1(t);
    r.checked = eq1.checked;
    r.details["eq1"] = eq1.outcome;
    r.details["max_n"] = max_n;
    if (!eq1.passed()) {
        r.details["vacuous"] = true;
        r.elapsed_ms = tm.elapsed_ms();
        return r;
    }
    VerificationReport b2 = check_bullet(t, 2);
    r.checked += b2.checked;
    if (!b2.passed()) {
        r.outcome = "fail";
        r.witness = b2.witness;
        r.witness["n"] = 2;
        r.replay = b2.replay;
        r.elapsed_ms = tm.elapsed_ms();
        return r;
    }
    Json observed = Json::object();
    for (unsigned n = 3; n <= max_n; ++n) {
        VerificationReport b = check_bullet(t, n);
        r.checked += b.checked;
        observed[std::to_string(n)] = b.outcome;
    }
    r.details["observed_bullet"] = observed;
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

// The symmetric n-additive functional attached to a triple:
//   F(f_1..f_n) = T(prod) - sum_i (prod without f_i) T(f_i)
//                 - sum_i B(A(f_i), A(prod without f_i))
// Its trace at f is exactly the (bullet) residual at f.
inline MultiAddMap build_A_n(const OperatorTriple& t, unsigned n,
                             std::uint64_t guard = kDefaultTableGuard) {
    if (n < 2) throw SpecError("build_A_n: n must be >= 2");
    const Ring& Q = *t.Q();
    const SubringPtr& P = t.P();
    return MultiAddMap::from_function(
        n, P, t.Q(),
        [&](const std::vector<std::size_t>& tuple) {
            std::vector<Elem> f(n);
            for (unsigned i = 0; i < n; ++i) f[i] = P->global(tuple[i]);
            Elem prod = Q.one();
            for (unsigned i = 0; i < n; ++i) prod = Q.mul(prod, f[i]);
            Elem acc = t.T.apply(prod);
            for (unsigned i = 0; i < n; ++i) {
                Elem rest = Q.one();
                for (unsigned j = 0; j < n; ++j)
                    if (j != i) rest = Q.mul(rest, f[j]);
                acc = Q.sub(acc, Q.mul(rest, t.T.apply(f[i])));
                acc = Q.sub(acc, t.B.apply(t.A.apply(f[i]), t.A.apply(rest)));
            }
            return acc;
        },
        guard);
}

// Indexable enumeration of all triples (T, A, B) for fixed P, Q, R.
class TripleFamily {
public:
    TripleFamily(SubringPtr P, RingPtr R, std::uint64_t guard = kDefaultEnumerationGuard)
        : P_(P), Q_(P->ring()), R_(std::move(R)),
          tfam_(P, Q_, guard), afam_(P, R_, guard), bfam_(Subring::whole(R_), Q_, guard) {
        count_ = tfam_.count();
        if (count_ > guard / afam_.count()) throw EnumerationRefused(~std::uint64_t(0));
        count_ *= afam_.count();
        if (count_ > guard / bfam_.count()) throw EnumerationRefused(~std::uint64_t(0));
        count_ *= bfam_.count();
        if (count_ > guard) throw EnumerationRefused(count_);
    }

    std::uint64_t count() const { return count_; }

    OperatorTriple at(std::uint64_t idx) const {
        std::uint64_t ib = idx % bfam_.count();
        idx /= bfam_.count();
        std::uint64_t ia = idx % afam_.count();
        std::uint64_t it = idx / afam_.count();
        return OperatorTriple(tfam_.at(it), afam_.at(ia), bfam_.at(ib));
    }

    const SubringPtr& P() const { return P_; }
    const RingPtr& Q() const { return Q_; }
    const RingPtr& R() const { return R_; }

private:
    SubringPtr P_;
    RingPtr Q_, R_;
    AdditiveMapFamily tfam_, afam_;
    SymBiAddFamily bfam_;
    std::uint64_t count_ = 0;
};

struct SweepOptions {
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t guard = kDefaultEnumerationGuard;
    unsigned jobs = 1;
};

namespace detail {

struct SweepTally {
    std::uint64_t survivors = 0;
    std::uint64_t violations = 0;
    std::uint64_t t1_nonzero = 0;
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> first_witness_triple;
    Elem wf = 0, wg = 0;
};

// Filter (bullet for all f, plus A(1)=0 when required), then test (eq1)
// on every pair. No early exit, so tallies merge identically for any
// partition of the index space.
inline void sweep_range(const TripleFamily& fam, unsigned n, bool require_a1_zero,
                        std::uint64_t lo, std::uint64_t hi, SweepTally& tally) {
    const Ring& Q = *fam.Q();
    const Ring& R = *fam.R();
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        OperatorTriple t = fam.at(idx);
        bool survivor = true;
        for (Elem f : fam.P()->elements()) {
            ++tally.checked;
            if (t.T.apply(Q.pow(f, n)) != bullet_rhs(t, f, n)) {
                survivor = false;
                break;
            }
        }
        if (survivor && require_a1_zero && t.A.apply(Q.one()) != R.zero()) survivor = false;
        if (!survivor) continue;
        ++tally.survivors;
        if (t.T.apply(Q.one()) != Q.zero()) ++tally.t1_nonzero;
        for (Elem f : fam.P()->elements())
            for (Elem g : fam.P()->elements()) {
                ++tally.checked;
                if (t.T.apply(Q.mul(f, g)) != eq1_rhs(t, f, g)) {
                    ++tally.violations;
                    if (!tally.first_witness_triple) {
                        tally.first_witness_triple = idx;
                        tally.wf = f;
                        tally.wg = g;
                    }
                }
            }
    }
}

inline SweepTally run_sweep(const TripleFamily& fam, unsigned n, bool require_a1_zero,
                            const std::vector<std::uint64_t>& indices, unsigned jobs) {
    // indices given: sampled mode, sequential
    if (!indices.empty()) {
        SweepTally tally;
        for (std::uint64_t idx : indices) {
            SweepTally one;
            sweep_range(fam, n, require_a1_zero, idx, idx + 1, one);
            tally.survivors += one.survivors;
            tally.violations += one.violations;
            tally.t1_nonzero += one.t1_nonzero;
            tally.checked += one.checked;
            if (!tally.first_witness_triple && one.first_witness_triple) {
                tally.first_witness_triple = one.first_witness_triple;
                tally.wf = one.wf;
                tally.wg = one.wg;
            }
        }
        return tally;
    }

    std::uint64_t total = fam.count();
    if (jobs <= 1 || total < 64) {
        SweepTally tally;
        sweep_range(fam, n, require_a1_zero, 0, total, tally);
        return tally;
    }
    unsigned workers = jobs;
    std::vector<SweepTally> parts(workers);
    std::vector<std::thread> threads;
    std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = w * chunk, hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&fam, n, require_a1_zero, lo, hi, &parts, w] {
            sweep_range(fam, n, require_a1_zero, lo, hi, parts[w]);
        });
    }
    for (auto& th : threads) th.join();
    SweepTally tally;
    for (const auto& p : parts) {
        tally.survivors += p.survivors;
        tally.violations += p.violations;
        tally.t1_nonzero += p.t1_nonzero;
        tally.checked += p.checked;
        if (!tally.first_witness_triple && p.first_witness_triple) {
            tally.first_witness_triple = p.first_witness_triple;
            tally.wf = p.wf;
            tally.wg = p.wg;
        }
    }
    return tally;
}

inline std::vector<std::uint64_t> sampled_indices(std::uint64_t total, std::uint64_t seed,
                                                  std::uint64_t trials) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out;
    out.reserve(trials);
    for (std::uint64_t i = 0; i < trials; ++i) out.push_back(rng() % total);
    return out;
}

} // namespace detail

// Full sweep of the lemma: every triple satisfying (bullet) for all f
// (and A(1) = 0 when n > 2) must satisfy (eq1) everywhere, provided
// char(Q) > n!. Below that characteristic the run is labeled
// hypothesis-violating: observations are reported, nothing is asserted.
inline VerificationReport verify_lemma2(SubringPtr P, RingPtr R, unsigned n,
                                        const SweepOptions& opts = {}) {
    if (n < 2) throw SpecError("lemma2: n must be >= 2");
    Timer tm;
    VerificationReport r;
    r.equation = "lemma2";
    RingPtr Q = P->ring();
    TripleFamily fam(P, R, opts.guard);

    std::uint64_t nfact = factorial_u64(n);
    bool hypothesis_ok = Q->characteristic() > nfact;

    std::vector<std::uint64_t> indices;
    if (opts.sampled) {
        r.mode = "sampled";
        r.seed = opts.seed;
        r.trials = opts.trials;
        indices = detail::sampled_indices(fam.count(), opts.seed, opts.trials);
    }
    detail::SweepTally tally = detail::run_sweep(fam, n, n > 2, indices, opts.jobs);

    r.checked = tally.checked;
    r.details["triples"] = opts.sampled ? static_cast<std::uint64_t>(indices.size()) : fam.count();
    r.details["survivors"] = tally.survivors;
    r.details["violations"] = tally.violations;
    r.details["characteristic"] = Q->characteristic();
    r.details["n"] = n;
    r.details["n_factorial"] = nfact;
    if (n > 2) r.details["t1_nonzero_survivors"] = tally.t1_nonzero;

    if (tally.first_witness_triple) {
        OperatorTriple t = fam.at(*tally.first_witness_triple);
        const RingSpec& qs = Q->spec();
        r.witness = Json{{"triple_index", *tally.first_witness_triple},
                         {"f", elem_to_json(qs, tally.wf)},
                         {"g", elem_to_json(qs, tally.wg)}};
        r.replay = detail::triple_replay(t, "eq1", std::nullopt,
                                         Json{{"f", elem_to_json(qs, tally.wf)}, {"g", elem_to_json(qs, tally.wg)}});
    }

    if (!hypothesis_ok) {
        r.outcome = "refused";
        r.details["label"] = "hypothesis-violating";
        r.details["reason"] = "characteristic <= n!";
    } else {
        r.outcome = tally.violations == 0 ? "pass" : "fail";
    }
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

inline VerificationReport verify_lemma2(RingPtr ring, unsigned n, const SweepOptions& opts = {}) {
    RingPtr R = ring;
    return verify_lemma2(Subring::whole(std::move(ring)), std::move(R), n, opts);
}

// Search for a triple that satisfies (bullet) everywhere yet violates
// (eq1) somewhere. Hypotheses are enforced unless listed in `relaxed`;
// an empty search result is certified, never asserted away.
inline VerificationReport search_violations(SubringPtr P, RingPtr R, unsigned n,
                                            const std::set<std::string>& relaxed = {},
                                            const SweepOptions& opts = {}) {
    if (n < 2) throw SpecError("search: n must be >= 2");
    for (const auto& h : relaxed)
        if (h != "characteristic" && h != "unit_annihilation")
            throw SpecError("search: unknown hypothesis '" + h + "' (characteristic, unit_annihilation)");
    Timer tm;
    VerificationReport r;
    r.equation = "search";
    RingPtr Q = P->ring();
    std::uint64_t nfact = factorial_u64(n);

    if (Q->characteristic() <= nfact && !relaxed.count("characteristic")) {
        r.outcome = "refused";
        r.details["reason"] = "characteristic <= n!; relax 'characteristic' to search anyway";
        r.details["characteristic"] = Q->characteristic();
        r.elapsed_ms = tm.elapsed_ms();
        return r;
    }

    TripleFamily fam(P, R, opts.guard);
    bool require_a1_zero = n > 2 && !relaxed.count("unit_annihilation");

    std::vector<std::uint64_t> indices;
    if (opts.sampled) {
        r.mode = "sampled";
        r.seed = opts.seed;
        r.trials = opts.trials;
        indices = detail::sampled_indices(fam.count(), opts.seed, opts.trials);
    }
    detail::SweepTally tally = detail::run_sweep(fam, n, require_a1_zero, indices, opts.jobs);

    r.checked = tally.checked;
    r.details["triples"] = opts.sampled ? static_cast<std::uint64_t>(indices.size()) : fam.count();
    r.details["candidates"] = tally.survivors;
    r.details["violations"] = tally.violations;
    r.details["n"] = n;
    Json relaxed_json = Json::array();
    for (const auto& h : relaxed) relaxed_json.push_back(h);
    r.details["relaxed"] = relaxed_json;

    if (tally.first_witness_triple) {
        r.outcome = "fail"; // counterexample found
        OperatorTriple t = fam.at(*tally.first_witness_triple);
        const RingSpec& qs = Q->spec();
        r.witness = Json{{"triple_index", *tally.first_witness_triple},
                         {"f", elem_to_json(qs, tally.wf)},
                         {"g", elem_to_json(qs, tally.wg)}};
        r.replay = detail::triple_replay(t, "eq1", std::nullopt,
                                         Json{{"f", elem_to_json(qs, tally.wf)}, {"g", elem_to_json(qs, tally.wg)}});
    } else {
        r.outcome = "pass"; // certified empty over the searched family
        r.details["certified_empty"] = !opts.sampled;
    }
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

inline VerificationReport search_violations(RingPtr ring, unsigned n,
                                            const std::set<std::string>& relaxed = {},
                                            const SweepOptions& opts = {}) {
    RingPtr R = ring;
    return search_violations(Subring::whole(std::move(ring)), std::move(R), n, relaxed, opts);
}

} // namespace oplab
