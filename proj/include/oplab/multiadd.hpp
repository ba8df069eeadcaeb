#pragma once

// Additive, symmetric bi-additive and n-additive maps between finite ring
// additive groups. Maps are stored by generator images (enumeration
// collapses to a product of per-generator counts) and carry a dense value
// table for fast exhaustive checking. Difference operators, iterated
// differences and polarization recover a symmetric map from its trace.

#include "oplab/errors.hpp"
#include "oplab/ring.hpp"
#include "oplab/subring.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace oplab {

inline constexpr std::uint64_t kDefaultEnumerationGuard = 10'000'000;
inline constexpr std::uint64_t kDefaultTableGuard = 1u << 24;

inline std::uint64_t factorial_u64(unsigned n) {
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

// A plain function from a subring's elements to a codomain ring, stored
// as a dense value vector over local indices.
struct RingFunc {
    SubringPtr domain;
    RingPtr codomain;
    std::vector<Elem> values;

    Elem operator()(Elem global) const { return values[domain->local(global)]; }
    bool is_zero() const {
        for (Elem v : values)
            if (v != codomain->zero()) return false;
        return true;
    }
};

class AdditiveMap {
public:
    AdditiveMap(SubringPtr domain, RingPtr codomain, std::vector<Elem> gen_images)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(gen_images)) {
        const auto& orders = domain_->generator_orders();
        if (images_.size() != orders.size())
            throw SpecError("additive map: need one image per domain generator");
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (codomain_->scalar_mul(orders[i], images_[i]) != codomain_->zero())
                throw SpecError("additive map: image order does not divide generator order");
        table_.resize(domain_->size());
        for (std::size_t loc = 0; loc < domain_->size(); ++loc) {
            const auto& alpha = domain_->coords(loc);
            Elem acc = codomain_->zero();
            for (std::size_t i = 0; i < images_.size(); ++i)
                acc = codomain_->add(acc, codomain_->scalar_mul(alpha[i], images_[i]));
            table_[loc] = acc;
        }
    }

    static AdditiveMap zero(SubringPtr domain, RingPtr codomain) {
        std::vector<Elem> imgs(domain->generators().size(), codomain->zero());
        return AdditiveMap(std::move(domain), std::move(codomain), std::move(imgs));
    }

    Elem apply(Elem global) const { return table_[domain_->local(global)]; }
    Elem apply_local(std::size_t loc) const { return table_[loc]; }

    const SubringPtr& domain() const { return domain_; }
    const RingPtr& codomain() const { return codomain_; }
    const std::vector<Elem>& gen_images() const { return images_; }
    const std::vector<Elem>& table() const { return table_; }

    RingFunc as_function() const { return RingFunc{domain_, codomain_, table_}; }

    bool operator==(const AdditiveMap& o) const {
        return domain_->same_as(*o.domain_) && codomain_->spec() == o.codomain_->spec() && table_ == o.table_;
    }

private:
    SubringPtr domain_;
    RingPtr codomain_;
    std::vector<Elem> images_;
    std::vector<Elem> table_;
};

// Indexable enumeration of every additive map domain -> codomain, in
// lexicographic order of the generator image tuple.
class AdditiveMapFamily {
public:
    AdditiveMapFamily(SubringPtr domain, RingPtr codomain, std::uint64_t guard = kDefaultEnumerationGuard)
        : domain_(std::move(domain)), codomain_(std::move(codomain)) {
        for (std::uint64_t d : domain_->generator_orders()) {
            std::vector<Elem> valid;
            for (Elem v = 0; v < codomain_->size(); ++v)
                if (codomain_->scalar_mul(d, v) == codomain_->zero()) valid.push_back(v);
            choices_.push_back(std::move(valid));
        }
        count_ = 1;
        for (const auto& c : choices_) {
            if (count_ > guard / c.size() + 1) throw EnumerationRefused(saturating_count());
            count_ *= c.size();
        }
        if (count_ > guard) throw EnumerationRefused(count_);
    }

    std::uint64_t count() const { return count_; }

    AdditiveMap at(std::uint64_t index) const {
        std::vector<Elem> imgs(choices_.size());
        for (std::size_t i = choices_.size(); i-- > 0;) {
            imgs[i] = choices_[i][index % choices_[i].size()];
            index /= choices_[i].size();
        }
        return AdditiveMap(domain_, codomain_, std::move(imgs));
    }

private:
    std::uint64_t saturating_count() const {
        long double est = 1;
        for (const auto& c : choices_) est *= static_cast<long double>(c.size());
        return est > 1e18L ? ~std::uint64_t(0) : static_cast<std::uint64_t>(est);
    }

    SubringPtr domain_;
    RingPtr codomain_;
    std::vector<std::vector<Elem>> choices_;
    std::uint64_t count_ = 0;
};

// every additive map between whole rings, as an indexable family
inline AdditiveMapFamily enumerate_additive(RingPtr domain, RingPtr codomain,
                                            std::uint64_t guard = kDefaultEnumerationGuard) {
    return AdditiveMapFamily(Subring::whole(std::move(domain)), std::move(codomain), guard);
}

class SymBiAddMap {
public:
    // pair_images holds B(g_i, g_j) for i <= j, row-major upper triangle
    SymBiAddMap(SubringPtr domain, RingPtr codomain, std::vector<Elem> pair_images)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(pair_images)) {
        const auto& orders = domain_->generator_orders();
        std::size_t m = orders.size();
        if (images_.size() != m * (m + 1) / 2)
            throw SpecError("bi-additive map: need one image per unordered generator pair");
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                Elem img = images_[pair_index(i, j, m)];
                if (codomain_->scalar_mul(orders[i], img) != codomain_->zero() ||
                    codomain_->scalar_mul(orders[j], img) != codomain_->zero())
                    throw SpecError("bi-additive map: image order incompatible with generator orders");
            }
        std::size_t s = domain_->size();
        table_.resize(s * s);
        for (std::size_t u = 0; u < s; ++u) {
            const auto& au = domain_->coords(u);
            for (std::size_t v = 0; v < s; ++v) {
                const auto& av = domain_->coords(v);
                Elem acc = codomain_->zero();
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = i; j < m; ++j) {
                        std::uint64_t coef = i == j ? std::uint64_t(au[i]) * av[i]
                                                    : std::uint64_t(au[i]) * av[j] + std::uint64_t(au[j]) * av[i];
                        acc = codomain_->add(acc, codomain_->scalar_mul(coef, images_[pair_index(i, j, m)]));
                    }
                table_[u * s + v] = acc;
            }
        }
    }

    static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t m) {
        return i * m - i * (i - 1) / 2 + (j - i);
    }

    Elem apply(Elem u_global, Elem v_global) const {
        return table_[domain_->local(u_global) * domain_->size() + domain_->local(v_global)];
    }
    Elem apply_local(std::size_t u, std::size_t v) const { return table_[u * domain_->size() + v]; }

    const SubringPtr& domain() const { return domain_; }
    const RingPtr& codomain() const { return codomain_; }
    const std::vector<Elem>& pair_images() const { return images_; }
    const std::vector<Elem>& table() const { return table_; }

    RingFunc trace() const {
        RingFunc f{domain_, codomain_, {}};
        f.values.resize(domain_->size());
        for (std::size_t u = 0; u < domain_->size(); ++u) f.values[u] = apply_local(u, u);
        return f;
    }

    bool operator==(const SymBiAddMap& o) const {
        return domain_->same_as(*o.domain_) && codomain_->spec() == o.codomain_->spec() && table_ == o.table_;
    }

private:
    SubringPtr domain_;
    RingPtr codomain_;
    std::vector<Elem> images_;
    std::vector<Elem> table_;
};

class SymBiAddFamily {
public:
    SymBiAddFamily(SubringPtr domain, RingPtr codomain, std::uint64_t guard = kDefaultEnumerationGuard)
        : domain_(std::move(domain)), codomain_(std::move(codomain)) {
        const auto& orders = domain_->generator_orders();
        std::size_t m = orders.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                std::vector<Elem> valid;
                for (Elem v = 0; v < codomain_->size(); ++v)
                    if (codomain_->scalar_mul(orders[i], v) == codomain_->zero() &&
                        codomain_->scalar_mul(orders[j], v) == codomain_->zero())
                        valid.push_back(v);
                choices_.push_back(std::move(valid));
            }
        count_ = 1;
        for (const auto& c : choices_) {
            if (count_ > guard / c.size() + 1) throw EnumerationRefused(~std::uint64_t(0));
            count_ *= c.size();
        }
        if (count_ > guard) throw EnumerationRefused(count_);
    }

    std::uint64_t count() const { return count_; }

    SymBiAddMap at(std::uint64_t index) const {
        std::vector<Elem> imgs(choices_.size());
        for (std::size_t i = choices_.size(); i-- > 0;) {
            imgs[i] = choices_[i][index % choices_[i].size()];
            index /= choices_[i].size();
        }
        return SymBiAddMap(domain_, codomain_, std::move(imgs));
    }

private:
    SubringPtr domain_;
    RingPtr codomain_;
    std::vector<std::vector<Elem>> choices_;
    std::uint64_t count_ = 0;
};

inline SymBiAddFamily enumerate_biadd_symmetric(RingPtr domain, RingPtr codomain,
                                                std::uint64_t guard = kDefaultEnumerationGuard) {
    return SymBiAddFamily(Subring::whole(std::move(domain)), std::move(codomain), guard);
}

// Arity-n map stored as a dense table over local index tuples.
class MultiAddMap {
public:
    MultiAddMap(unsigned arity, SubringPtr domain, RingPtr codomain, std::vector<Elem> dense)
        : arity_(arity), domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(dense)) {
        std::uint64_t want = 1;
        for (unsigned i = 0; i < arity_; ++i) want *= domain_->size();
        if (table_.size() != want) throw SpecError("multi-additive map: dense table size mismatch");
    }

    template <class Fn>
    static MultiAddMap from_function(unsigned arity, SubringPtr domain, RingPtr codomain, Fn&& f,
                                     std::uint64_t guard = kDefaultTableGuard) {
        std::uint64_t total = 1;
        for (unsigned i = 0; i < arity; ++i) {
            if (total > guard / domain->size() + 1) throw EnumerationRefused(~std::uint64_t(0));
            total *= domain->size();
        }
        if (total > guard) throw EnumerationRefused(total);
        std::vector<Elem> dense(total);
        std::vector<std::size_t> tuple(arity, 0);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t i = arity; i-- > 0;) {
                tuple[i] = rest % domain->size();
                rest /= domain->size();
            }
            dense[idx] = f(tuple);
        }
        return MultiAddMap(arity, std::move(domain), std::move(codomain), std::move(dense));
    }

    unsigned arity() const { return arity_; }
    const SubringPtr& domain() const { return domain_; }
    const RingPtr& codomain() const { return codomain_; }
    const std::vector<Elem>& table() const { return table_; }

    Elem eval_locals(const std::vector<std::size_t>& tuple) const {
        std::uint64_t idx = 0;
        for (std::size_t t : tuple) idx = idx * domain_->size() + t;
        return table_[idx];
    }

    RingFunc trace() const {
        RingFunc f{domain_, codomain_, {}};
        f.values.resize(domain_->size());
        for (std::size_t u = 0; u < domain_->size(); ++u)
            f.values[u] = eval_locals(std::vector<std::size_t>(arity_, u));
        return f;
    }

    bool operator==(const MultiAddMap& o) const {
        return arity_ == o.arity_ && domain_->same_as(*o.domain_) &&
               codomain_->spec() == o.codomain_->spec() && table_ == o.table_;
    }

private:
    unsigned arity_;
    SubringPtr domain_;
    RingPtr codomain_;
    std::vector<Elem> table_;
};

struct MultiAddCheck {
    bool additive = true;
    bool symmetric = true;
    // first violation, if any: coordinate, tuple of locals, increment local
    std::optional<std::size_t> bad_coord;
    std::vector<std::size_t> bad_tuple;
    std::size_t bad_increment = 0;
    bool ok(bool need_symmetry) const { return additive && (!need_symmetry || symmetric); }
};

// Exhaustive per-coordinate additivity and (optionally) symmetry check.
inline MultiAddCheck verify_multiadditive(const MultiAddMap& m, bool check_symmetry = true,
                                          std::uint64_t guard = 500'000'000) {
    MultiAddCheck out;
    const auto& D = *m.domain();
    const Ring& Q = *m.codomain();
    std::size_t s = D.size();
    unsigned n = m.arity();
    std::uint64_t tuples = 1;
    for (unsigned i = 0; i < n; ++i) tuples *= s;
    if (tuples > guard / (s * n)) throw EnumerationRefused(~std::uint64_t(0));

    std::vector<std::size_t> tuple(n, 0), shifted(n, 0), unit(n, 0);
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
        std::uint64_t rest = idx;
        for (std::size_t i = n; i-- > 0;) {
            tuple[i] = rest % s;
            rest /= s;
        }
        for (unsigned k = 0; k < n && out.additive; ++k) {
            for (std::size_t y = 0; y < s; ++y) {
                shifted = tuple;
                Elem xk = D.global(tuple[k]);
                Elem yy = D.global(y);
                shifted[k] = D.local(D.ring()->add(xk, yy));
                unit = tuple;
                unit[k] = y;
                Elem lhs = m.eval_locals(shifted);
                Elem rhs = Q.add(m.eval_locals(tuple), m.eval_locals(unit));
                if (lhs != rhs) {
                    out.additive = false;
                    out.bad_coord = k;
                    out.bad_tuple = tuple;
                    out.bad_increment = y;
                    break;
                }
            }
        }
        if (!out.additive) break;
        if (check_symmetry && out.symmetric) {
            for (unsigned k = 0; k + 1 < n; ++k) {
                shifted = tuple;
                std::swap(shifted[k], shifted[k + 1]);
                if (m.eval_locals(tuple) != m.eval_locals(shifted)) {
                    out.symmetric = false;
                    out.bad_coord = k;
                    out.bad_tuple = tuple;
                    break;
                }
            }
        }
    }
    return out;
}

inline MultiAddMap to_multiadd(const SymBiAddMap& b) {
    std::size_t s = b.domain()->size();
    std::vector<Elem> dense(s * s);
    for (std::size_t u = 0; u < s; ++u)
        for (std::size_t v = 0; v < s; ++v) dense[u * s + v] = b.apply_local(u, v);
    return MultiAddMap(2, b.domain(), b.codomain(), std::move(dense));
}

// (difference f at y)(x) = f(x+y) - f(x)
inline RingFunc difference(const RingFunc& f, Elem y) {
    if (!f.domain->contains(y)) throw SpecError("difference: increment outside the domain");
    const Ring& R = *f.domain->ring();
    const Ring& Q = *f.codomain;
    RingFunc out{f.domain, f.codomain, std::vector<Elem>(f.values.size())};
    for (std::size_t loc = 0; loc < f.values.size(); ++loc) {
        Elem x = f.domain->global(loc);
        Elem shifted = f.values[f.domain->local(R.add(x, y))];
        out.values[loc] = Q.sub(shifted, f.values[loc]);
    }
    return out;
}

inline RingFunc iterated_difference(const RingFunc& f, const std::vector<Elem>& ys) {
    RingFunc cur = f;
    for (Elem y : ys) cur = difference(cur, y);
    return cur;
}

struct PolarizeResult {
    MultiAddMap scaled;                 // (y_1..y_n) -> n! * A(y_1..y_n)
    std::optional<MultiAddMap> unscaled; // A itself, when division by n! is possible
    bool division_available = false;
};

// Recover the symmetric n-additive map from its trace. Preconditions are
// enforced: every (n+1)-fold iterated difference of the trace must vanish
// identically, and the recovered map's diagonal must reproduce n! times
// the input. Violations throw NotMonomialTrace with the witness.
inline PolarizeResult polarize(const RingFunc& trace, unsigned arity,
                               std::uint64_t guard = 1'000'000'000) {
    if (arity < 1) throw SpecError("polarize: arity must be >= 1");
    const SubringPtr& D = trace.domain;
    const Ring& Q = *trace.codomain;
    std::size_t s = D->size();

    std::uint64_t cost = s;
    for (unsigned i = 0; i < arity + 1; ++i) {
        if (cost > guard / s) throw EnumerationRefused(~std::uint64_t(0));
        cost *= s;
    }
    if (cost > guard) throw EnumerationRefused(cost);

    // vanishing of all (arity+1)-fold differences, shared-prefix recursion
    std::vector<Elem> increments;
    std::function<void(const RingFunc&, unsigned)> sweep = [&](const RingFunc& cur, unsigned level) {
        if (level == arity + 1) {
            for (std::size_t loc = 0; loc < s; ++loc)
                if (cur.values[loc] != Q.zero()) throw NotMonomialTrace(increments, D->global(loc));
            return;
        }
        for (std::size_t y = 0; y < s; ++y) {
            increments.push_back(D->global(y));
            sweep(difference(cur, D->global(y)), level + 1);
            increments.pop_back();
        }
    };
    sweep(trace, 0);

    // scaled tensor: (y_1..y_n) -> (iterated difference of trace)(0)
    std::uint64_t total = 1;
    for (unsigned i = 0; i < arity; ++i) total *= s;
    std::vector<Elem> dense(total);
    std::size_t zero_loc = D->local(D->ring()->zero());
    std::function<void(const RingFunc&, unsigned, std::uint64_t)> build = [&](const RingFunc& cur,
                                                                              unsigned level, std::uint64_t base) {
        if (level == arity) {
            dense[base] = cur.values[zero_loc];
            return;
        }
        for (std::size_t y = 0; y < s; ++y)
            build(difference(cur, D->global(y)), level + 1, base * s + y);
    };
    build(trace, 0, 0);
    MultiAddMap scaled(arity, D, trace.codomain, std::move(dense));

    // diagonal consistency: trace(scaled) == n! * input
    std::uint64_t nf = factorial_u64(arity);
    RingFunc diag = scaled.trace();
    for (std::size_t loc = 0; loc < s; ++loc)
        if (diag.values[loc] != Q.scalar_mul(nf, trace.values[loc]))
            throw NotMonomialTrace(std::vector<Elem>(arity, D->global(loc)), D->ring()->zero());

    PolarizeResult out{std::move(scaled), std::nullopt, false};
    if (Q.is_mul_injective(nf)) {
        // invert x -> n! x (a bijection on a finite group when injective)
        std::vector<Elem> inverse(Q.size());
        for (Elem x = 0; x < Q.size(); ++x) inverse[Q.scalar_mul(nf, x)] = x;
        std::vector<Elem> udense(out.scaled.table().size());
        for (std::size_t i = 0; i < udense.size(); ++i) udense[i] = inverse[out.scaled.table()[i]];
        out.unscaled = MultiAddMap(arity, D, trace.codomain, std::move(udense));
        out.division_available = true;
    }
    return out;
}

} // namespace oplab
