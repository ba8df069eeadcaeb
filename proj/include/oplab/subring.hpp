#pragma once

// A subring view: an enumerated subset of a ring closed under the ring
// operations and containing 0 and 1, together with a direct-sum basis of
// its additive group and per-element coordinates in that basis. The whole
// ring uses the canonical structural generators; generated subrings get a
// basis from max-order-first greedy peeling, with the direct-sum property
// verified exhaustively afterwards.

#include "oplab/errors.hpp"
#include "oplab/ring.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

namespace oplab {

class Subring;
using SubringPtr = std::shared_ptr<const Subring>;

class Subring {
public:
    static SubringPtr whole(RingPtr ring) {
        auto s = std::shared_ptr<Subring>(new Subring(std::move(ring)));
        s->elements_.resize(s->ring_->size());
        for (Elem e = 0; e < s->ring_->size(); ++e) s->elements_[e] = e;
        s->gens_ = s->ring_->add_generators();
        s->orders_ = s->ring_->add_generator_orders();
        s->finish();
        return s;
    }

    // smallest subring containing the seeds (and always 0, 1)
    static SubringPtr generated(RingPtr ring, const std::vector<Elem>& seed) {
        auto s = std::shared_ptr<Subring>(new Subring(std::move(ring)));
        s->elements_ = closure(*s->ring_, seed);
        s->pick_basis();
        s->finish();
        return s;
    }

    // the prime subring, generated by 1
    static SubringPtr prime(RingPtr ring) { return generated(std::move(ring), {}); }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Elem>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool is_whole() const { return elements_.size() == ring_->size(); }

    bool contains(Elem e) const { return local_of_[e] >= 0; }
    std::size_t local(Elem e) const {
        if (local_of_[e] < 0) throw SpecError("subring: element not in subring");
        return static_cast<std::size_t>(local_of_[e]);
    }
    Elem global(std::size_t local) const { return elements_[local]; }

    const std::vector<Elem>& generators() const { return gens_; }
    const std::vector<std::uint64_t>& generator_orders() const { return orders_; }

    // coordinates of element #local in the basis; coords(local)[i] in [0, order_i)
    const std::vector<std::uint32_t>& coords(std::size_t local) const { return coords_[local]; }

    bool same_as(const Subring& o) const {
        return ring_->spec() == o.ring_->spec() && elements_ == o.elements_;
    }

private:
    explicit Subring(RingPtr ring) : ring_(std::move(ring)) {}

    static std::vector<Elem> closure(const Ring& ring, const std::vector<Elem>& seed) {
        std::set<Elem> have{ring.zero(), ring.one()};
        for (Elem e : seed) {
            if (e >= ring.size()) throw SpecError("subring: seed element out of range");
            have.insert(e);
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Elem> cur(have.begin(), have.end());
            for (Elem a : cur) {
                if (have.insert(ring.neg(a)).second) grew = true;
                for (Elem b : cur) {
                    if (have.insert(ring.add(a, b)).second) grew = true;
                    if (have.insert(ring.mul(a, b)).second) grew = true;
                }
            }
        }
        return {have.begin(), have.end()};
    }

    void pick_basis() {
        const Ring& R = *ring_;
        std::vector<Elem> cand;
        for (Elem e : elements_)
            if (e != R.zero()) cand.push_back(e);
        std::stable_sort(cand.begin(), cand.end(), [&](Elem a, Elem b) {
            auto oa = R.add_order(a), ob = R.add_order(b);
            if (oa != ob) return oa > ob;
            return a < b;
        });
        std::set<Elem> span{R.zero()};
        for (Elem g : cand) {
            if (span.size() == elements_.size()) break;
            std::uint64_t ord = R.add_order(g);
            bool clean = true;
            Elem acc = g;
            for (std::uint64_t k = 1; k < ord && clean; ++k) {
                if (span.count(acc)) clean = false;
                acc = R.add(acc, g);
            }
            if (!clean) continue;
            gens_.push_back(g);
            orders_.push_back(ord);
            std::set<Elem> next;
            for (Elem s : span) {
                Elem t = s;
                for (std::uint64_t k = 0; k < ord; ++k) {
                    next.insert(t);
                    t = R.add(t, g);
                }
            }
            span = std::move(next);
        }
        if (span.size() != elements_.size())
            throw std::logic_error("subring: additive basis extraction failed");
    }

    void finish() {
        const Ring& R = *ring_;
        local_of_.assign(R.size(), -1);
        for (std::size_t i = 0; i < elements_.size(); ++i) local_of_[elements_[i]] = static_cast<long>(i);

        // exhaustively tabulate coordinates; also verifies the basis is a
        // direct decomposition (every element reached exactly once)
        std::uint64_t total = 1;
        for (auto d : orders_) total *= d;
        if (total != elements_.size())
            throw std::logic_error("subring: basis orders do not match subgroup size");
        coords_.assign(elements_.size(), {});
        std::vector<bool> seen(elements_.size(), false);
        std::vector<std::uint32_t> alpha(gens_.size(), 0);
        for (std::uint64_t t = 0; t < total; ++t) {
            std::uint64_t rest = t;
            Elem val = R.zero();
            for (std::size_t i = gens_.size(); i-- > 0;) {
                alpha[i] = static_cast<std::uint32_t>(rest % orders_[i]);
                rest /= orders_[i];
                val = R.add(val, R.scalar_mul(alpha[i], gens_[i]));
            }
            if (local_of_[val] < 0) throw std::logic_error("subring: basis leaves the subgroup");
            std::size_t loc = static_cast<std::size_t>(local_of_[val]);
            if (seen[loc]) throw std::logic_error("subring: basis is not direct");
            seen[loc] = true;
            coords_[loc] = alpha;
        }
    }

    RingPtr ring_;
    std::vector<Elem> elements_;
    std::vector<long> local_of_;
    std::vector<Elem> gens_;
    std::vector<std::uint64_t> orders_;
    std::vector<std::vector<std::uint32_t>> coords_;
};

} // namespace oplab
