#pragma once

// Small finite commutative rings with identity: residue rings Z_n, finite
// products, and univariate quotients F_p[x]/(m). Elements are identified
// with their rank 0..size-1 in the canonical enumeration (lexicographic
// on the reduced payload), so exhaustive loops and reports are
// reproducible. Ring handles are immutable; every operation is pure.

#include "oplab/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace oplab {

using Elem = std::uint32_t;

struct RingSpec {
    enum class Kind { Modular, Product, Quotient };

    Kind kind = Kind::Modular;
    std::uint64_t n = 0;                  // modular
    std::vector<RingSpec> factors;        // product
    std::uint64_t p = 0;                  // quotient base prime
    std::vector<std::uint32_t> modulus;   // quotient modulus, constant term first, monic

    static RingSpec modular(std::uint64_t n) {
        RingSpec s;
        s.kind = Kind::Modular;
        s.n = n;
        return s;
    }
    static RingSpec product(std::vector<RingSpec> factors) {
        RingSpec s;
        s.kind = Kind::Product;
        s.factors = std::move(factors);
        return s;
    }
    static RingSpec quotient(std::uint64_t p, std::vector<std::uint32_t> modulus) {
        RingSpec s;
        s.kind = Kind::Quotient;
        s.p = p;
        s.modulus = std::move(modulus);
        return s;
    }

    void validate() const {
        switch (kind) {
        case Kind::Modular:
            if (n < 2) throw SpecError("ring spec: modular n must be >= 2, got " + std::to_string(n));
            break;
        case Kind::Product:
            if (factors.empty()) throw SpecError("ring spec: product needs at least one factor");
            for (const auto& f : factors) f.validate();
            break;
        case Kind::Quotient: {
            if (!is_prime(p)) throw SpecError("ring spec: quotient base " + std::to_string(p) + " is not prime");
            if (modulus.size() < 2)
                throw SpecError("ring spec: quotient modulus must have degree >= 1");
            if (modulus.back() != 1) throw SpecError("ring spec: quotient modulus must be monic");
            for (auto c : modulus)
                if (c >= p) throw SpecError("ring spec: quotient modulus coefficient not reduced mod p");
            break;
        }
        }
    }

    std::uint64_t element_count() const {
        switch (kind) {
        case Kind::Modular:
            return n;
        case Kind::Product: {
            std::uint64_t c = 1;
            for (const auto& f : factors) {
                std::uint64_t fc = f.element_count();
                if (c > (std::uint64_t(1) << 40) / fc) throw SpecError("ring spec: product too large");
                c *= fc;
            }
            return c;
        }
        case Kind::Quotient: {
            std::uint64_t c = 1;
            for (std::size_t i = 0; i + 1 < modulus.size(); ++i) {
                if (c > (std::uint64_t(1) << 40) / p) throw SpecError("ring spec: quotient too large");
                c *= p;
            }
            return c;
        }
        }
        return 0;
    }

    bool operator==(const RingSpec& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
        case Kind::Modular: return n == o.n;
        case Kind::Product: return factors == o.factors;
        case Kind::Quotient: return p == o.p && modulus == o.modulus;
        }
        return false;
    }

    std::string to_string() const {
        switch (kind) {
        case Kind::Modular: return "zn:" + std::to_string(n);
        case Kind::Product: {
            std::string s = "prod(";
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) s += ",";
                s += factors[i].to_string();
            }
            return s + ")";
        }
        case Kind::Quotient: {
            std::string s = "quot:" + std::to_string(p) + ":[";
            for (std::size_t i = 0; i < modulus.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(modulus[i]);
            }
            return s + "]";
        }
        }
        return {};
    }

    static bool is_prime(std::uint64_t v) {
        if (v < 2) return false;
        for (std::uint64_t d = 2; d * d <= v; ++d)
            if (v % d == 0) return false;
        return true;
    }
};

class Ring {
public:
    static constexpr std::uint64_t kMaxElements = 1u << 20;
    static constexpr std::size_t kTableThreshold = 512;

    static std::shared_ptr<const Ring> make(RingSpec spec) {
        return std::shared_ptr<const Ring>(new Ring(std::move(spec)));
    }

    const RingSpec& spec() const { return spec_; }
    std::size_t size() const { return size_; }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }

    Elem add(Elem a, Elem b) const {
        if (add_table_.empty()) return add_impl(spec_, a, b);
        return add_table_[std::size_t(a) * size_ + b];
    }
    Elem mul(Elem a, Elem b) const {
        if (mul_table_.empty()) return mul_impl(spec_, a, b);
        return mul_table_[std::size_t(a) * size_ + b];
    }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    // k-fold additive multiple; ord(x) divides ord(1), so k reduces mod char
    Elem scalar_mul(std::uint64_t k, Elem x) const {
        k %= characteristic_;
        Elem acc = zero_;
        Elem base = x;
        while (k) {
            if (k & 1u) acc = add(acc, base);
            if (k >>= 1u) base = add(base, base);
        }
        return acc;
    }

    Elem pow(Elem x, std::uint64_t e) const {
        Elem acc = one_;
        Elem base = x;
        while (e) {
            if (e & 1u) acc = mul(acc, base);
            if (e >>= 1u) base = mul(base, base);
        }
        return acc;
    }

    // additive order of 1
    std::uint64_t characteristic() const { return characteristic_; }

    std::uint64_t add_order(Elem x) const {
        std::uint64_t k = 1;
        Elem acc = x;
        while (acc != zero_) {
            acc = add(acc, x);
            ++k;
        }
        return k;
    }

    // x -> k*x injective on the additive group (trivial kernel)
    bool is_mul_injective(std::uint64_t k) const {
        for (Elem x = 0; x < size_; ++x)
            if (x != zero_ && scalar_mul(k, x) == zero_) return false;
        return true;
    }

    // canonical generators of the additive group as a direct sum of
    // cyclic subgroups, with their orders
    const std::vector<Elem>& add_generators() const { return gens_; }
    const std::vector<std::uint64_t>& add_generator_orders() const { return gen_orders_; }

    // --- canonical rank <-> payload digit conversions (used by I/O) ---

    static void split_product(const RingSpec& s, std::uint64_t idx, std::vector<std::uint64_t>& parts) {
        parts.resize(s.factors.size());
        for (std::size_t i = s.factors.size(); i-- > 0;) {
            std::uint64_t c = s.factors[i].element_count();
            parts[i] = idx % c;
            idx /= c;
        }
    }

    static std::uint64_t join_product(const RingSpec& s, const std::vector<std::uint64_t>& parts) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < s.factors.size(); ++i)
            idx = idx * s.factors[i].element_count() + parts[i];
        return idx;
    }

    static void split_quotient(const RingSpec& s, std::uint64_t idx, std::vector<std::uint64_t>& coeffs) {
        std::size_t deg = s.modulus.size() - 1;
        coeffs.resize(deg);
        for (std::size_t i = deg; i-- > 0;) {
            coeffs[i] = idx % s.p; // least significant digit = highest power coefficient
            idx /= s.p;
        }
    }

    static std::uint64_t join_quotient(const RingSpec& s, const std::vector<std::uint64_t>& coeffs) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) idx = idx * s.p + coeffs[i];
        return idx;
    }

private:
    explicit Ring(RingSpec spec) : spec_(std::move(spec)) {
        spec_.validate();
        std::uint64_t count = spec_.element_count();
        if (count > kMaxElements)
            throw SpecError("ring spec: " + std::to_string(count) + " elements exceeds the supported size");
        size_ = static_cast<std::size_t>(count);

        zero_ = encode_scalar(spec_, 0);
        one_ = encode_scalar(spec_, 1);

        if (size_ <= kTableThreshold) {
            add_table_.resize(size_ * size_);
            mul_table_.resize(size_ * size_);
            for (Elem a = 0; a < size_; ++a)
                for (Elem b = 0; b < size_; ++b) {
                    add_table_[std::size_t(a) * size_ + b] = add_impl(spec_, a, b);
                    mul_table_[std::size_t(a) * size_ + b] = mul_impl(spec_, a, b);
                }
        }
        neg_.resize(size_);
        for (Elem a = 0; a < size_; ++a) neg_[a] = neg_impl(spec_, a);

        characteristic_ = 1;
        Elem acc = one_;
        while (acc != zero_) {
            acc = add(acc, one_);
            ++characteristic_;
        }

        collect_generators(spec_, [this](const RingSpec& sub, std::uint64_t local, std::uint64_t order) {
            gens_.push_back(static_cast<Elem>(local));
            gen_orders_.push_back(order);
            (void)sub;
        });
    }

    // --- structural arithmetic on canonical ranks ---

    static std::uint64_t encode_scalar(const RingSpec& s, std::uint64_t v) {
        switch (s.kind) {
        case RingSpec::Kind::Modular:
            return v % s.n;
        case RingSpec::Kind::Product: {
            std::uint64_t idx = 0;
            for (const auto& f : s.factors) idx = idx * f.element_count() + encode_scalar(f, v);
            return idx;
        }
        case RingSpec::Kind::Quotient: {
            // constant polynomial v mod p; constant coefficient is the
            // most significant digit of the rank
            std::size_t deg = s.modulus.size() - 1;
            std::uint64_t idx = v % s.p;
            for (std::size_t i = 1; i < deg; ++i) idx *= s.p;
            return deg == 0 ? 0 : idx;
        }
        }
        return 0;
    }

    static std::uint64_t add_impl(const RingSpec& s, std::uint64_t a, std::uint64_t b) {
        switch (s.kind) {
        case RingSpec::Kind::Modular:
            return (a + b) % s.n;
        case RingSpec::Kind::Product: {
            std::vector<std::uint64_t> pa, pb;
            split_product(s, a, pa);
            split_product(s, b, pb);
            std::uint64_t idx = 0;
            for (std::size_t i = 0; i < s.factors.size(); ++i)
                idx = idx * s.factors[i].element_count() + add_impl(s.factors[i], pa[i], pb[i]);
            return idx;
        }
        case RingSpec::Kind::Quotient: {
            std::vector<std::uint64_t> ca, cb;
            split_quotient(s, a, ca);
            split_quotient(s, b, cb);
            for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % s.p;
            return join_quotient(s, ca);
        }
        }
        return 0;
    }

    static std::uint64_t neg_impl(const RingSpec& s, std::uint64_t a) {
        switch (s.kind) {
        case RingSpec::Kind::Modular:
            return a == 0 ? 0 : s.n - a;
        case RingSpec::Kind::Product: {
            std::vector<std::uint64_t> pa;
            split_product(s, a, pa);
            std::uint64_t idx = 0;
            for (std::size_t i = 0; i < s.factors.size(); ++i)
                idx = idx * s.factors[i].element_count() + neg_impl(s.factors[i], pa[i]);
            return idx;
        }
        case RingSpec::Kind::Quotient: {
            std::vector<std::uint64_t> ca;
            split_quotient(s, a, ca);
            for (auto& c : ca) c = c == 0 ? 0 : s.p - c;
            return join_quotient(s, ca);
        }
        }
        return 0;
    }

    static std::uint64_t mul_impl(const RingSpec& s, std::uint64_t a, std::uint64_t b) {
        switch (s.kind) {
        case RingSpec::Kind::Modular:
            return (a * b) % s.n;
        case RingSpec::Kind::Product: {
            std::vector<std::uint64_t> pa, pb;
            split_product(s, a, pa);
            split_product(s, b, pb);
            std::uint64_t idx = 0;
            for (std::size_t i = 0; i < s.factors.size(); ++i)
                idx = idx * s.factors[i].element_count() + mul_impl(s.factors[i], pa[i], pb[i]);
            return idx;
        }
        case RingSpec::Kind::Quotient: {
            std::vector<std::uint64_t> ca, cb;
            split_quotient(s, a, ca);
            split_quotient(s, b, cb);
            std::size_t deg = s.modulus.size() - 1;
            std::vector<std::uint64_t> prod(2 * deg - 1, 0);
            for (std::size_t i = 0; i < deg; ++i)
                for (std::size_t j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % s.p;
            // reduce by the monic modulus
            for (std::size_t i = prod.size(); i-- > deg;) {
                std::uint64_t c = prod[i];
                if (c == 0) continue;
                prod[i] = 0;
                for (std::size_t j = 0; j < deg; ++j) {
                    std::uint64_t sub = (c * s.modulus[j]) % s.p;
                    prod[i - deg + j] = (prod[i - deg + j] + s.p - sub) % s.p;
                }
            }
            prod.resize(deg);
            return join_quotient(s, prod);
        }
        }
        return 0;
    }

    // canonical additive generators: 1 for Z_n; 1, x, ..., x^(deg-1) for a
    // quotient; embedded factor generators for a product
    template <class Fn>
    static void collect_generators(const RingSpec& s, Fn&& emit) {
        collect_generators_scaled(s, 1, emit);
    }

    template <class Fn>
    static void collect_generators_scaled(const RingSpec& s, std::uint64_t stride, Fn&& emit) {
        switch (s.kind) {
        case RingSpec::Kind::Modular:
            emit(s, stride * 1, s.n);
            break;
        case RingSpec::Kind::Product: {
            // rank = sum over factors of part_i * suffix_count_i
            std::vector<std::uint64_t> suffix(s.factors.size(), 1);
            for (std::size_t i = s.factors.size() - 1; i-- > 0;)
                suffix[i] = suffix[i + 1] * s.factors[i + 1].element_count();
            for (std::size_t i = 0; i < s.factors.size(); ++i)
                collect_generators_scaled(s.factors[i], stride * suffix[i], emit);
            break;
        }
        case RingSpec::Kind::Quotient: {
            // generators 1, x, ..., x^(deg-1); the coefficient of x^k
            // carries rank weight p^(deg-1-k)
            std::size_t deg = s.modulus.size() - 1;
            std::uint64_t w = 1;
            for (std::size_t k = 1; k < deg; ++k) w *= s.p;
            for (std::size_t k = 0; k < deg; ++k) {
                emit(s, stride * w, s.p);
                w /= s.p;
            }
            break;
        }
        }
    }

    RingSpec spec_;
    std::size_t size_ = 0;
    Elem zero_ = 0, one_ = 0;
    std::uint64_t characteristic_ = 1;
    std::vector<Elem> add_table_, mul_table_, neg_;
    std::vector<Elem> gens_;
    std::vector<std::uint64_t> gen_orders_;
};

using RingPtr = std::shared_ptr<const Ring>;

} // namespace oplab
