#pragma once

// JSON encodings of the domain objects. Element payloads follow the
// canonical reduced form: an integer for residue rings, a constant-first
// coefficient list for quotients, a list of factor payloads for products.
// Polynomial coefficients are exact fraction strings; serialization
// round-trips bit-exactly.

#include "oplab/multiadd.hpp"
#include "oplab/operators.hpp"
#include "oplab/polynomial.hpp"
#include "oplab/ring.hpp"
#include "oplab/sqrt2.hpp"
#include "oplab/subring.hpp"

#include "json.hpp"

#include <string>

namespace oplab {

using Json = nlohmann::json;

// --- ring specs ---

inline Json ring_spec_to_json(const RingSpec& s) {
    Json j;
    switch (s.kind) {
    case RingSpec::Kind::Modular:
        j["kind"] = "modular";
        j["n"] = s.n;
        break;
    case RingSpec::Kind::Product: {
        j["kind"] = "product";
        j["factors"] = Json::array();
        for (const auto& f : s.factors) j["factors"].push_back(ring_spec_to_json(f));
        break;
    }
    case RingSpec::Kind::Quotient:
        j["kind"] = "quotient";
        j["p"] = s.p;
        j["modulus"] = s.modulus;
        break;
    }
    return j;
}

inline RingSpec ring_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SpecError("ring spec json: expected an object with a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "modular") {
        if (!j.contains("n") || !j["n"].is_number_unsigned())
            throw SpecError("ring spec json: modular needs a nonnegative integer \"n\"");
        return RingSpec::modular(j["n"].get<std::uint64_t>());
    }
    if (kind == "product") {
        if (!j.contains("factors") || !j["factors"].is_array())
            throw SpecError("ring spec json: product needs a \"factors\" array");
        std::vector<RingSpec> fs;
        for (const auto& f : j["factors"]) fs.push_back(ring_spec_from_json(f));
        return RingSpec::product(std::move(fs));
    }
    if (kind == "quotient") {
        if (!j.contains("p") || !j["p"].is_number_unsigned() || !j.contains("modulus") || !j["modulus"].is_array())
            throw SpecError("ring spec json: quotient needs \"p\" and a \"modulus\" coefficient array");
        std::vector<std::uint32_t> mod;
        for (const auto& c : j["modulus"]) {
            if (!c.is_number_unsigned()) throw SpecError("ring spec json: modulus coefficients must be nonnegative");
            mod.push_back(c.get<std::uint32_t>());
        }
        return RingSpec::quotient(j["p"].get<std::uint64_t>(), std::move(mod));
    }
    throw SpecError("ring spec json: unknown kind '" + kind + "'");
}

// --- element payloads ---

inline Json elem_to_json(const RingSpec& s, std::uint64_t rank) {
    switch (s.kind) {
    case RingSpec::Kind::Modular:
        return rank;
    case RingSpec::Kind::Product: {
        std::vector<std::uint64_t> parts;
        Ring::split_product(s, rank, parts);
        Json arr = Json::array();
        for (std::size_t i = 0; i < parts.size(); ++i) arr.push_back(elem_to_json(s.factors[i], parts[i]));
        return arr;
    }
    case RingSpec::Kind::Quotient: {
        std::vector<std::uint64_t> coeffs;
        Ring::split_quotient(s, rank, coeffs);
        return coeffs;
    }
    }
    return {};
}

inline std::uint64_t elem_from_json(const RingSpec& s, const Json& j) {
    switch (s.kind) {
    case RingSpec::Kind::Modular: {
        if (!j.is_number_unsigned()) throw SpecError("element json: residue payload must be a nonnegative integer");
        std::uint64_t v = j.get<std::uint64_t>();
        if (v >= s.n) throw SpecError("element json: residue out of range");
        return v;
    }
    case RingSpec::Kind::Product: {
        if (!j.is_array() || j.size() != s.factors.size())
            throw SpecError("element json: product payload must list one payload per factor");
        std::vector<std::uint64_t> parts;
        for (std::size_t i = 0; i < s.factors.size(); ++i) parts.push_back(elem_from_json(s.factors[i], j[i]));
        return Ring::join_product(s, parts);
    }
    case RingSpec::Kind::Quotient: {
        std::size_t deg = s.modulus.size() - 1;
        if (!j.is_array() || j.size() != deg)
            throw SpecError("element json: quotient payload must list deg coefficients, constant first");
        std::vector<std::uint64_t> coeffs;
        for (const auto& c : j) {
            if (!c.is_number_unsigned() || c.get<std::uint64_t>() >= s.p)
                throw SpecError("element json: quotient coefficient not reduced");
            coeffs.push_back(c.get<std::uint64_t>());
        }
        return Ring::join_quotient(s, coeffs);
    }
    }
    return 0;
}

// --- maps ---

inline Json additive_map_to_json(const AdditiveMap& f) {
    Json imgs = Json::array();
    for (Elem img : f.gen_images()) imgs.push_back(elem_to_json(f.codomain()->spec(), img));
    return Json{{"generator_images", imgs}};
}

inline AdditiveMap additive_map_from_json(SubringPtr domain, RingPtr codomain, const Json& j) {
    if (!j.is_object() || !j.contains("generator_images") || !j["generator_images"].is_array())
        throw SpecError("additive map json: need a \"generator_images\" array");
    std::vector<Elem> imgs;
    for (const auto& e : j["generator_images"])
        imgs.push_back(static_cast<Elem>(elem_from_json(codomain->spec(), e)));
    return AdditiveMap(std::move(domain), std::move(codomain), std::move(imgs));
}

inline Json biadd_map_to_json(const SymBiAddMap& b) {
    Json imgs = Json::array();
    for (Elem img : b.pair_images()) imgs.push_back(elem_to_json(b.codomain()->spec(), img));
    return Json{{"pair_images", imgs}};
}

inline SymBiAddMap biadd_map_from_json(SubringPtr domain, RingPtr codomain, const Json& j) {
    if (!j.is_object() || !j.contains("pair_images") || !j["pair_images"].is_array())
        throw SpecError("bi-additive map json: need a \"pair_images\" array");
    std::vector<Elem> imgs;
    for (const auto& e : j["pair_images"])
        imgs.push_back(static_cast<Elem>(elem_from_json(codomain->spec(), e)));
    return SymBiAddMap(std::move(domain), std::move(codomain), std::move(imgs));
}

inline Json ring_func_to_json(const RingFunc& f) {
    Json vals = Json::array();
    for (Elem v : f.values) vals.push_back(elem_to_json(f.codomain->spec(), v));
    return Json{{"values", vals}};
}

inline RingFunc ring_func_from_json(SubringPtr domain, RingPtr codomain, const Json& j) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_array() ||
        j["values"].size() != domain->size())
        throw SpecError("trace json: need a \"values\" array with one payload per domain element");
    RingFunc f{std::move(domain), codomain, {}};
    for (const auto& v : j["values"]) f.values.push_back(static_cast<Elem>(elem_from_json(codomain->spec(), v)));
    return f;
}

// --- polynomials and operator specs ---

template <ScalarField K>
Json polynomial_to_json(const Polynomial<K>& p) {
    Json arr = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exps"] = e;
        t["coef"] = c.to_string();
        arr.push_back(t);
    }
    return arr;
}

inline PolyQ polynomial_from_json(const Json& j, std::size_t num_vars) {
    if (!j.is_array()) throw SpecError("polynomial json: expected an array of terms");
    PolyQ p(num_vars);
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("exps") || !t.contains("coef"))
            throw SpecError("polynomial json: each term needs \"exps\" and \"coef\"");
        Exponents e;
        for (const auto& x : t["exps"]) {
            if (!x.is_number_unsigned()) throw SpecError("polynomial json: exponents must be nonnegative");
            e.push_back(x.get<std::uint32_t>());
        }
        if (e.size() != num_vars) throw SpecError("polynomial json: exponent arity mismatch");
        if (!t["coef"].is_string()) throw SpecError("polynomial json: coefficients are fraction strings");
        p.add_term(e, Rat::from_string(t["coef"].get<std::string>()));
    }
    return p;
}

template <ScalarField K>
Json vector_field_to_json(const VectorFieldT<K>& v) {
    Json arr = Json::array();
    for (const auto& p : v) arr.push_back(polynomial_to_json(p));
    return arr;
}

inline VectorField vector_field_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array() || j.size() != dim)
        throw SpecError("vector field json: expected one polynomial per dimension");
    VectorField v;
    for (const auto& p : j) v.push_back(polynomial_from_json(p, dim));
    return v;
}

inline Json operator_spec_to_json(const OperatorSpec& s) {
    return Json{{"k", s.k()}, {"b", vector_field_to_json(s.b())}, {"c", vector_field_to_json(s.c())}};
}

inline OperatorSpec operator_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("b") || !j.contains("c"))
        throw SpecError("operator spec json: need \"k\", \"b\", \"c\"");
    if (!j["k"].is_number_unsigned()) throw SpecError("operator spec json: k must be a nonnegative integer");
    if (!j["b"].is_array() || j["b"].empty()) throw SpecError("operator spec json: b must be a nonempty array");
    std::size_t dim = j["b"].size();
    VectorField b = vector_field_from_json(j["b"], dim);
    VectorField c = vector_field_from_json(j["c"], dim);
    return OperatorSpec(std::move(b), std::move(c), j["k"].get<unsigned>());
}

} // namespace oplab
