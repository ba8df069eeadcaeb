#pragma once

// The oplab command line: every verification as a reproducible batch run
// with machine-readable reports. Exit codes: 0 pass / fits / certified
// empty, 1 fail / counterexample / not-of-form, 2 refusal or hypothesis
// violation, 3 malformed input.

#include "oplab/json_io.hpp"
#include "oplab/parse.hpp"
#include "oplab/piecewise.hpp"
#include "oplab/recovery.hpp"
#include "oplab/relations.hpp"
#include "oplab/report.hpp"
#include "oplab/rng.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace oplab {
namespace cli {

// --- shared helpers ---

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open file '" + path + "'");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw SpecError("file '" + path + "' is not valid JSON");
    return j;
}

// zn:N, f2x2, quot:p:c0,c1,...,1, prod:a+b, or a path to a JSON spec
inline RingSpec parse_ring_arg(const std::string& s) {
    if (s.rfind("zn:", 0) == 0) {
        try {
            return RingSpec::modular(std::stoull(s.substr(3)));
        } catch (const std::exception&) {
            throw SpecError("ring '" + s + "': expected zn:<integer>");
        }
    }
    if (s == "f2x2") return RingSpec::quotient(2, {0, 0, 1});
    if (s.rfind("quot:", 0) == 0) {
        std::string rest = s.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw SpecError("ring '" + s + "': expected quot:p:c0,c1,...");
        try {
            std::uint64_t p = std::stoull(rest.substr(0, colon));
            std::vector<std::uint32_t> mod;
            std::stringstream ss(rest.substr(colon + 1));
            std::string part;
            while (std::getline(ss, part, ',')) mod.push_back(static_cast<std::uint32_t>(std::stoul(part)));
            return RingSpec::quotient(p, std::move(mod));
        } catch (const SpecError&) {
            throw;
        } catch (const std::exception&) {
            throw SpecError("ring '" + s + "': expected quot:p:c0,c1,...");
        }
    }
    if (s.rfind("prod:", 0) == 0) {
        std::vector<RingSpec> factors;
        std::stringstream ss(s.substr(5));
        std::string part;
        while (std::getline(ss, part, '+')) factors.push_back(parse_ring_arg(part));
        return RingSpec::product(std::move(factors));
    }
    return ring_spec_from_json(read_json_file(s));
}

inline std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(Rat::from_string(part));
    if (out.empty()) throw SpecError("expected a comma-separated rational list, got '" + s + "'");
    return out;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

inline std::string render_report(const Json& j, const std::string& format) {
    if (format == "json") return j.dump(2) + "\n";
    if (format == "csv") {
        std::string header, row;
        bool first = true;
        for (const auto& key : {"schema", "equation", "mode", "seed", "trials", "outcome", "checked",
                                "elapsed_ms", "witness", "details"}) {
            if (!first) {
                header += ",";
                row += ",";
            }
            first = false;
            header += key;
            if (j.contains(key)) {
                const Json& v = j.at(key);
                row += v.is_string() ? csv_quote(v.get<std::string>()) : csv_quote(v.dump());
            }
        }
        return header + "\n" + row + "\n";
    }
    if (format == "human") {
        std::string out;
        out += "equation: " + j.value("equation", std::string("?")) + "\n";
        out += "outcome:  " + j.value("outcome", std::string("?")) + "\n";
        out += "mode:     " + j.value("mode", std::string("?")) + "\n";
        out += "checked:  " + std::to_string(j.value("checked", std::uint64_t(0))) + "\n";
        if (j.contains("witness")) out += "witness:  " + j["witness"].dump() + "\n";
        if (j.contains("details")) out += "details:  " + j["details"].dump() + "\n";
        return out;
    }
    throw SpecError("unknown format '" + format + "' (json, csv, human)");
}

inline void emit_report(const Json& j, const std::string& format, const std::string& out_path,
                        std::ostream& out) {
    std::string text = render_report(j, format);
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw SpecError("cannot write to '" + out_path + "'");
    f << text;
}

inline int exit_code_for(const VerificationReport& r) {
    if (r.passed()) return 0;
    if (r.failed()) return 1;
    return 2;
}

struct CommonOpts {
    std::string format = "json";
    std::string out_path;
    std::string mode = "exhaustive";
    std::uint64_t seed = 0;
    std::uint64_t trials = 100;
    std::uint64_t guard = kDefaultEnumerationGuard;
    unsigned jobs = 0;

    SweepOptions sweep() const {
        SweepOptions o;
        o.sampled = mode == "sampled";
        o.seed = seed;
        o.trials = trials;
        o.guard = guard;
        o.jobs = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
        return o;
    }
};

inline void add_common(CLI::App* cmd, CommonOpts& c, bool with_sweep = true) {
    cmd->add_option("--format", c.format, "Report format: json, csv, human")->capture_default_str();
    cmd->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
    if (with_sweep) {
        cmd->add_option("--mode", c.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
        cmd->add_option("--seed", c.seed, "Seed for sampled mode and random suites");
        cmd->add_option("--trials", c.trials, "Trials in sampled mode / random suites")->capture_default_str();
        cmd->add_option("--guard", c.guard, "Enumeration size guard")->capture_default_str();
        cmd->add_option("--jobs", c.jobs, "Worker threads (0 = hardware parallelism)");
    }
}

inline SubringPtr make_subring(const RingPtr& ring, const std::string& which) {
    if (which == "whole") return Subring::whole(ring);
    if (which == "prime") return Subring::prime(ring);
    throw SpecError("unknown subring selector '" + which + "' (whole, prime)");
}

// --- the leibniz suite ---

struct LeibnizArgs {
    std::string check;
    std::string op_file;
    std::string f_expr;
    std::string h_list;
    std::string rationals;
    std::size_t dim = 0;
    unsigned n = 0;
    std::string box_radius = "1";
};

inline OperatorSpec spec_for_trial(const std::optional<OperatorSpec>& fixed, Rng& rng, std::size_t dim) {
    if (fixed) return *fixed;
    return rng.spec(dim, 3);
}

inline VerificationReport run_leibniz(const LeibnizArgs& a, const CommonOpts& c) {
    Timer tm;
    VerificationReport r;
    std::optional<OperatorSpec> fixed;
    if (!a.op_file.empty()) fixed = operator_spec_from_json(read_json_file(a.op_file));

    std::size_t dim = a.dim;
    if (dim == 0 && fixed) dim = fixed->dim();
    if (dim == 0 && !a.h_list.empty()) dim = parse_rat_list(a.h_list).size();
    if (dim == 0 && !a.f_expr.empty()) dim = polynomial_dimension_hint(a.f_expr);
    if (dim == 0) dim = 2;
    if (fixed && fixed->dim() != dim) throw SpecError("--dim contradicts the operator spec dimension");

    Rng rng(c.seed);
    r.seed = c.seed;
    auto fail_with = [&](const Json& witness) {
        r.outcome = "fail";
        r.witness = witness;
    };

    if (a.check == "second-order") {
        r.equation = "second_order_leibniz";
        r.mode = "sampled";
        r.trials = c.trials;
        for (std::uint64_t t = 0; t < c.trials && !r.failed(); ++t) {
            OperatorSpec spec = spec_for_trial(fixed, rng, dim);
            PolyQ f = a.f_expr.empty() ? rng.polynomial(dim, 4) : parse_polynomial(a.f_expr, dim);
            PolyQ g = rng.polynomial(dim, 4);
            ++r.checked;
            PolyQ res = second_order_leibniz_residual(spec, f, g);
            if (!res.is_zero())
                fail_with(Json{{"f", polynomial_to_json(f)}, {"g", polynomial_to_json(g)},
                               {"residual", polynomial_to_json(res)}, {"spec", operator_spec_to_json(spec)}});
        }
    } else if (a.check == "laplacian") {
        r.equation = "laplacian_identity";
        r.mode = "sampled";
        r.trials = c.trials;
        for (std::uint64_t t = 0; t < c.trials && !r.failed(); ++t) {
            PolyQ f = rng.polynomial(dim, 4);
            PolyQ g = rng.polynomial(dim, 4);
            ++r.checked;
            PolyQ res = laplacian_identity_residual(f, g);
            if (!res.is_zero())
                fail_with(Json{{"f", polynomial_to_json(f)}, {"g", polynomial_to_json(g)},
                               {"residual", polynomial_to_json(res)}});
        }
    } else if (a.check == "eq6") {
        r.equation = "eq6";
        r.mode = "sampled";
        r.trials = c.trials;
        unsigned lo = a.n ? a.n : 2, hi = a.n ? a.n : 5;
        r.details["n"] = a.n ? Json(a.n) : Json("2..5");
        for (std::uint64_t t = 0; t < c.trials && !r.failed(); ++t) {
            OperatorSpec spec = spec_for_trial(fixed, rng, dim);
            PolyQ f = a.f_expr.empty() ? rng.polynomial(dim, 4) : parse_polynomial(a.f_expr, dim);
            for (unsigned n = lo; n <= hi && !r.failed(); ++n) {
                ++r.checked;
                PolyQ res = power_identity_residual(spec, f, n);
                if (!res.is_zero())
                    fail_with(Json{{"f", polynomial_to_json(f)}, {"n", n},
                                   {"residual", polynomial_to_json(res)}, {"spec", operator_spec_to_json(spec)}});
            }
        }
    } else if (a.check == "eq7") {
        r.equation = "eq7";
        if (!a.f_expr.empty()) {
            PolyQ f = parse_polynomial(a.f_expr, dim);
            if (f.is_zero()) throw SpecError("eq7: f must be nonzero");
            OperatorSpec spec = fixed ? *fixed : rng.spec(dim, 3);
            ++r.checked;
            RatFuncQ res = reciprocal_identity_residual(spec, f);
            if (!res.is_zero())
                fail_with(Json{{"f", polynomial_to_json(f)}, {"residual", res.to_string()}});
        } else {
            r.mode = "sampled";
            r.trials = c.trials;
            for (std::uint64_t t = 0; t < c.trials && !r.failed(); ++t) {
                OperatorSpec spec = spec_for_trial(fixed, rng, dim);
                PolyQ f = rng.polynomial(dim, 3);
                f = f - PolyQ::constant(f.constant_term(), dim) + PolyQ::constant(rng.nonzero_rat(), dim);
                ++r.checked;
                RatFuncQ res = reciprocal_identity_residual(spec, f);
                if (!res.is_zero()) fail_with(Json{{"f", polynomial_to_json(f)}, {"residual", res.to_string()}});
            }
        }
    } else if (a.check == "proof-chain") {
        r.equation = "eq7_proof_chain";
        Domain dom(Box::cube(std::vector<Rat>(dim, Rat(0)), Rat::from_string(a.box_radius)));
        std::vector<Rat> rationals;
        if (!a.rationals.empty()) rationals = parse_rat_list(a.rationals);
        auto run_one = [&](const OperatorSpec& spec, const PolyQ& f) {
            auto chain = check_eq7_proof_chain(spec, f, rationals, &dom);
            r.checked += 4 + chain.scaled_residuals.size();
            if (!chain.all_zero()) {
                Json rats = Json::array();
                for (const auto& rat : chain.rationals) rats.push_back(rat.to_string());
                fail_with(Json{{"f", polynomial_to_json(f)}, {"rationals", rats}});
            }
        };
        if (!a.f_expr.empty()) {
            OperatorSpec spec = fixed ? *fixed : rng.spec(dim, 3);
            run_one(spec, parse_polynomial(a.f_expr, dim));
        } else {
            r.mode = "sampled";
            r.trials = c.trials;
            for (std::uint64_t t = 0; t < c.trials && !r.failed(); ++t)
                run_one(spec_for_trial(fixed, rng, dim), rng.nonconstant_polynomial(dim, 3));
        }
    } else if (a.check == "difference") {
        r.equation = "difference_example";
        std::vector<Rat> h = a.h_list.empty() ? std::vector<Rat>(dim, Rat(1)) : parse_rat_list(a.h_list);
        if (h.size() != dim) throw SpecError("--h length must match the dimension");
        r.mode = "sampled";
        r.trials = c.trials;
        Json hj = Json::array();
        for (const auto& hi : h) hj.push_back(hi.to_string());
        r.details["h"] = hj;
        for (std::uint64_t t = 0; t < c.trials && !r.failed(); ++t) {
            PolyQ f = a.f_expr.empty() ? rng.polynomial(dim, 4) : parse_polynomial(a.f_expr, dim);
            PolyQ g = rng.polynomial(dim, 4);
            ++r.checked;
            PolyQ res = difference_example_residual(h, f, g);
            if (!res.is_zero())
                fail_with(Json{{"f", polynomial_to_json(f)}, {"g", polynomial_to_json(g)},
                               {"residual", polynomial_to_json(res)}});
        }
    } else {
        throw SpecError("unknown --check '" + a.check +
                        "' (second-order, laplacian, eq6, eq7, proof-chain, difference)");
    }
    r.details["dim"] = dim;
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

// --- recovery ---

template <ScalarField K>
VerificationReport run_classify(const OperatorOracle<K>& oracle, const ClassifyOptions& opts,
                                const Json& oracle_json) {
    Timer tm;
    VerificationReport r;
    r.equation = "recover";
    r.mode = "sampled";
    r.seed = opts.seed;
    r.trials = opts.trials;
    FitResult<K> fit = classify(oracle, opts);
    r.checked = opts.trials;
    r.details["scalar"] = scalar_traits<K>::name;
    r.details["oracle"] = oracle_json;
    r.details["max_probe_degree"] = opts.max_probe_degree;
    if (fit.fits_form()) {
        r.outcome = "pass";
        Json prods = Json::array();
        for (const auto& row : fit.fits->products) {
            Json jrow = Json::array();
            for (const auto& p : row) jrow.push_back(polynomial_to_json(p));
            prods.push_back(jrow);
        }
        r.details["fit"] = Json{{"b", vector_field_to_json(fit.fits->b)},
                                {"c", vector_field_to_json(fit.fits->c)},
                                {"c_products", prods}};
    } else {
        r.outcome = "fail";
        r.witness = Json{{"channel", fit.rejection->channel},
                         {"probe", polynomial_to_json(fit.rejection->probe)},
                         {"residual", polynomial_to_json(fit.rejection->residual)},
                         {"probe_degree", fit.rejection->probe.total_degree()}};
        r.replay = Json{{"kind", "recover"},
                        {"oracle", oracle_json},
                        {"max_probe_degree", opts.max_probe_degree},
                        {"trials", opts.trials},
                        {"seed", opts.seed},
                        {"probe", polynomial_to_json(fit.rejection->probe)},
                        {"channel", fit.rejection->channel}};
    }
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

inline VerificationReport run_recover_from_json(const Json& oracle_json, const ClassifyOptions& opts) {
    if (!oracle_json.is_object() || !oracle_json.contains("kind"))
        throw SpecError("oracle json: expected an object with \"kind\"");
    std::string kind = oracle_json["kind"].get<std::string>();
    if (kind == "canonical") {
        if (!oracle_json.contains("spec")) throw SpecError("canonical oracle json needs \"spec\"");
        return run_classify(canonical_oracle(operator_spec_from_json(oracle_json["spec"])), opts, oracle_json);
    }
    if (kind == "difference") {
        if (!oracle_json.contains("h") || !oracle_json["h"].is_array())
            throw SpecError("difference oracle json needs an \"h\" array");
        std::vector<Rat> h;
        for (const auto& v : oracle_json["h"])
            h.push_back(v.is_string() ? Rat::from_string(v.get<std::string>()) : Rat(v.get<long>()));
        return run_classify(difference_oracle(h), opts, oracle_json);
    }
    if (kind == "zero") {
        std::size_t dim = oracle_json.value("dim", std::size_t(1));
        return run_classify(zero_oracle(dim), opts, oracle_json);
    }
    throw SpecError("unknown oracle kind '" + kind + "' (canonical, difference, zero)");
}

// --- polarize ---

inline VerificationReport run_polarize(const RingSpec& ring_spec, const Json& trace_json, unsigned arity,
                                       const std::optional<RingSpec>& codomain_spec, std::uint64_t guard) {
    Timer tm;
    VerificationReport r;
    r.equation = "polarize";
    RingPtr ring = Ring::make(ring_spec);
    RingPtr codomain = codomain_spec ? Ring::make(*codomain_spec) : ring;
    auto domain = Subring::whole(ring);
    RingFunc trace = ring_func_from_json(domain, codomain, trace_json);
    r.details["arity"] = arity;
    try {
        auto res = polarize(trace, arity, guard);
        r.outcome = "pass";
        r.checked = res.scaled.table().size();
        Json scaled = Json::array();
        for (Elem v : res.scaled.table()) scaled.push_back(elem_to_json(codomain->spec(), v));
        r.details["scaled_table"] = scaled;
        r.details["division_available"] = res.division_available;
        if (res.unscaled) {
            Json unscaled = Json::array();
            for (Elem v : res.unscaled->table()) unscaled.push_back(elem_to_json(codomain->spec(), v));
            r.details["unscaled_table"] = unscaled;
        }
    } catch (const NotMonomialTrace& e) {
        r.outcome = "fail";
        Json incr = Json::array();
        for (Elem y : e.increments) incr.push_back(elem_to_json(ring->spec(), y));
        r.witness = Json{{"increments", incr}, {"base_point", elem_to_json(ring->spec(), e.base_point)}};
        r.replay = Json{{"kind", "polarize"},
                        {"ring", ring_spec_to_json(ring->spec())},
                        {"codomain", ring_spec_to_json(codomain->spec())},
                        {"trace", trace_json},
                        {"arity", arity},
                        {"witness", r.witness}};
    }
    r.elapsed_ms = tm.elapsed_ms();
    return r;
}

// --- replay ---

inline SubringPtr subring_from_replay(const RingPtr& ring, const Json& pj) {
    if (pj.is_string() && pj.get<std::string>() == "whole") return Subring::whole(ring);
    if (!pj.is_array()) throw SpecError("replay: P must be \"whole\" or an element list");
    std::vector<Elem> elems;
    for (const auto& e : pj) elems.push_back(static_cast<Elem>(elem_from_json(ring->spec(), e)));
    return Subring::generated(ring, elems);
}

inline bool replay_reproduces(const Json& replay) {
    std::string kind = replay.value("kind", std::string());
    if (kind == "triple_equation") {
        RingPtr Q = Ring::make(ring_spec_from_json(replay["rings"]["Q"]));
        RingPtr R = Ring::make(ring_spec_from_json(replay["rings"]["R"]));
        SubringPtr P = subring_from_replay(Q, replay["rings"]["P"]);
        OperatorTriple t(additive_map_from_json(P, Q, replay["T"]),
                         additive_map_from_json(P, R, replay["A"]),
                         biadd_map_from_json(Subring::whole(R), Q, replay["B"]));
        std::string eq = replay["equation"].get<std::string>();
        Elem f = static_cast<Elem>(elem_from_json(Q->spec(), replay["witness"]["f"]));
        if (eq == "eq1") {
            Elem g = static_cast<Elem>(elem_from_json(Q->spec(), replay["witness"]["g"]));
            return t.T.apply(Q->mul(f, g)) != detail::eq1_rhs(t, f, g);
        }
        unsigned n = eq == "eq2" ? 2 : replay.value("n", 2u);
        return t.T.apply(Q->pow(f, n)) != detail::bullet_rhs(t, f, n);
    }
    if (kind == "first_order") {
        RingPtr Q = Ring::make(ring_spec_from_json(replay["rings"]["Q"]));
        SubringPtr P = subring_from_replay(Q, replay["rings"]["P"]);
        AdditiveMap T = additive_map_from_json(P, Q, replay["T"]);
        unsigned n = replay.value("n", 2u);
        const Json& w = replay["witness"];
        Elem f = static_cast<Elem>(elem_from_json(Q->spec(), w["f"]));
        if (w.value("phase", 1) == 1)
            return T.apply(Q->pow(f, n)) != Q->scalar_mul(n, Q->mul(Q->pow(f, n - 1), T.apply(f)));
        Elem g = static_cast<Elem>(elem_from_json(Q->spec(), w["g"]));
        return T.apply(Q->mul(f, g)) != Q->add(Q->mul(f, T.apply(g)), Q->mul(T.apply(f), g));
    }
    if (kind == "recover") {
        ClassifyOptions opts;
        opts.max_probe_degree = replay.value("max_probe_degree", 3u);
        opts.trials = replay.value("trials", std::uint64_t(100));
        opts.seed = replay.value("seed", std::uint64_t(0));
        VerificationReport rerun = run_recover_from_json(replay["oracle"], opts);
        return rerun.failed() && rerun.witness["probe"] == replay["probe"] &&
               rerun.witness["channel"] == replay["channel"];
    }
    if (kind == "polarize") {
        RingPtr ring = Ring::make(ring_spec_from_json(replay["ring"]));
        RingPtr codomain = Ring::make(ring_spec_from_json(replay["codomain"]));
        auto domain = Subring::whole(ring);
        RingFunc trace = ring_func_from_json(domain, codomain, replay["trace"]);
        unsigned arity = replay["arity"].get<unsigned>();
        std::vector<Elem> incr;
        for (const auto& e : replay["witness"]["increments"])
            incr.push_back(static_cast<Elem>(elem_from_json(ring->spec(), e)));
        Elem base = static_cast<Elem>(elem_from_json(ring->spec(), replay["witness"]["base_point"]));
        RingFunc d = iterated_difference(trace, incr);
        if (incr.size() == arity + 1) return d(base) != codomain->zero();
        // diagonal inconsistency: n-fold difference at 0 against n! f(y)
        Elem y = incr.empty() ? ring->zero() : incr[0];
        return d(base) != codomain->scalar_mul(factorial_u64(arity), trace(y));
    }
    throw SpecError("replay: unknown kind '" + kind + "'");
}

// --- top level ---

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"operator relation verification laboratory"};
    app.name("oplab");
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print help"); // keep -h free for the shift vector

    // verify-lemma2
    CommonOpts lemma_common;
    std::string lemma_ring, lemma_ring_r, lemma_subring = "whole";
    unsigned lemma_n = 2;
    auto* lemma_cmd = app.add_subcommand("verify-lemma2", "Sweep all triples: bullet for all f implies eq1");
    lemma_cmd->add_option("--ring", lemma_ring, "Ring Q (zn:N, f2x2, quot:p:c0,c1,..., prod:a+b, or a JSON file)")
        ->required();
    lemma_cmd->add_option("--ring-r", lemma_ring_r, "Ring R (defaults to Q)");
    lemma_cmd->add_option("--subring", lemma_subring, "Domain subring P: whole or prime")->capture_default_str();
    lemma_cmd->add_option("--n", lemma_n, "Power in the bullet identity")->required();
    add_common(lemma_cmd, lemma_common);

    // search
    CommonOpts search_common;
    std::string search_ring, search_ring_r, search_subring = "whole";
    unsigned search_n = 2;
    std::vector<std::string> search_relax;
    auto* search_cmd = app.add_subcommand("search", "Hunt for bullet-satisfying triples violating eq1");
    search_cmd->add_option("--ring", search_ring, "Ring Q")->required();
    search_cmd->add_option("--ring-r", search_ring_r, "Ring R (defaults to Q)");
    search_cmd->add_option("--subring", search_subring, "Domain subring P: whole or prime")->capture_default_str();
    search_cmd->add_option("--n", search_n, "Power in the bullet identity")->required();
    search_cmd->add_option("--relax", search_relax, "Hypotheses to relax: characteristic, unit_annihilation")
        ->delimiter(',');
    add_common(search_cmd, search_common);

    // leibniz
    CommonOpts leib_common;
    leib_common.trials = 50;
    LeibnizArgs leib;
    auto* leib_cmd = app.add_subcommand("leibniz", "Exact identity checks on the polynomial engine");
    leib_cmd->add_option("--check", leib.check,
                         "second-order, laplacian, eq6, eq7, proof-chain, difference")
        ->required();
    leib_cmd->add_option("--op", leib.op_file, "Operator spec JSON file (random specs when omitted)");
    leib_cmd->add_option("--f", leib.f_expr, "Fixed polynomial, e.g. \"x^2+1\"");
    leib_cmd->add_option("--h", leib.h_list, "Shift vector for --check difference, e.g. \"1,-2/3\"");
    leib_cmd->add_option("--rationals", leib.rationals, "Scaling rationals for --check proof-chain");
    leib_cmd->add_option("--dim", leib.dim, "Ambient dimension N");
    leib_cmd->add_option("--n", leib.n, "Power for --check eq6 (default sweeps 2..5)");
    leib_cmd->add_option("--box-radius", leib.box_radius, "Half-width of the box domain used for validation")
        ->capture_default_str();
    add_common(leib_cmd, leib_common);

    // recover
    CommonOpts rec_common;
    std::string rec_oracle, rec_op_file, rec_oracle_file, rec_h;
    std::size_t rec_dim = 1;
    unsigned rec_maxdeg = 3;
    auto* rec_cmd = app.add_subcommand("recover", "Classify black-box operators against the canonical form");
    rec_cmd->add_option("--oracle", rec_oracle, "Built-in oracle: canonical, difference, zero");
    rec_cmd->add_option("--oracle-file", rec_oracle_file, "Oracle spec JSON file");
    rec_cmd->add_option("--op", rec_op_file, "Operator spec JSON for --oracle canonical");
    rec_cmd->add_option("--h", rec_h, "Shift vector for --oracle difference");
    rec_cmd->add_option("--dim", rec_dim, "Dimension for --oracle zero")->capture_default_str();
    rec_cmd->add_option("--max-degree", rec_maxdeg, "Highest probe degree (>= 3)")->capture_default_str();
    add_common(rec_cmd, rec_common);

    // polarize
    CommonOpts pol_common;
    std::string pol_ring, pol_trace, pol_codomain;
    unsigned pol_arity = 2;
    auto* pol_cmd = app.add_subcommand("polarize", "Recover a symmetric multi-additive map from its trace");
    pol_cmd->add_option("--ring", pol_ring, "Domain ring")->required();
    pol_cmd->add_option("--trace", pol_trace, "Trace JSON file: {\"values\": [...]} in enumeration order")
        ->required();
    pol_cmd->add_option("--arity", pol_arity, "Arity of the recovered map")->required();
    pol_cmd->add_option("--codomain", pol_codomain, "Codomain ring (defaults to the domain ring)");
    add_common(pol_cmd, pol_common);

    // replay
    std::string replay_file;
    std::string replay_format = "json";
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a failing witness from a report file");
    replay_cmd->add_option("file", replay_file, "Report or replay JSON file")->required();
    replay_cmd->add_option("--format", replay_format, "json, csv, human");

    for (CLI::App* sub : {lemma_cmd, search_cmd, leib_cmd, rec_cmd, pol_cmd, replay_cmd})
        sub->set_help_flag("--help", "Print help");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "oplab: " << e.what() << "\n";
        return 3;
    }

    try {
        if (*lemma_cmd) {
            RingPtr Q = Ring::make(parse_ring_arg(lemma_ring));
            RingPtr R = lemma_ring_r.empty() ? Q : Ring::make(parse_ring_arg(lemma_ring_r));
            auto rep = verify_lemma2(make_subring(Q, lemma_subring), R, lemma_n, lemma_common.sweep());
            emit_report(rep.to_json(), lemma_common.format, lemma_common.out_path, out);
            return exit_code_for(rep);
        }
        if (*search_cmd) {
            RingPtr Q = Ring::make(parse_ring_arg(search_ring));
            RingPtr R = search_ring_r.empty() ? Q : Ring::make(parse_ring_arg(search_ring_r));
            std::set<std::string> relaxed(search_relax.begin(), search_relax.end());
            auto rep = search_violations(make_subring(Q, search_subring), R, search_n, relaxed,
                                         search_common.sweep());
            emit_report(rep.to_json(), search_common.format, search_common.out_path, out);
            return exit_code_for(rep);
        }
        if (*leib_cmd) {
            auto rep = run_leibniz(leib, leib_common);
            emit_report(rep.to_json(), leib_common.format, leib_common.out_path, out);
            return exit_code_for(rep);
        }
        if (*rec_cmd) {
            Json oracle_json;
            if (!rec_oracle_file.empty()) {
                oracle_json = read_json_file(rec_oracle_file);
            } else if (rec_oracle == "canonical") {
                if (rec_op_file.empty()) throw SpecError("--oracle canonical needs --op");
                oracle_json = Json{{"kind", "canonical"}, {"spec", read_json_file(rec_op_file)}};
            } else if (rec_oracle == "difference") {
                if (rec_h.empty()) throw SpecError("--oracle difference needs --h");
                Json h = Json::array();
                for (const auto& v : parse_rat_list(rec_h)) h.push_back(v.to_string());
                oracle_json = Json{{"kind", "difference"}, {"h", h}};
            } else if (rec_oracle == "zero") {
                oracle_json = Json{{"kind", "zero"}, {"dim", rec_dim}};
            } else {
                throw SpecError("recover: give --oracle canonical|difference|zero or --oracle-file");
            }
            ClassifyOptions opts;
            opts.max_probe_degree = rec_maxdeg;
            opts.trials = rec_common.trials;
            opts.seed = rec_common.seed;
            auto rep = run_recover_from_json(oracle_json, opts);
            emit_report(rep.to_json(), rec_common.format, rec_common.out_path, out);
            return exit_code_for(rep);
        }
        if (*pol_cmd) {
            std::optional<RingSpec> codomain;
            if (!pol_codomain.empty()) codomain = parse_ring_arg(pol_codomain);
            auto rep = run_polarize(parse_ring_arg(pol_ring), read_json_file(pol_trace), pol_arity, codomain,
                                    pol_common.guard);
            emit_report(rep.to_json(), pol_common.format, pol_common.out_path, out);
            return exit_code_for(rep);
        }
        if (*replay_cmd) {
            Json j = read_json_file(replay_file);
            Json replay = j.contains("replay") ? j["replay"] : j;
            bool reproduced = replay_reproduces(replay);
            Json result{{"schema", "oplab/1"},
                        {"equation", "replay"},
                        {"kind", replay.value("kind", std::string())},
                        {"reproduced", reproduced}};
            emit_report(result, replay_format, "", out);
            return reproduced ? 0 : 1;
        }
    } catch (const EnumerationRefused& e) {
        VerificationReport rep;
        rep.equation = "refused";
        rep.outcome = "refused";
        rep.details["reason"] = e.what();
        rep.details["estimated"] = e.estimated;
        emit_report(rep.to_json(), "json", "", out);
        return 2;
    } catch (const HypothesisViolation& e) {
        err << "oplab: hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        err << "oplab: " << e.what() << "\n";
        return 3;
    } catch (const Json::exception& e) {
        err << "oplab: malformed input: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "oplab: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

} // namespace cli
} // namespace oplab
