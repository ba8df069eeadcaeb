#include "oplab/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace oplab;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << content;
    return path.string();
}

} // namespace

TEST_CASE("verify-lemma2 exit codes") {
    CHECK(run({"verify-lemma2", "--ring", "zn:5", "--n", "2"}).code == 0);
    CHECK(run({"verify-lemma2", "--ring", "zn:7", "--n", "3"}).code == 0);
    CHECK(run({"verify-lemma2", "--ring", "f2x2", "--n", "2"}).code == 2); // char 2 <= 2!
    CHECK(run({"verify-lemma2", "--ring", "zn:bogus", "--n", "2"}).code == 3);
    CHECK(run({"verify-lemma2", "--ring", "zn:1", "--n", "2"}).code == 3);
    CHECK(run({"verify-lemma2", "--n", "2"}).code == 3); // missing --ring
    CHECK(run({"verify-lemma2", "--ring", "/nonexistent/ring.json", "--n", "2"}).code == 3);
}

TEST_CASE("ring shorthand forms") {
    CHECK(run({"verify-lemma2", "--ring", "quot:3:0,0,1", "--n", "2"}).code == 0); // F3[x]/(x^2), char 3
    CHECK(run({"verify-lemma2", "--ring", "prod:zn:5+zn:7", "--n", "2", "--mode", "sampled", "--seed", "1",
               "--trials", "40"})
              .code == 0);
    std::string path = write_temp("oplab_ring.json", R"({"kind":"modular","n":5})");
    CHECK(run({"verify-lemma2", "--ring", path, "--n", "2"}).code == 0);
}

TEST_CASE("size guard refusal maps to exit 2") {
    auto r = run({"verify-lemma2", "--ring", "zn:5", "--n", "2", "--guard", "10"});
    CHECK(r.code == 2);
    Json j = Json::parse(r.out);
    CHECK(j["outcome"] == "refused");
}

TEST_CASE("reports are deterministic modulo timing") {
    std::vector<std::string> args{"verify-lemma2", "--ring", "zn:7", "--n", "3"};
    auto a = run(args);
    auto b = run(args);
    CHECK(strip_timing(Json::parse(a.out)).dump() == strip_timing(Json::parse(b.out)).dump());

    std::vector<std::string> sargs{"search", "--ring", "zn:7", "--n", "3", "--relax", "unit_annihilation"};
    auto c = run(sargs);
    auto d = run(sargs);
    CHECK(c.code == 1);
    CHECK(strip_timing(Json::parse(c.out)).dump() == strip_timing(Json::parse(d.out)).dump());

    // worker count does not change the bytes
    auto e = run({"verify-lemma2", "--ring", "zn:7", "--n", "3", "--jobs", "1"});
    auto f = run({"verify-lemma2", "--ring", "zn:7", "--n", "3", "--jobs", "5"});
    CHECK(strip_timing(Json::parse(e.out)).dump() == strip_timing(Json::parse(f.out)).dump());
}

TEST_CASE("search and witness replay round-trip") {
    auto found = run({"search", "--ring", "zn:7", "--n", "3", "--relax", "unit_annihilation"});
    REQUIRE(found.code == 1);
    std::string path = write_temp("oplab_witness.json", found.out);
    auto rep = run({"replay", path});
    CHECK(rep.code == 0);
    CHECK(Json::parse(rep.out)["reproduced"] == true);

    auto empty = run({"search", "--ring", "zn:5", "--n", "2"});
    CHECK(empty.code == 0);
    CHECK(Json::parse(empty.out)["details"]["certified_empty"] == true);
}

TEST_CASE("leibniz checks succeed across the flag surface") {
    CHECK(run({"leibniz", "--check", "second-order", "--trials", "15", "--seed", "42"}).code == 0);
    CHECK(run({"leibniz", "--check", "laplacian", "--dim", "3", "--trials", "10", "--seed", "7"}).code == 0);
    CHECK(run({"leibniz", "--check", "eq6", "--trials", "5", "--seed", "3"}).code == 0);
    CHECK(run({"leibniz", "--check", "eq7", "--f", "x^2+1"}).code == 0);
    CHECK(run({"leibniz", "--check", "proof-chain", "--trials", "3", "--seed", "9"}).code == 0);
    CHECK(run({"leibniz", "--check", "difference", "--h", "1,-2/3", "--trials", "10", "--seed", "5"}).code == 0);
    CHECK(run({"leibniz", "--check", "nonsense"}).code == 3);
    CHECK(run({"leibniz", "--check", "eq7", "--f", "x^2+"}).code == 3); // parse error in f
}

TEST_CASE("operator spec violating the smoothness invariant exits 3 naming it") {
    std::string bad = write_temp("oplab_bad_op.json",
                                 R"({"k":1,"b":[[{"exps":[0],"coef":"1"}]],"c":[[{"exps":[0],"coef":"1"}]]})");
    auto r = run({"leibniz", "--check", "second-order", "--op", bad, "--trials", "2"});
    CHECK(r.code == 3);
    CHECK(r.err.find("k=1 requires c=0") != std::string::npos);
}

TEST_CASE("leibniz with a fixed operator spec file") {
    std::string op = write_temp(
        "oplab_leib_op.json",
        R"({"k":2,"b":[[{"exps":[1,0],"coef":"2"}],[]],"c":[[{"exps":[0,0],"coef":"1"}],[{"exps":[0,1],"coef":"1/2"}]]})");
    CHECK(run({"leibniz", "--op", op, "--check", "second-order", "--trials", "25", "--seed", "42"}).code == 0);
    CHECK(run({"leibniz", "--check", "eq7", "--op", op, "--f", "x^2+1"}).code == 0);
    CHECK(run({"leibniz", "--op", op, "--check", "second-order", "--dim", "3"}).code == 3); // dim contradiction
}

TEST_CASE("search on the characteristic-2 quotient with the hypothesis relaxed") {
    // the exhaustive run is the oracle; it certifies emptiness here
    auto r = run({"search", "--ring", "f2x2", "--n", "2", "--relax", "characteristic"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["details"]["certified_empty"] == true);
    // and without relaxing, the run refuses
    CHECK(run({"search", "--ring", "f2x2", "--n", "2"}).code == 2);
}

TEST_CASE("recover exit codes and reports") {
    std::string op = write_temp(
        "oplab_op.json",
        R"({"k":2,"b":[[{"exps":[1,0],"coef":"2"}],[]],"c":[[{"exps":[0,0],"coef":"1"}],[{"exps":[0,1],"coef":"1/2"}]]})");
    auto fits = run({"recover", "--oracle", "canonical", "--op", op});
    CHECK(fits.code == 0);
    Json j = Json::parse(fits.out);
    CHECK(j["outcome"] == "pass");
    CHECK(j["details"]["fit"].contains("b"));

    auto zero = run({"recover", "--oracle", "zero", "--dim", "2"});
    CHECK(zero.code == 0);

    auto diff = run({"recover", "--oracle", "difference", "--h", "1"});
    CHECK(diff.code == 1);
    Json dj = Json::parse(diff.out);
    CHECK(dj["witness"]["channel"] == "T");
    CHECK(dj["witness"]["probe_degree"] == 3);

    std::string path = write_temp("oplab_diff_witness.json", diff.out);
    CHECK(run({"replay", path}).code == 0);

    CHECK(run({"recover", "--oracle", "canonical"}).code == 3); // missing --op
    CHECK(run({"recover", "--oracle", "difference", "--h", "1", "--max-degree", "2"}).code == 3);
}

TEST_CASE("polarize on trace files") {
    // trace of B(u,v) = uv on Z5
    std::string good = write_temp("oplab_trace_good.json", R"({"values":[0,1,4,4,1]})");
    auto ok = run({"polarize", "--ring", "zn:5", "--trace", good, "--arity", "2"});
    CHECK(ok.code == 0);
    Json oj = Json::parse(ok.out);
    CHECK(oj["details"]["division_available"] == true);
    CHECK(oj["details"].contains("unscaled_table"));

    // x -> x^3 is not a quadratic trace on Z5
    std::string bad = write_temp("oplab_trace_bad.json", R"({"values":[0,1,3,2,4]})");
    auto fail = run({"polarize", "--ring", "zn:5", "--trace", bad, "--arity", "2"});
    CHECK(fail.code == 1);
    std::string path = write_temp("oplab_trace_witness.json", fail.out);
    CHECK(run({"replay", path}).code == 0);

    // malformed: wrong number of values
    std::string offsize = write_temp("oplab_trace_bad2.json", R"({"values":[0,1,2]})");
    CHECK(run({"polarize", "--ring", "zn:5", "--trace", offsize, "--arity", "2"}).code == 3);
}

TEST_CASE("output formats and file output") {
    auto csv = run({"verify-lemma2", "--ring", "zn:5", "--n", "2", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("schema,equation,mode") == 0);
    auto human = run({"verify-lemma2", "--ring", "zn:5", "--n", "2", "--format", "human"});
    CHECK(human.out.find("outcome:  pass") != std::string::npos);

    auto path = (std::filesystem::temp_directory_path() / "oplab_report_out.json").string();
    auto filed = run({"verify-lemma2", "--ring", "zn:5", "--n", "2", "--out", path});
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path);
    Json j = Json::parse(in);
    CHECK(j["outcome"] == "pass");
}

TEST_CASE("subring selection is exposed") {
    CHECK(run({"verify-lemma2", "--ring", "prod:zn:2+zn:4", "--n", "2", "--subring", "prime"}).code == 0);
    CHECK(run({"verify-lemma2", "--ring", "zn:5", "--n", "2", "--subring", "bogus"}).code == 3);
}

TEST_CASE("polynomial JSON round-trips bit-exactly") {
    Rng rng(314159);
    for (int i = 0; i < 30; ++i) {
        std::size_t dim = 1 + i % 3;
        PolyQ p = rng.polynomial(dim, 5, 6);
        Json j = polynomial_to_json(p);
        PolyQ q = polynomial_from_json(j, dim);
        CHECK(q == p);
        CHECK(polynomial_to_json(q).dump() == j.dump());
    }
    OperatorSpec spec = Rng(7).spec(2, 3);
    Json js = operator_spec_to_json(spec);
    OperatorSpec back = operator_spec_from_json(js);
    CHECK(operator_spec_to_json(back).dump() == js.dump());
}

TEST_CASE("help is printed with exit 0") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify-lemma2") != std::string::npos);
}
