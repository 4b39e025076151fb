#include "lenhil/io.hpp"

#include <doctest.h>

using namespace lenhil;

namespace {

const char* kSample = R"({
  "ring": {"base": "Z", "k": 1, "weights": [1]},
  "module": {"gens": 1, "relations": [["5"]]},
  "V0": [["1"]],
  "length": "logcard"
})";

}  // namespace

TEST_CASE("problem files parse and emit as a fixed point") {
    Problem p = parse_problem(kSample);
    CHECK(p.module.ring.base == BaseKind::Integers);
    CHECK(p.module.gens == 1);
    CHECK(p.length.kind == LengthKind::LogCard);
    std::string emitted = emit_problem(p);
    Problem q = parse_problem(emitted);
    CHECK(emit_problem(q) == emitted);
}

TEST_CASE("builders round-trip through the problem text bit-exactly") {
    std::vector<Problem> cases;
    {
        Problem p;
        p.module = two_generator_algebra_example(RingSpec::rationals(1));
        p.v0 = SubmoduleGens::unit_generators(p.module);
        p.length.kind = LengthKind::Dimension;
        cases.push_back(p);
    }
    {
        Problem p;
        p.module = laurent_presentation(RingSpec::rationals(1), 1, -3);
        p.v0 = SubmoduleGens::unit_generators(p.module);
        p.length.kind = LengthKind::Dimension;
        cases.push_back(p);
    }
    {
        Problem p;
        p.module = from_ideal_quotient(RingSpec::integers_mod(12, 1), {parse_poly("x1^2 + 7", 1)});
        p.v0 = SubmoduleGens::unit_generators(p.module);
        p.length.kind = LengthKind::LogCard;
        cases.push_back(p);
    }
    {
        Problem p;
        p.module = from_ideal_quotient(RingSpec::integers(2), {});
        p.v0 = SubmoduleGens::z_plus(3, 2);
        p.length.kind = LengthKind::LogCard;
        cases.push_back(p);
    }
    for (const auto& p : cases) {
        std::string one = emit_problem(p);
        Problem back = parse_problem(one);
        CHECK(emit_problem(back) == one);
        CHECK(back.module.gens == p.module.gens);
        CHECK(back.module.relations.size() == p.module.relations.size());
        for (size_t i = 0; i < p.module.relations.size(); ++i)
            CHECK(back.module.relations[i] == p.module.relations[i]);
    }
}

TEST_CASE("parse errors carry diagnostics") {
    CHECK_THROWS_AS(parse_problem("{"), ProblemParseError);
    CHECK_THROWS_AS(parse_problem(R"({"ring":{"base":"X","k":1}})"), ProblemParseError);
    CHECK_THROWS_AS(parse_problem(R"({
        "ring": {"base": "Z", "k": 1},
        "module": {"gens": 2, "relations": [["5"]]},
        "length": "logcard"
    })"),
                    ProblemParseError);
    // hypothesis mismatch: dim over Z
    CHECK_THROWS_AS(parse_problem(R"({
        "ring": {"base": "Z", "k": 1},
        "module": {"gens": 1, "relations": []},
        "length": "dim"
    })"),
                    UnsupportedCombination);
}

TEST_CASE("length values serialize in the documented shape") {
    LengthValue v = LengthValue::from_unit(Rat(1, 2)) + LengthValue::log_term(2, 3);
    std::string j = length_value_json(v);
    CHECK(j.find("\"unit\":\"1/2\"") != std::string::npos);
    CHECK(j.find("\"2\":\"3\"") != std::string::npos);
    CHECK(length_value_from_json(j) == v);
    CHECK(length_value_from_json("{\"inf\":true}").is_infinite());
    CHECK(length_value_json(LengthValue::infinity()) == "{\"inf\":true}");
}

TEST_CASE("series serialization") {
    Presentation p = from_ideal_quotient(RingSpec::rationals(2), {});
    ModuleSlicer s(p, LengthSpec{LengthKind::Dimension});
    GrowthSeries g = s.series(SubmoduleGens::unit_generators(p), 5, SeriesKind::Growth);
    std::string csv = series_to_csv(g);
    CHECK(csv == "n,value\n0,1\n1,3\n2,6\n3,10\n4,15\n5,21\n");
    std::string j = series_to_json(g);
    CHECK(j.find("\"kind\": \"growth\"") != std::string::npos);

    GrowthSeries mb = s.multibox_series(SubmoduleGens::unit_generators(p), {0, 1}, {1, 1});
    std::string mcsv = series_to_csv(mb);
    CHECK(mcsv == "m1,m2,value\n0,0,1\n0,1,2\n1,0,2\n1,1,4\n");
}

TEST_CASE("mu monomial serialization") {
    CHECK(mu_monomial_json(MuMonomial::zero()) == "{\"zero\":true}");
    std::string j = mu_monomial_json(MuMonomial(LengthValue::log_term(5, 1), 1));
    CHECK(j.find("\"degree\":1") != std::string::npos);
}

TEST_CASE("eventual polynomial and hat estimate serialization") {
    Presentation p = from_ideal_quotient(RingSpec::integers(1), {Poly::constant(1, 6)});
    MuResult r = mu(p, SubmoduleGens::unit_generators(p), LengthSpec{LengthKind::LogCard});
    std::string pj = eventual_polynomial_json(r.poly);
    CHECK(pj.find("\"coeffs\"") != std::string::npos);
    CHECK(pj.find("\"log 2\"") != std::string::npos);

    HatEstimate est = hat_mu_chain(p, 6);
    std::string hj = hat_estimate_json(est);
    CHECK(hj.find("\"verdict\": \"Stabilized\"") != std::string::npos);
    CHECK(hj.find("\"modulus\": \"6\"") != std::string::npos);
    CHECK(hj.find("\"running_sup\"") != std::string::npos);
}
