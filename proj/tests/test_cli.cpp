#include "doctest.h"
#include "qozeta/report.hpp"
#include "qozeta/verify.hpp"

using namespace qozeta;
using nlohmann::json;

TEST_CASE("parse_input") {
    InputDocument doc = parse_input(R"({"d":2,"lambda":[["1/2","3/2"],["1/2","7/4"]]})");
    CHECK(doc.d == 2);
    CHECK(doc.lambda == example_paper().lambda);

    InputDocument cusp = parse_input(R"({"d":1,"lambda":[["3/2"]]})");
    CHECK(cusp.lambda == example_cusp().lambda);

    CHECK_THROWS_AS(parse_input(R"({"d":2,"lambda":[["1/2","3/2"],["1/2"]]})"), validation_error);
    CHECK_THROWS_AS(parse_input(R"({"d":2,"lambda":[["1/x","3/2"]]})"), validation_error);
    CHECK_THROWS_AS(parse_input("not json"), validation_error);
    CHECK_THROWS_AS(parse_input(R"({"d":1,"lambda":[["1/2"],["1/2"]]})"), validation_error);
}

TEST_CASE("json report fields and round-trip") {
    InputDocument doc = parse_input(R"({"d":1,"lambda":[["3/2"]]})");
    json rep = compute_report_json(doc);
    CHECK(rep["invariants"]["n"] == json::array({2}));
    CHECK(rep["invariants"]["e"] == json::array({2, 1}));
    // cusp spectrum serialization: [["5/6", 1], ["7/6", 1]]
    json spectrum = rep["spectrum_prime"];
    REQUIRE(spectrum.size() == 2);
    CHECK(spectrum[0][0] == "5/6");
    CHECK(spectrum[0][1] == 1);
    CHECK(spectrum[1][0] == "7/6");

    // report -> parse -> report is stable
    InputDocument back = parse_input(rep.dump());
    CHECK(back.d == doc.d);
    CHECK(back.lambda == doc.lambda);
    CHECK(compute_report_json(back) == rep);
}

TEST_CASE("text and latex rendering") {
    InputDocument smooth = parse_input(R"({"d":1,"lambda":[["1/2"]]})");
    std::string text = render_text(smooth);
    CHECK(text.find("Z_top = 1/(1+s)") != std::string::npos);

    InputDocument paper = parse_input(R"({"d":2,"lambda":[["1/2","3/2"],["1/2","7/4"]]})");
    std::string latex = render_latex(paper);
    for (const char* factor : {"(1+s)", "(3+8s)", "(5+24s)", "(11+52s)"})
        CHECK(latex.find(factor) != std::string::npos);
}

TEST_CASE("fan serialization carries id, edges, mult and forms") {
    Fan fan = build_fan(derive_invariants(example_paper()));
    json cones = fan_json(fan);
    bool found_rho1 = false;
    for (const auto& c : cones) {
        if (c["id"] == "rho_1") {
            found_rho1 = true;
            CHECK(c["mult"] == 2);
            CHECK(c["edges"].size() == 2);
            CHECK(c["edge_forms"].size() == 2);
        }
        if (c["id"] == "sigma_1^-") CHECK_FALSE(c.contains("mult"));
    }
    CHECK(found_rho1);
}

TEST_CASE("ratlt serialization shape") {
    Fan fan = build_fan(derive_invariants(example_cusp()));
    json j = ratlt_json(s_theta(fan, {ConeKind::Rho, 1}));
    CHECK(j.contains("num"));
    CHECK(j.contains("den"));
    CHECK(j["den"].size() == 1);
    CHECK(j["den"][0][0] == 5);
    CHECK(j["den"][0][1] == 6);
}

TEST_CASE("verify_branch passes on the fixtures") {
    VerifyOptions opts;
    opts.series_order = 8;
    opts.l_precision = 8;
    // The third branch has a vanishing lambda column at level 1, putting a
    // coordinate ray with a nonzero level-1 exponent on sigma_1^-.
    BranchData zero_col =
        validate({{Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(1, 3)}}, 2);
    for (const BranchData& b : {example_cusp(), example_smooth(), zero_col}) {
        auto checks = verify_branch(b, opts);
        for (const auto& c : checks) {
            INFO(c.name, ": ", c.detail);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("verify flags the printed class table on the surface example") {
    VerifyOptions opts;
    opts.series_order = 6;
    opts.l_precision = 6;
    opts.orient = AtomOrientation::AsPrinted;
    VerifySummary s = verify_one(example_paper(), opts);
    CHECK_FALSE(s.all_pass);
    CHECK(s.failing_check == "fixture: spectrum of the built-in surface example");
}
