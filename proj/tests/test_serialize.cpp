// DSL text round-trips, the JSON catalog as the persistence format, report
// writers, and the Gram CSV shape.  The round-trip guarantees here are what
// the command-line front door leans on for golden-file determinism.

#include <algorithm>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "zsl/dsl.hpp"
#include "zsl/ffield.hpp"
#include "zsl/serialize.hpp"
#include "zsl/suspension.hpp"

namespace {

zsl::ZeroCatalog tiny_catalog() {
    zsl::ZeroCatalog cat;
    cat.family = zsl::Family::riemann();
    cat.weight = 1;
    cat.center = 0.5;
    cat.t_max = 22.0;
    cat.tolerance = 1e-8;
    cat.zeros = {{zsl::canon12(14.134725141734693), 1}, {zsl::canon12(21.022039638771554), 1}};
    cat.certified = true;
    return cat;
}

}  // namespace

TEST_CASE("DSL round trips") {
    using zsl::log_gaussian;
    std::vector<zsl::TestFunction> funcs = {
        log_gaussian(100.0, 0.0),
        log_gaussian(2.5, -1.25, zsl::Complex(3.0, 0.0)),
        log_gaussian(7.0, 0.5, zsl::Complex(2.0, -0.5)),
        zsl::apply_J(log_gaussian(100.0, 0.25), 1.0),
        zsl::scale_action(log_gaussian(100.0, 0.0), 2.0),
        zsl::conjugate(log_gaussian(4.0, 1.0, zsl::Complex(0.0, 1.0))),
        zsl::mult_convolve(log_gaussian(100.0, 0.0), log_gaussian(50.0, 0.5)),
        zsl::smoothed_image(log_gaussian(100.0, 0.0)),
        zsl::tf_sum({log_gaussian(100.0, 0.0), log_gaussian(100.0, 0.5),
                     zsl::apply_J(log_gaussian(9.0, 0.0), 2.0)}),
        zsl::apply_J(zsl::scale_action(zsl::mult_convolve(log_gaussian(30.0, 0.1),
                                                          log_gaussian(60.0, -0.2)),
                                       0.75),
                     2.0),
    };
    for (const zsl::TestFunction& f : funcs) {
        std::string text = zsl::to_dsl(f);
        INFO(text);
        zsl::TestFunction back = zsl::parse_test_function(text);
        CHECK(zsl::tf_equal(f.root, back.root));
        CHECK(zsl::to_dsl(back) == text);
    }
}

TEST_CASE("DSL surface forms") {
    SECTION("whitespace is insignificant") {
        zsl::TestFunction a = zsl::parse_test_function("loggauss:a=100,mu=0.5");
        zsl::TestFunction b = zsl::parse_test_function("  loggauss : a = 100 ,\n mu = 0.5 ");
        CHECK(zsl::tf_equal(a.root, b.root));
    }

    SECTION("parameter commas vs operand commas") {
        zsl::TestFunction c =
            zsl::parse_test_function("conv(loggauss:a=100,mu=0,loggauss:a=100,mu=0.5)");
        zsl::TestFunction want = zsl::mult_convolve(zsl::log_gaussian(100.0, 0.0),
                                                    zsl::log_gaussian(100.0, 0.5));
        CHECK(zsl::tf_equal(c.root, want.root));
    }

    SECTION("builder normalizations apply to parsed text too") {
        // J_w is an involution and nested scalings merge
        zsl::TestFunction jj = zsl::parse_test_function("j1(j1(loggauss:a=4,mu=0))");
        CHECK(zsl::tf_equal(jj.root, zsl::log_gaussian(4.0, 0.0).root));
        zsl::TestFunction ss =
            zsl::parse_test_function("scale:2(scale:0.5(loggauss:a=4,mu=0))");
        CHECK(zsl::tf_equal(ss.root, zsl::log_gaussian(4.0, 0.0).root));
    }

    SECTION("errors name the offending token") {
        CHECK_THROWS_WITH(zsl::parse_test_function("foo(loggauss:a=1,mu=0)"),
                          Catch::Matchers::ContainsSubstring("foo"));
        CHECK_THROWS_WITH(zsl::parse_test_function(""),
                          Catch::Matchers::ContainsSubstring("empty"));
        CHECK_THROWS_WITH(zsl::parse_test_function("loggauss:a=100"),
                          Catch::Matchers::ContainsSubstring("mu"));
        CHECK_THROWS_WITH(zsl::parse_test_function("loggauss:a=1,a=2,mu=0"),
                          Catch::Matchers::ContainsSubstring("repeated"));
        CHECK_THROWS_WITH(zsl::parse_test_function("loggauss:a=1,mu=0)"),
                          Catch::Matchers::ContainsSubstring("trailing"));
        CHECK_THROWS_WITH(zsl::parse_test_function("loggauss:a=x,mu=0"),
                          Catch::Matchers::ContainsSubstring("number"));
        CHECK_THROWS_WITH(zsl::parse_test_function("sum(loggauss:a=1,mu=0"),
                          Catch::Matchers::ContainsSubstring("')'"));
        CHECK_THROWS_AS(zsl::parse_test_function("j(loggauss:a=1,mu=0)"),
                        std::invalid_argument);
        // offsets point into the whitespace-stripped text
        CHECK_THROWS_WITH(zsl::parse_test_function("conv(loggauss:a=1,mu=0;loggauss:a=1,mu=0)"),
                          Catch::Matchers::ContainsSubstring("offset 22"));
    }

    SECTION("domain errors from builders pass through") {
        CHECK_THROWS_AS(zsl::parse_test_function("loggauss:a=-1,mu=0"), std::invalid_argument);
        CHECK_THROWS_AS(zsl::parse_test_function("scale:0(loggauss:a=1,mu=0)"),
                        std::invalid_argument);
    }
}

TEST_CASE("family tags") {
    std::vector<zsl::Family> fams = {
        zsl::Family::riemann(),
        zsl::Family::elliptic("11a1"),
        zsl::Family::function_field(2, {1, 0, 2}),
        zsl::Family::function_field(4, {1, -4, 4}),
    };
    for (const zsl::Family& f : fams) {
        INFO(zsl::family_tag(f));
        CHECK(zsl::parse_family_tag(zsl::family_tag(f)) == f);
    }
    CHECK(zsl::family_tag(fams[2]) == "ff:q=2;P=1,0,2");
    CHECK_THROWS_AS(zsl::parse_family_tag("klein-bottle"), std::invalid_argument);
    CHECK_THROWS_AS(zsl::parse_family_tag("ff:q=2"), std::invalid_argument);
}

TEST_CASE("catalog JSON") {
    zsl::ZeroCatalog cat = tiny_catalog();

    SECTION("write -> read is the identity, write is stable") {
        std::string text = zsl::write_catalog(cat);
        zsl::ZeroCatalog back = zsl::read_catalog(text);
        CHECK(back == cat);
        CHECK(zsl::write_catalog(back) == text);
    }

    SECTION("field order is as declared") {
        std::string text = zsl::write_catalog(cat);
        std::size_t last = 0;
        for (const char* key : {"\"family\"", "\"weight\"", "\"center\"", "\"t_max\"",
                                "\"tolerance\"", "\"zeros\"", "\"real_zeros\"", "\"certified\""}) {
            std::size_t at = text.find(key);
            REQUIRE(at != std::string::npos);
            CHECK(at > last);
            last = at;
        }
    }

    SECTION("real zeros and non-riemann families survive") {
        zsl::ZeroCatalog c2 = cat;
        c2.family = zsl::Family::function_field(2, {1, 0, 2});
        c2.weight = 2;
        c2.center = 1.0;
        c2.real_zeros = {{1.0, 2, false}};
        c2.certified = false;
        zsl::ZeroCatalog back = zsl::read_catalog(zsl::write_catalog(c2));
        CHECK(back == c2);
        CHECK(back.real_zeros[0].mult == 2);
    }

    SECTION("rejects garbage and missing fields") {
        CHECK_THROWS_WITH(zsl::read_catalog("{nope"),
                          Catch::Matchers::ContainsSubstring("valid JSON"));
        CHECK_THROWS_WITH(zsl::read_catalog("{\"family\": \"riemann\"}"),
                          Catch::Matchers::ContainsSubstring("missing field"));
    }
}

TEST_CASE("report writers") {
    SECTION("pairing report carries the declared fields in order") {
        zsl::PairingValue p;
        p.value = zsl::Complex(0.125, -2.5e-17);
        p.twist = 1;
        p.truncation_bound = 3.5e-40;
        p.flags = {"theorem3_hypothesis_violated"};
        std::string text = zsl::write_pairing_report("antisym", 1, "z.json", p);
        nlohmann::json j = nlohmann::json::parse(text);
        CHECK(j["form"] == "antisym");
        CHECK(j["weight"] == 1);
        CHECK(j["catalog_ref"] == "z.json");
        CHECK(j["value"]["re"].get<double>() == 0.125);
        CHECK(j["twist"] == 1);
        CHECK(j["truncation_bound"].get<double>() == 3.5e-40);
        REQUIRE(j["flags"].size() == 1);
        std::size_t last = 0;
        for (const char* key : {"\"form\"", "\"weight\"", "\"catalog_ref\"", "\"value\"",
                                "\"twist\"", "\"truncation_bound\"", "\"flags\""}) {
            std::size_t at = text.find(key);
            REQUIRE(at != std::string::npos);
            CHECK(at > last);
            last = at;
        }
    }

    SECTION("function-field report for y^2 + y = x^3 over F_2") {
        zsl::CurveOverFq c = zsl::CurveOverFq::elliptic(2, 0, 0, 1, 0, 0);
        zsl::ZetaPolynomial zp = zsl::zeta_numerator({zsl::count_points(c, 1)}, 1, 2);
        zsl::FrobeniusSpectrum spec = zsl::frobenius_eigenvalues(zp);
        zsl::PoincarePairing pp = zsl::poincare_pairing_matrix(spec);
        nlohmann::json j = nlohmann::json::parse(zsl::write_ff_report(zp, spec, pp));
        CHECK(j["q"] == 2);
        CHECK(j["g"] == 1);
        CHECK(j["P"] == nlohmann::json::array({1, 0, 2}));
        CHECK(j["real_sqrt_q_mult"] == 0);
        CHECK(j["eigenvalues"].size() == 2);
        CHECK(j["eigenvalues"][0]["exact"] == true);
        CHECK(j["pairing"]["blocks"] == 1);
        CHECK(j["pairing"]["equivariance_factor"] == 2);
    }

    SECTION("suspension report keeps exact strip coordinates as fractions") {
        zsl::SuspendedSpectrum s = zsl::suspend(4, {{zsl::Complex(-2.0, 0.0), 1}});
        nlohmann::json j = nlohmann::json::parse(zsl::write_suspension_report(s));
        CHECK(j["base"] == "finite");
        CHECK(j["q"] == 4);
        REQUIRE(j["entries"].size() == 1);
        CHECK(j["entries"][0]["exact"] == true);
        CHECK(j["entries"][0]["sigma"] == "1/2");
        CHECK(j["entries"][0]["tau"] == "1/2");
    }
}

TEST_CASE("Gram CSV") {
    std::vector<std::string> exprs = {"loggauss:a=100,mu=0", "loggauss:a=100,mu=0.5"};
    zsl::ComplexMatrix m = {{zsl::Complex(1.0, 0.0), zsl::Complex(0.25, -0.5)},
                            {zsl::Complex(0.25, 0.5), zsl::Complex(2.0, 0.0)}};
    std::string csv = zsl::write_gram_csv(exprs, m);

    SECTION("header quotes the expressions, rows lead with their own") {
        CHECK(csv.rfind("expr,\"loggauss:a=100,mu=0\",\"loggauss:a=100,mu=0.5\"\n", 0) == 0);
        CHECK(csv.find("\"loggauss:a=100,mu=0\",1+0i,0.25-0.5i\n") != std::string::npos);
        CHECK(csv.find("\"loggauss:a=100,mu=0.5\",0.25+0.5i,2+0i\n") != std::string::npos);
    }

    SECTION("LF endings only, three lines") {
        CHECK(csv.find('\r') == std::string::npos);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
        CHECK(csv.back() == '\n');
    }

    SECTION("shape mismatches are rejected") {
        CHECK_THROWS_AS(zsl::write_gram_csv({"one"}, m), std::invalid_argument);
        zsl::ComplexMatrix ragged = {{zsl::Complex(1.0, 0.0)}, {}};
        CHECK_THROWS_AS(zsl::write_gram_csv(exprs, ragged), std::invalid_argument);
    }
}
