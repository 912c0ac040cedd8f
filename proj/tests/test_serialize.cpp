#include "apolar/serialize.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace apolar;

TEST_CASE("polynomial json round trip", "[serialize][property]") {
    std::mt19937_64 gen(0x51deu);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<std::uint32_t> small(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        Poly p;
        for (int t = 0; t < 6; ++t) {
            Monomial m;
            if (auto d = small(gen); d > 0) m.emplace_back(xvar(small(gen), small(gen) % 2), d);
            if (auto d = small(gen); d > 0) m.emplace_back(yvar(4 + small(gen)), d);
            std::sort(m.begin(), m.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            m.erase(std::unique(m.begin(), m.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; }),
                    m.end());
            p.add_term(m, Rational(coef(gen), 1 + small(gen)));
        }
        const Json j = poly_to_json(p);
        CHECK(poly_from_json(j) == p);
        CHECK(Json::parse(j.dump()) == j);
    }
}

TEST_CASE("form json round trip", "[serialize]") {
    BinaryForm f{3, {Rational(1), Rational(-2, 3), Rational(0), Rational(7)}};
    CHECK(form_from_json(form_to_json(f)) == f);
    CHECK(form_to_json(f)["coeffs"][1] == "-2/3");

    MultiForm mf{MultiDegree{{1, 1}}, {}};
    mf.coeffs[{0, 0}] = Rational(1);
    mf.coeffs[{0, 1}] = Rational(1, 2);
    mf.coeffs[{1, 0}] = Rational(-3);
    mf.coeffs[{1, 1}] = Rational(0);
    const Json j = multi_form_to_json(mf);
    CHECK(j["coeffs"]["0,1"] == "1/2");
    CHECK(multi_form_from_json(j) == mf);
}

TEST_CASE("moment files", "[serialize]") {
    SECTION("builtin class") {
        const Json j = Json::parse(R"({"d": 0, "classes": {"1": {"builtin": "hermite"}}, "up_to": 6})");
        auto M = moments_from_json(j);
        CHECK(M.moment1(1, 4) == Rational(3));
        CHECK_THROWS_AS(M.moment1(1, 7), missing_moment);
    }
    SECTION("explicit univariate moments and block assignment") {
        const Json j = Json::parse(
            R"({"d": 0,
                "classes": {"1": {"builtin": "laguerre"}, "2": {"moments": ["1", "0", "1/3"]}},
                "blocks": {"4": 2}, "up_to": 4})");
        auto M = moments_from_json(j);
        CHECK(M.moment1(2, 2) == Rational(1, 3));
        CHECK(M.class_of(4) == 2);
        CHECK(M.class_of(3) == 1);
    }
    SECTION("multivariate moments keyed by comma-joined indices") {
        const Json j = Json::parse(
            R"({"d": 1, "classes": {"1": {"moments": {"0,0": "1", "0,1": "0", "1,0": "0", "1,1": "1/4"}}}})");
        auto M = moments_from_json(j);
        CHECK(M.dimension() == 1);
        CHECK(M.moment(1, {1, 1}) == Rational(1, 4));
    }
    SECTION("product shorthand") {
        const Json j = Json::parse(
            R"({"d": 1, "classes": {"1": {"product": ["hermite", "uniform_pm1"]}}, "up_to": 4})");
        auto M = moments_from_json(j);
        CHECK(M.moment(1, {2, 2}) == Rational(2, 3));
    }
    SECTION("round trip through the canonical emitted form") {
        auto M = MomentFunctional::builtin("chebyshev1", 8);
        M.set_class_moments(2, builtin_moments({"laguerre", {}}, 8));
        auto M2 = moments_from_json(moments_to_json(M));
        for (std::uint32_t cls : {1u, 2u})
            for (std::uint32_t k = 0; k <= 8; ++k) CHECK(M2.moment1(cls, k) == M.moment1(cls, k));

        auto P = MomentFunctional::product({"hermite", "laguerre"}, 4);
        auto P2 = moments_from_json(moments_to_json(P));
        CHECK(P2.moment(1, {2, 3}) == P.moment(1, {2, 3}));
    }
    SECTION("bad inputs are named") {
        CHECK_THROWS_AS(moments_from_json(Json::parse(R"({"d": 0})")), std::invalid_argument);
        CHECK_THROWS_AS(
            moments_from_json(Json::parse(R"({"d": 1, "classes": {"1": {"builtin": "hermite"}}})")),
            std::invalid_argument);
    }
}

TEST_CASE("csv tables", "[serialize]") {
    auto H = MomentFunctional::builtin("hermite", 12);
    SECTION("classical gaussian entries") {
        std::vector<GopsEntry> entries;
        for (std::uint32_t n = 1; n <= 3; ++n) entries.push_back(gops_det(H, n, 1));
        const std::string csv = emit_table_csv(entries);
        CHECK(csv ==
              "n,m,c0,c1,c2,c3\n"
              "1,1,0,-1,,\n"
              "2,1,-1,0,1,\n"
              "3,1,0,6,0,-2\n");
    }
    SECTION("empty table is just the header") {
        CHECK(emit_table_csv({}) == "n,m,c0\n");
    }
}

TEST_CASE("quadrature payloads carry both weight routes", "[serialize]") {
    auto H = MomentFunctional::builtin("hermite", 8);
    const Json j = rule_to_json(gauss_rule(H, 2));
    CHECK(j["n"] == 2);
    CHECK(j["nodes"].size() == 2);
    CHECK(j["weights"].size() == 2);
    CHECK(j["weights_vandermonde"].size() == 2);
}
