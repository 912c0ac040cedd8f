#include "apolar/quadrature.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace apolar;

namespace {

Poly X(std::uint32_t b, std::uint32_t p = 1) { return Poly::var(xvar(b), p); }

}  // namespace

TEST_CASE("real_roots", "[quadrature]") {
    SECTION("quadratic") {
        auto roots = real_roots(X(0, 2) - Poly(Rational(1)));
        REQUIRE(roots.size() == 2);
        CHECK_THAT(roots[0], Catch::Matchers::WithinAbs(-1.0, 1e-12));
        CHECK_THAT(roots[1], Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("cubic with zero root") {
        auto roots = real_roots(X(0, 3) - Rational(3) * X(0));
        REQUIRE(roots.size() == 3);
        CHECK_THAT(roots[0], Catch::Matchers::WithinAbs(-std::sqrt(3.0), 1e-10));
        CHECK_THAT(roots[1], Catch::Matchers::WithinAbs(0.0, 1e-10));
        CHECK_THAT(roots[2], Catch::Matchers::WithinAbs(std::sqrt(3.0), 1e-10));
    }
    SECTION("linear") {
        auto roots = real_roots(X(0));
        REQUIRE(roots.size() == 1);
        CHECK_THAT(roots[0], Catch::Matchers::WithinAbs(0.0, 1e-15));
    }
    SECTION("complex pair contributes nothing") {
        CHECK(real_roots(X(0, 2) + Poly(Rational(1))).empty());
    }
    SECTION("repeated roots are an error") {
        CHECK_THROWS_WITH(real_roots((X(0) - Poly(Rational(1))).pow(2)),
                          Catch::Matchers::ContainsSubstring("not distinct"));
    }
    SECTION("degree zero rejected") {
        CHECK_THROWS_AS(real_roots(Poly(Rational(2))), std::invalid_argument);
    }
}

TEST_CASE("cramer weights on hand instances", "[quadrature]") {
    auto H = MomentFunctional::builtin("hermite", 8);
    SECTION("two gaussian nodes") {
        auto w = weights_cramer(H, {-1.0, 1.0});
        REQUIRE(w.size() == 2);
        CHECK_THAT(w[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
        CHECK_THAT(w[1], Catch::Matchers::WithinAbs(0.5, 1e-12));
    }
    SECTION("three gaussian nodes") {
        const double s = std::sqrt(3.0);
        auto w = weights_cramer(H, {-s, 0.0, s});
        REQUIRE(w.size() == 3);
        CHECK_THAT(w[0], Catch::Matchers::WithinAbs(1.0 / 6.0, 1e-12));
        CHECK_THAT(w[1], Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
        CHECK_THAT(w[2], Catch::Matchers::WithinAbs(1.0 / 6.0, 1e-12));
    }
    SECTION("uniform nodes") {
        auto U = MomentFunctional::builtin("uniform_pm1", 8);
        const double s = 1.0 / std::sqrt(3.0);
        auto w = weights_cramer(U, {-s, s});
        CHECK_THAT(w[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK_THAT(w[1], Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("coincident nodes rejected") {
        CHECK_THROWS_AS(weights_cramer(H, {1.0, 1.0}), std::domain_error);
    }
}

TEST_CASE("gauss rules are exact through degree 2n-1", "[quadrature]") {
    for (const char* name : {"hermite", "uniform_pm1", "laguerre", "chebyshev1"}) {
        for (std::uint32_t n = 1; n <= 8; ++n) {
            auto M = MomentFunctional::builtin(name, 2 * n + 2);
            const auto rule = gauss_rule(M, n);
            REQUIRE(rule.nodes.size() == n);
            for (std::uint32_t k = 0; k <= 2 * n - 1; ++k) {
                const double err =
                    std::abs(rational_to_double(rule_power_sum(rule, k) - M.moment1(1, k)));
                const double a_k = rational_to_double(M.moment1(1, k));
                INFO(name << " n=" << n << " k=" << k);
                CHECK(err <= 1e-9 * std::max(1.0, std::abs(a_k)));
            }
        }
    }
}

TEST_CASE("gauss exactness fails at order 2n", "[quadrature]") {
    for (std::uint32_t n = 1; n <= 6; ++n) {
        auto M = MomentFunctional::builtin("hermite", 2 * n + 2);
        const auto rule = gauss_rule(M, n);
        const double err =
            std::abs(rational_to_double(rule_power_sum(rule, 2 * n) - M.moment1(1, 2 * n)));
        const double a_2n = rational_to_double(M.moment1(1, 2 * n));
        CHECK(err > 1e-6 * std::max(1.0, std::abs(a_2n)));
    }
}

TEST_CASE("weight routes agree", "[quadrature][property]") {
    for (const char* name : {"hermite", "uniform_pm1", "laguerre"}) {
        for (std::uint32_t n = 1; n <= 8; ++n) {
            auto M = MomentFunctional::builtin(name, 2 * n + 2);
            const auto rule = gauss_rule(M, n);
            for (std::uint32_t i = 0; i < n; ++i)
                CHECK(std::abs(rule.weights[i] - rule.weights_vandermonde[i]) <= 1e-12 *
                          std::max(1.0, std::abs(rule.weights[i])));
        }
    }
}

TEST_CASE("tensor quadrature", "[quadrature]") {
    auto M = MomentFunctional::builtin("hermite", 12);
    const auto rule = gauss_rule(M, 2);
    SECTION("hand instances") {
        CHECK_THAT(tensor_quadrature(M, rule, X(1) * X(2)), Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK_THAT(tensor_quadrature(M, rule, (X(2) - X(1)).pow(2)),
                   Catch::Matchers::WithinAbs(2.0, 1e-9));
        CHECK_THAT(tensor_quadrature(M, rule, Poly(Rational(7))),
                   Catch::Matchers::WithinAbs(7.0, 1e-12));
    }
    SECTION("degree bound enforced") {
        CHECK_THROWS_AS(tensor_quadrature(M, rule, X(1, 4)), std::invalid_argument);
    }
    SECTION("matches the functional on random polynomials within bounds") {
        std::mt19937_64 gen(0x1234u);
        std::uniform_int_distribution<int> coef(-5, 5);
        std::uniform_int_distribution<std::uint32_t> deg(0, 3);
        auto M4 = MomentFunctional::builtin("hermite", 24);
        const auto rule4 = gauss_rule(M4, 2);
        for (int trial = 0; trial < 50; ++trial) {
            Poly p;
            for (int t = 0; t < 5; ++t) {
                Monomial m;
                for (std::uint32_t b = 1; b <= 3; ++b) {
                    const std::uint32_t d = deg(gen);
                    if (d > 0) m.emplace_back(xvar(b), d);
                }
                p.add_term(m, Rational(coef(gen)));
            }
            std::vector<std::uint32_t> ambient{1, 2, 3};
            const double exact = rational_to_double(apply_E(M4, p, &ambient));
            const double quad = tensor_quadrature(M4, rule4, p);
            CHECK(std::abs(quad - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("discriminant moments", "[quadrature]") {
    SECTION("two gaussian variables by hand") {
        auto M = MomentFunctional::builtin("hermite", 12);
        auto out = discriminant_moment(M, 2, 1, 2);
        CHECK(out.exact == Rational(2));
        CHECK_THAT(out.quadrature, Catch::Matchers::WithinAbs(2.0, 1e-9));
        REQUIRE(out.product_form.has_value());
        CHECK_THAT(*out.product_form, Catch::Matchers::WithinAbs(2.0, 1e-9));
        CHECK(out.agrees);
    }
    SECTION("odd powers vanish by antisymmetry") {
        auto M = MomentFunctional::builtin("hermite", 16);
        std::vector<std::uint32_t> ambient{1, 2};
        const Poly disc = vandermonde({xvar(1), xvar(2)});
        CHECK(apply_E(M, disc.pow(3), &ambient) == Rational(0));
        CHECK(apply_E(M, disc, &ambient) == Rational(0));
    }
    SECTION("sweep within the degree bound") {
        for (const char* name : {"hermite", "laguerre"}) {
            for (std::uint32_t N = 2; N <= 3; ++N)
                for (std::uint32_t n = 2; n <= 5; ++n)
                    for (std::uint32_t k = 1; 2 * k * (N - 1) <= 2 * n - 1; ++k) {
                        auto M = MomentFunctional::builtin(name, 4 * n + 2);
                        auto out = discriminant_moment(M, N, k, n);
                        INFO(name << " N=" << N << " k=" << k << " n=" << n);
                        CHECK(out.agrees);
                    }
        }
    }
    SECTION("degree precondition enforced") {
        auto M = MomentFunctional::builtin("hermite", 12);
        CHECK_THROWS_AS(discriminant_moment(M, 3, 2, 2), std::invalid_argument);
    }
}

TEST_CASE("sylvester residual report", "[quadrature]") {
    SECTION("n = 1 linear case") {
        auto L = MomentFunctional::builtin("laguerre", 6);
        auto report = sylvester_decompose(L, 1);
        REQUIRE(report.rule.nodes.size() == 1);
        CHECK_THAT(report.rule.nodes[0], Catch::Matchers::WithinAbs(1.0, 1e-12));  // a1/a0
        CHECK_THAT(report.rule.weights[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK(report.max_residual <= 1e-12);
    }
    SECTION("gaussian rules") {
        auto H = MomentFunctional::builtin("hermite", 12);
        CHECK(sylvester_decompose(H, 2).max_residual <= 1e-12);
        CHECK(sylvester_decompose(H, 3).max_residual <= 1e-10);
    }
}
