#include "apolar/symfun.hpp"

#include "apolar/forms.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>

using namespace apolar;

namespace {

std::vector<VarId> blocks(std::uint32_t N) {
    std::vector<VarId> v;
    for (std::uint32_t b = 1; b <= N; ++b) v.push_back(xvar(b));
    return v;
}

Poly X(std::uint32_t b, std::uint32_t p = 1) { return Poly::var(xvar(b), p); }

// all weakly decreasing alpha with the given length and weight at most w
void for_each_composition(std::uint32_t length, std::uint32_t max_weight,
                          const std::function<void(const Composition&)>& fn) {
    std::vector<std::uint32_t> parts(length, 0);
    std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)> rec =
        [&](std::uint32_t pos, std::uint32_t cap, std::uint32_t left) {
            if (pos == length) {
                fn(Composition{parts});
                return;
            }
            for (std::uint32_t v = 0; v <= std::min(cap, left); ++v) {
                parts[pos] = v;
                rec(pos + 1, v, left - v);
            }
        };
    rec(0, max_weight, max_weight);
}

}  // namespace

TEST_CASE("stabilizer orders", "[symfun]") {
    CHECK(stab_order(Composition{{1, 1}}) == 2);
    CHECK(stab_order(Composition{{2, 1, 1, 0}}) == 2);  // multiplicities 1, 2, 1
    CHECK(stab_order(Composition{{3, 3, 3}}) == 6);
    CHECK(stab_order(Composition{{}}) == 1);
    CHECK_THROWS_AS(stab_order(Composition{{1, 2}}), std::invalid_argument);
}

TEST_CASE("monomial symmetric polynomials", "[symfun]") {
    CHECK(monomial_sym(Composition{{1, 1}}, blocks(2)) == X(1) * X(2));
    CHECK(monomial_sym(Composition{{2, 0}}, blocks(2)) == X(1, 2) + X(2, 2));
    CHECK(monomial_sym(Composition{{0, 0, 0}}, blocks(3)) == Poly(Rational(1)));
    CHECK(monomial_sym(Composition{{2, 1}}, blocks(2)) ==
          X(1, 2) * X(2) + X(1) * X(2, 2));
}

TEST_CASE("schur polynomials by bialternant", "[symfun]") {
    CHECK(schur({}, blocks(2)) == Poly(Rational(1)));
    CHECK(schur({1}, blocks(2)) == X(1) + X(2));
    CHECK(schur({1, 1}, blocks(2)) == X(1) * X(2));
    CHECK(schur({2}, blocks(2)) == X(1, 2) + X(1) * X(2) + X(2, 2));
    // Pieri sanity: s_1 * s_1 = s_2 + s_11
    CHECK(schur({1}, blocks(2)) * schur({1}, blocks(2)) ==
          schur({2}, blocks(2)) + schur({1, 1}, blocks(2)));
}

TEST_CASE("symmetrized discriminant family", "[symfun]") {
    const auto vars2 = blocks(2);
    const Poly delta = vandermonde(vars2);
    SECTION("hand instances") {
        CHECK(s_alpha_k(Composition{{1, 1}}, 2, vars2) == Rational(2) * X(1) * X(2) * delta.pow(2));
        CHECK(s_alpha_k(Composition{{2, 0}}, 2, vars2) == (X(1, 2) + X(2, 2)) * delta.pow(2));
        CHECK(s_alpha_k(Composition{{1, 0}}, 1, vars2) == -delta.pow(2));
    }
    SECTION("full symmetry under variable permutations") {
        for (std::uint32_t N = 2; N <= 4; ++N) {
            const auto vars = blocks(N);
            Composition alpha{{}};
            for (std::uint32_t i = 0; i < N; ++i) alpha.parts.push_back(N - i);
            const Poly s = s_alpha_k(alpha, 1, vars);
            // swap the first two variables
            std::map<VarId, VarId> swap01{{vars[0], vars[1]}, {vars[1], vars[0]}};
            CHECK(s.rename_vars(swap01) == s);
        }
    }
}

TEST_CASE("schur and monomial reductions of the symmetrized family", "[symfun][property]") {
    SECTION("hand instances") {
        CHECK(verify_schur_monomial_identities(Composition{{1, 1}}, 2, 2).holds);
        CHECK(verify_schur_monomial_identities(Composition{{1, 0}}, 1, 2).holds);
        CHECK(verify_schur_monomial_identities(Composition{{2, 1, 0}}, 1, 3).holds);
    }
    SECTION("even case, weakly decreasing alpha, N <= 4, |alpha| <= 6") {
        for (std::uint32_t N = 1; N <= 4; ++N)
            for (std::uint32_t k : {0u, 2u})
                for_each_composition(N, 6 - std::min(6u, N), [&](const Composition& alpha) {
                    CAPTURE(alpha.parts, k, N);
                    CHECK(verify_schur_monomial_identities(alpha, k, N).holds);
                });
    }
    SECTION("odd case, strictly decreasing alpha") {
        for (std::uint32_t N = 2; N <= 4; ++N)
            for_each_composition(N, 6, [&](const Composition& alpha) {
                bool strict = true;
                for (std::size_t i = 0; i + 1 < alpha.parts.size(); ++i)
                    if (alpha.parts[i] <= alpha.parts[i + 1]) strict = false;
                for (std::size_t i = 0; i < alpha.parts.size(); ++i)
                    if (alpha.parts[i] + i + 1 < N) strict = false;  // lambda_i >= 0
                if (!strict) return;
                CAPTURE(alpha.parts, N);
                CHECK(verify_schur_monomial_identities(alpha, 1, N).holds);
                if (alpha.weight() <= 4)
                    CHECK(verify_schur_monomial_identities(alpha, 3, N).holds);
            });
    }
    SECTION("negative lambda is rejected") {
        CHECK_THROWS_AS(verify_schur_monomial_identities(Composition{{1, 1}}, 1, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("moment images of the symmetrized family", "[symfun]") {
    auto H = MomentFunctional::builtin("hermite", 16);
    SECTION("pair products reduce to central-moment squares") {
        CHECK(p_alpha_k(H, Composition{{1, 1}}, 0) == Rational(2) * X(0, 2));
        CHECK(p_alpha_k_unsymmetrized(H, Composition{{1, 1}}, 0) == X(0, 2));
        CHECK(expectation_x0(H, p_alpha_k_unsymmetrized(H, Composition{{1, 1}}, 0)) ==
              Rational(1));
    }
    SECTION("pure discriminant ties to the leading coefficient") {
        const Poly p = p_alpha_k(H, Composition{{0, 0}}, 2);
        CHECK(p == Poly(Rational(4)));
        CHECK(p == Poly(Rational(2) * leading_coefficient(H, 2, 1)));
    }
    SECTION("odd central moments vanish") {
        CHECK(expectation_x0(H, p_alpha_k(H, Composition{{1, 1, 1}}, 0)) == Rational(0));
    }
    SECTION("symmetrized equals N! times unsymmetrized for equal-moment classes") {
        auto L = MomentFunctional::builtin("laguerre", 20);
        for (const Composition& alpha : {Composition{{2, 1}}, Composition{{3, 1, 0}}}) {
            const auto N = static_cast<unsigned>(alpha.parts.size());
            CHECK(p_alpha_k(L, alpha, 1) ==
                  Rational(factorial(N)) * p_alpha_k_unsymmetrized(L, alpha, 1));
        }
    }
}

TEST_CASE("central moment law", "[symfun][property]") {
    for (const char* name : {"hermite", "laguerre"}) {
        auto M = MomentFunctional::builtin(name, 16);
        const Rational mean = M.moment1(1, 1);
        for (std::uint32_t N = 1; N <= 6; ++N) {
            Composition alpha{std::vector<std::uint32_t>(N, 1)};
            const Poly unsym = p_alpha_k_unsymmetrized(M, alpha, 0);
            // independent oracle: binomial expansion of E (a - x0)^N
            Rational expected(0);
            for (std::uint32_t j = 0; j <= N; ++j) {
                Rational t = Rational(binomial(N, j)) * rational_pow(mean, N - j) *
                             M.moment1(1, j);
                if (j % 2 == 1) t = -t;
                expected += t;
            }
            CAPTURE(name, N);
            CHECK(expectation_x0(M, unsym) == expected);
            CHECK(expectation_x0(M, p_alpha_k(M, alpha, 0)) ==
                  Rational(factorial(N)) * expected);
        }
    }
}

TEST_CASE("root averages over orthogonal polynomial roots", "[symfun]") {
    auto H = MomentFunctional::builtin("hermite", 12);
    SECTION("numeric route resolves the index convention") {
        auto report = schur_average_tilde(H, 2, Composition{{2, 1}});
        CHECK_THAT(report.value, Catch::Matchers::WithinAbs(2.0, 1e-9));
        CHECK_THAT(report.rising_times_Nfact, Catch::Matchers::WithinAbs(2.0, 1e-9));
        CHECK(report.matched ==
              "value = N! * s_lambda(nodes) with lambda_i = alpha_i + i - 1");
    }
    SECTION("trivial composition") {
        auto report = schur_average_tilde(H, 3, Composition{{0, 0}});
        CHECK_THAT(report.value, Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
    SECTION("exact route on the degree-2 gaussian roots") {
        const std::vector<Rational> roots{Rational(1), Rational(-1)};
        for (const Composition& alpha :
             {Composition{{2, 1}}, Composition{{3, 1}}, Composition{{2, 2}}, Composition{{4, 2, 1}}}) {
            auto [value, reference] = schur_average_tilde_exact(roots, alpha);
            CAPTURE(alpha.parts);
            CHECK(value == reference);
        }
        auto [v21, r21] = schur_average_tilde_exact(roots, Composition{{2, 1}});
        CHECK(v21 == Rational(2));
    }
}

TEST_CASE("moment images equal root averages within the degree bound", "[symfun][property]") {
    // P_{alpha,k} evaluated at a rational point against the tensor-quadrature
    // average of the shifted symmetrized polynomial over the rule's roots.
    auto M = MomentFunctional::builtin("hermite", 24);
    const std::uint32_t n = 4;  // per-variable degree cap 2n-1 = 7
    const auto rule = gauss_rule(M, n);
    for (const Composition& alpha : {Composition{{2, 1}}, Composition{{1, 1}}, Composition{{3, 2}}}) {
        for (std::uint32_t k : {0u, 1u, 2u}) {
            const std::size_t N = alpha.parts.size();
            if (alpha.parts[0] + k * (N - 1) > 2 * n - 1) continue;
            const Poly P = p_alpha_k(M, alpha, k);
            std::vector<VarId> vars;
            for (std::uint32_t b = 1; b <= N; ++b) vars.push_back(xvar(b));
            const Poly S = s_alpha_k(alpha, k, vars);
            for (const Rational& x0 : {Rational(0), Rational(1, 2), Rational(-2)}) {
                std::map<VarId, Poly> shift;
                for (VarId v : vars) shift[v] = Poly::var(v) - Poly(x0);
                const Poly shifted = S.substitute(shift);
                const double averaged = tensor_quadrature(M, rule, shifted);
                const double direct = rational_to_double(P.eval([&](VarId) { return x0; }));
                CAPTURE(alpha.parts, k, rational_to_string(x0));
                CHECK(std::abs(averaged - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
            }
        }
    }
}

TEST_CASE("transvectants are moment images of the pair family", "[symfun]") {
    auto H = MomentFunctional::builtin("hermite", 16);
    for (std::uint32_t n = 2; n <= 4; ++n)
        for (std::uint32_t m = 1; m <= n; ++m)
            for (std::uint32_t k = 0; k <= m; ++k) {
                if (n - k < m - k) continue;
                BinaryForm f = form_from_moments(H, 1, n);
                BinaryForm g = form_from_moments(H, 1, m);
                const Poly t = dehomogenize(transvectant(f, g, k));
                Composition alpha{{n - k, m - k}};
                CAPTURE(n, m, k);
                CHECK(Rational(2) * t == p_alpha_k(H, alpha, k));
            }
}
