#include "apolar/forms.hpp"
#include "apolar/moments.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <thread>

using namespace apolar;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 gen(0xc0ffeeu);
    return gen;
}

Rational rnd_rat(int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 6);
    return Rational(num(rng()), den(rng()));
}

BinaryForm random_form(std::uint32_t n, bool nonzero_a0 = false) {
    BinaryForm f{n, {}};
    for (std::uint32_t k = 0; k <= n; ++k) f.coeffs.push_back(rnd_rat());
    if (nonzero_a0 && f.coeffs[0] == 0) f.coeffs[0] = Rational(1);
    return f;
}

LinearChange random_change() {
    LinearChange phi{rnd_rat(-4, 4), rnd_rat(-4, 4), rnd_rat(-4, 4), rnd_rat(-4, 4)};
    while (phi.det() == 0) phi.c11 += 1;
    return phi;
}

// Restores homogeneity of a block-0 polynomial in x0 alone by padding each
// monomial with the missing power of y0.
Poly rehomogenize(const Poly& p, std::uint32_t degree) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        std::uint32_t xp = 0;
        for (const auto& [v, pw] : m) xp += pw;
        Monomial mono;
        if (xp > 0) mono.emplace_back(xvar(0), xp);
        if (degree - xp > 0) mono.emplace_back(yvar(0), degree - xp);
        out.add_term(mono, c);
    }
    return out;
}

}  // namespace

TEST_CASE("form/poly conversions follow the signed binomial basis", "[covariants]") {
    auto M = MomentFunctional::builtin("hermite", 4);
    BinaryForm f = form_from_moments(M, 1, 2);
    CHECK(f.coeffs == std::vector<Rational>{1, 0, 1});
    Poly p = form_to_poly(f);
    CHECK(p == Poly::var(xvar(0), 2) + Poly::var(yvar(0), 2));
    CHECK(poly_to_form(p, 2) == f);

    CHECK(form_from_moments(M, 1, 0).coeffs == std::vector<Rational>{1});
    auto U = MomentFunctional::builtin("uniform_pm1", 2);
    CHECK(form_from_moments(U, 1, 1).coeffs == std::vector<Rational>{2, 0});
}

TEST_CASE("umbral operator reproduces the generic form from one bracket", "[covariants]") {
    for (std::uint32_t n : {1u, 2u, 3u, 5u}) {
        BinaryForm f = random_form(n);
        UmbralContext ctx;
        ctx.block_class = {{3u, 1u}};
        ctx.class_form = {{1u, f}};
        CHECK(umbral_U(bracket(3, 0).pow(n), ctx) == form_to_poly(f));
    }
}

TEST_CASE("umbral operator kills off-degree monomials", "[covariants]") {
    BinaryForm f = random_form(3);
    UmbralContext ctx;
    ctx.block_class = {{1u, 1u}};
    ctx.class_form = {{1u, f}};
    Poly offdeg = Poly::var(xvar(1), 2);  // block degree 2 != 3
    CHECK(umbral_U(offdeg, ctx).is_zero());
    CHECK(umbral_U(Poly::var(xvar(1), 2) * Poly::var(yvar(1), 1), ctx) ==
          Poly(f.coeffs[2]));
}

TEST_CASE("umbral operator agrees with the moment-functional route on brackets",
          "[covariants][oracle]") {
    // Oracle: evaluate y = 1, push moments (the forms' coefficients) through
    // the functional, and rehomogenize by the block-0 degree.
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint32_t n = 3, m = 2;
        BinaryForm f = random_form(n, /*nonzero_a0=*/true);
        BinaryForm g = random_form(m);
        UmbralContext ctx;
        ctx.block_class = {{1u, 1u}, {2u, 2u}};
        ctx.class_form = {{1u, f}, {2u, g}};
        Poly p = bracket(1, 0).pow(n - m) * bracket(2, 1).pow(m);

        MomentFunctional M(0);
        M.set_class_moments(1, f.coeffs);
        M.set_class_moments(2, g.coeffs);
        M.assign_block(2, 2);
        Poly via_moments = rehomogenize(apply_E0(M, dehomogenize(p)), n - m);

        CHECK(umbral_U(p, ctx) == via_moments);
    }
}

TEST_CASE("apolar pairing", "[covariants]") {
    SECTION("zero second form gives zero") {
        BinaryForm f = random_form(4);
        BinaryForm z{2, {0, 0, 0}};
        CHECK(apolar_pairing(f, z).is_zero());
    }
    SECTION("hand value at equal degrees") {
        // U[2 1] = a_{1,0} a_{2,1} - a_{1,1} a_{2,0} with [i j] = x_i y_j - x_j y_i
        BinaryForm f{1, {1, 0}}, g{1, {0, 1}};
        CHECK(apolar_pairing(f, g) == Poly(Rational(1)));
        CHECK(apolar_pairing(g, f) == Poly(Rational(-1)));
    }
    SECTION("degree order enforced") {
        CHECK_THROWS_AS(apolar_pairing(BinaryForm{1, {1, 1}}, BinaryForm{2, {1, 1, 1}}),
                        std::invalid_argument);
    }
}

TEST_CASE("joint covariant hand instances", "[covariants]") {
    SECTION("degree 3, target 2, gaussian coefficients") {
        auto M = MomentFunctional::builtin("hermite", 3);
        BinaryForm f = form_from_moments(M, 1, 3);
        Poly expected = Poly::var(xvar(0), 2) - Poly::var(yvar(0), 2);
        CHECK(covariant_J(f, {}, 2) == expected);
        CHECK(covariant_J_det(f, {}, 2) == expected);
    }
    SECTION("degree 1 determinant") {
        BinaryForm f{1, {Rational(3), Rational(5)}};
        Poly expected = Rational(5) * Poly::var(yvar(0)) - Rational(3) * Poly::var(xvar(0));
        CHECK(covariant_J(f, {}, 1) == expected);
        CHECK(covariant_J_det(f, {}, 1) == expected);
    }
    SECTION("zero input gives zero") {
        BinaryForm z{3, {0, 0, 0, 0}};
        CHECK(covariant_J(z, {}, 2).is_zero());
        CHECK(covariant_J_det(z, {}, 2).is_zero());
    }
    SECTION("equal auxiliary rows vanish") {
        BinaryForm f = random_form(3);
        BinaryForm g = random_form(3);
        CHECK(covariant_J_det(f, {g, g}, 3).is_zero());
        CHECK(covariant_J(f, {g, g}, 3).is_zero());
    }
}

TEST_CASE("joint covariant argument checking", "[covariants]") {
    BinaryForm f = random_form(4);
    CHECK_THROWS_AS(covariant_J(f, {}, 2), std::invalid_argument);           // 2m-n = 0
    CHECK_THROWS_AS(covariant_J(f, {}, 3), std::invalid_argument);           // needs one aux
    CHECK_THROWS_AS(covariant_J(f, {random_form(2)}, 3), std::invalid_argument);  // aux degree
}

TEST_CASE("cross-path and apolarity on random forms", "[covariants][property]") {
    for (std::uint32_t n = 1; n <= 4; ++n) {
        for (std::uint32_t m = (n + 2) / 2; m <= n; ++m) {
            const std::uint32_t l = 2 * m - n;
            for (int trial = 0; trial < 3; ++trial) {
                BinaryForm f = random_form(n);
                std::vector<BinaryForm> aux;
                for (std::uint32_t t = 1; t < l; ++t) aux.push_back(random_form(m));
                Poly sym = covariant_J(f, aux, m);
                Poly det_path = covariant_J_det(f, aux, m);
                CHECK(sym == det_path);
                BinaryForm g = poly_to_form(sym, m);
                CHECK(apolar_pairing(f, g).is_zero());
            }
        }
    }
}

TEST_CASE("covariant of gaussian-moment form is apolar to it", "[covariants]") {
    auto M = MomentFunctional::builtin("hermite", 12);
    for (std::uint32_t k = 1; k <= 3; ++k) {
        BinaryForm f = form_from_moments(M, 1, 2 * k - 1);
        Poly g = covariant_J(f, {}, k);
        REQUIRE_FALSE(g.is_zero());
        CHECK(apolar_pairing(f, poly_to_form(g, k)).is_zero());
    }
}

TEST_CASE("transform_form", "[covariants]") {
    BinaryForm f = random_form(3);
    SECTION("identity change") {
        LinearChange id{1, 0, 0, 1};
        CHECK(transform_form(f, id) == f);
    }
    SECTION("swap applied twice is the identity") {
        LinearChange sw{0, 1, 1, 0};
        CHECK(transform_form(transform_form(f, sw), sw) == f);
    }
    SECTION("diagonal scaling matches direct substitution") {
        LinearChange di{Rational(3), 0, 0, 1};
        CHECK(form_to_poly(transform_form(f, di)) == substitute_block0(form_to_poly(f), di));
    }
    SECTION("singular change rejected") {
        CHECK_THROWS_AS(transform_form(f, LinearChange{1, 2, 2, 4}), std::invalid_argument);
    }
}

TEST_CASE("covariance under linear changes of variables", "[covariants][property]") {
    struct Case {
        std::uint32_t n, m;
    };
    for (Case c : {Case{3, 2}, Case{2, 2}, Case{5, 3}}) {
        const std::uint32_t l = 2 * c.m - c.n;
        const std::uint32_t w = covariant_index(c.n, c.m);
        CHECK(w == binomial(c.n - c.m + 1, 2) + binomial(c.m, 2));
        for (int trial = 0; trial < 3; ++trial) {
            BinaryForm f = random_form(c.n);
            std::vector<BinaryForm> aux;
            for (std::uint32_t t = 1; t < l; ++t) aux.push_back(random_form(c.m));
            LinearChange phi = random_change();

            BinaryForm ft = transform_form(f, phi);
            std::vector<BinaryForm> auxt;
            for (const auto& g : aux) auxt.push_back(transform_form(g, phi));

            Poly lhs = covariant_J_det(ft, auxt, c.m);
            Poly rhs = rational_pow(phi.det(), w) *
                       substitute_block0(covariant_J_det(f, aux, c.m), phi);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("transvectants", "[covariants]") {
    SECTION("order zero is the plain product") {
        BinaryForm f = random_form(2), g = random_form(3);
        CHECK(transvectant(f, g, 0) == form_to_poly(f) * form_to_poly(g));
    }
    SECTION("first transvectant of a form with itself vanishes") {
        for (std::uint32_t n : {1u, 2u, 3u, 4u}) {
            BinaryForm f = random_form(n);
            CHECK(transvectant(f, f, 1).is_zero());
        }
    }
    SECTION("hessian of a quadratic is twice its discriminant expression") {
        BinaryForm f{2, {rnd_rat(), rnd_rat(), rnd_rat()}};
        const Rational expected = Rational(2) * (f.coeffs[0] * f.coeffs[2] - f.coeffs[1] * f.coeffs[1]);
        CHECK(hessian(f) == Poly(expected));
    }
    SECTION("degree of a nonzero transvectant") {
        BinaryForm f = random_form(4), g = random_form(3);
        for (std::uint32_t k = 0; k <= 3; ++k) {
            Poly t = transvectant(f, g, k);
            if (!t.is_zero()) CHECK(t.total_degree() == 4 + 3 - 2 * k);
        }
    }
    SECTION("order beyond a degree is rejected") {
        CHECK_THROWS_AS(transvectant(random_form(2), random_form(3), 3), std::invalid_argument);
    }
}

TEST_CASE("shared immutable inputs evaluate identically across threads", "[covariants]") {
    auto M = MomentFunctional::builtin("hermite", 8);
    const BinaryForm f = form_from_moments(M, 1, 3);
    const Poly reference = covariant_J(f, {}, 2);
    std::vector<Poly> results(4);
    {
        std::vector<std::thread> workers;
        for (auto& slot : results)
            workers.emplace_back([&M, &f, &slot] {
                slot = covariant_J(f, {}, 2) + Poly(apply_E(M, Poly::var(xvar(1), 2))) -
                       Poly(Rational(1));
            });
        for (auto& w : workers) w.join();
    }
    for (const auto& r : results) CHECK(r == reference);
}

TEST_CASE("apolar space dimensions", "[covariants]") {
    for (int trial = 0; trial < 5; ++trial) {
        CHECK(apolar_space_dim(random_form(3), 2) == 1);
        CHECK(apolar_space_dim(random_form(4), 2) == 0);
        CHECK(apolar_space_dim(random_form(5), 4) == 3);
    }
    BinaryForm z{3, {0, 0, 0, 0}};
    CHECK(apolar_space_dim(z, 2) == 3);
    CHECK_THROWS_AS(apolar_space_dim(random_form(2), 3), std::invalid_argument);
}
