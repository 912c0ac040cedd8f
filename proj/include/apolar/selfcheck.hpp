#pragma once

// The acceptance suite: every library-level guarantee, runnable from the CLI
// (`apolar selfcheck`) and from the test harness. Each check returns one
// pass/fail line; exact checks admit no tolerance at all, quadrature checks
// use the stated tolerance.

#include "apolar/forms.hpp"
#include "apolar/moments.hpp"
#include "apolar/multivar.hpp"
#include "apolar/ops.hpp"
#include "apolar/poly.hpp"
#include "apolar/quadrature.hpp"
#include "apolar/symfun.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace apolar {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;

    explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

namespace selfcheck_detail {

inline const std::vector<std::string> kTables{"hermite", "uniform_pm1", "laguerre"};

inline std::vector<Rational> unit_interval_moments(std::uint32_t up_to) {
    std::vector<Rational> a;
    for (std::uint32_t k = 0; k <= up_to; ++k) a.emplace_back(1, k + 1);
    return a;
}

// class 1 = named table, classes 2..m pairwise distinct auxiliaries. The
// auxiliaries are non-symmetric tables (factorials, unit-interval powers,
// point masses): rows of symmetric tables share a parity zero pattern that
// can align into structural degeneracies of the sharpness determinant.
inline MomentFunctional gops_fixture(const std::string& class1, std::uint32_t n, std::uint32_t m) {
    const std::uint32_t up_to = 2 * n + 4;
    MomentFunctional M(0);
    M.set_class_moments(1, builtin_moments({class1, {}}, up_to));
    std::vector<std::vector<Rational>> pool;
    if (class1 != "laguerre") pool.push_back(builtin_moments({"laguerre", {}}, up_to));
    pool.push_back(unit_interval_moments(up_to));
    for (const Rational& t : {Rational(3, 2), Rational(5, 2), Rational(2, 3), Rational(7, 2)}) {
        std::vector<Rational> a;
        for (std::uint32_t k = 0; k <= up_to; ++k) a.push_back(rational_pow(t, k));
        pool.push_back(std::move(a));
    }
    if (m - 1 > pool.size()) throw std::invalid_argument("gops_fixture: auxiliary pool exhausted");
    for (std::uint32_t cls = 2; cls <= m; ++cls) M.set_class_moments(cls, pool[cls - 2]);
    return M;
}

inline MomentFunctional random_moment_fixture(std::uint32_t n, std::uint32_t m,
                                              std::mt19937_64& gen) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    const std::uint32_t up_to = 2 * n + 4;
    MomentFunctional M(0);
    for (std::uint32_t cls = 1; cls <= m; ++cls) {
        std::vector<Rational> a;
        for (std::uint32_t k = 0; k <= up_to; ++k) a.emplace_back(num(gen), den(gen));
        if (cls == 1 && a[0] == 0) a[0] = Rational(1);
        M.set_class_moments(cls, a);
    }
    return M;
}

inline BinaryForm random_form(std::uint32_t n, std::mt19937_64& gen) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 6);
    BinaryForm f{n, {}};
    for (std::uint32_t k = 0; k <= n; ++k) f.coeffs.emplace_back(num(gen), den(gen));
    return f;
}

inline std::map<MultiIndex, Rational> point_mass_box(const std::vector<Rational>& point,
                                                     std::uint32_t up_to) {
    std::map<MultiIndex, Rational> box;
    MultiIndex k(point.size(), 0);
    while (true) {
        Rational v(1);
        for (std::size_t c = 0; c < point.size(); ++c) v *= rational_pow(point[c], k[c]);
        box[k] = v;
        std::size_t i = 0;
        while (i < k.size() && k[i] == up_to) k[i++] = 0;
        if (i == k.size()) break;
        ++k[i];
    }
    return box;
}

inline MomentFunctional product_fixture(const std::vector<std::string>& names,
                                        std::uint32_t up_to, std::size_t aux_classes) {
    MomentFunctional M = MomentFunctional::product(names, up_to);
    for (std::size_t t = 0; t < aux_classes; ++t) {
        std::vector<Rational> point;
        for (std::size_t c = 0; c < names.size(); ++c)
            point.emplace_back(Rational(t + 2) + Rational(2 * c + 1, 2 * c + 2));
        M.set_class_moments(static_cast<std::uint32_t>(2 + t), point_mass_box(point, up_to));
    }
    return M;
}

// All (n, m) with 1 <= m <= n <= n_max admitting the joint covariant.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> covariant_pairs(std::uint32_t n_max) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t n = 1; n <= n_max; ++n)
        for (std::uint32_t m = 1; m <= n; ++m)
            if (2 * m >= n + 1) pairs.emplace_back(n, m);
    return pairs;
}

struct CovariantInstance {
    BinaryForm f;
    std::vector<BinaryForm> aux;
    std::uint32_t m;
    std::string label;
};

// Builtin-moment instances plus 20 deterministic random ones, spread over the
// admissible degree pairs.
inline std::vector<CovariantInstance> covariant_instances(std::uint32_t n_max) {
    std::vector<CovariantInstance> out;
    const auto pairs = covariant_pairs(n_max);
    for (const auto& [n, m] : pairs) {
        const std::uint32_t l = 2 * m - n;
        std::size_t which = 0;
        for (const auto& table : kTables) {
            auto M = MomentFunctional::builtin(table, n);
            CovariantInstance inst;
            inst.f = form_from_moments(M, 1, n);
            for (std::uint32_t t = 1; t < l; ++t) {
                const auto& aux_table = kTables[(which + t) % kTables.size()];
                inst.aux.push_back(form_from_moments(MomentFunctional::builtin(aux_table, m), 1, m));
            }
            inst.m = m;
            inst.label = table + " n=" + std::to_string(n) + " m=" + std::to_string(m);
            out.push_back(std::move(inst));
            ++which;
        }
    }
    std::mt19937_64 gen(0xfeed5eedu);
    for (int t = 0; t < 20; ++t) {
        const auto& [n, m] = pairs[t % pairs.size()];
        CovariantInstance inst;
        inst.f = random_form(n, gen);
        for (std::uint32_t a = 1; a < 2 * m - n; ++a) inst.aux.push_back(random_form(m, gen));
        inst.m = m;
        inst.label = "random n=" + std::to_string(n) + " m=" + std::to_string(m);
        out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace selfcheck_detail

// 1. + 2.: the two covariant routes agree exactly, and the result is apolar
// to the source form (computed together, reported separately).
inline std::pair<CheckResult, CheckResult> check_covariant_paths_and_apolarity() {
    namespace sd = selfcheck_detail;
    CheckResult paths{"cross-path covariant oracle: symbolic == determinantal, 1 <= m <= n <= 5"};
    CheckResult apolar{"apolarity guarantee: {f, J(f)} == 0 on the same sweep"};
    std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> expansions;
    std::size_t instances = 0;
    for (const auto& inst : sd::covariant_instances(5)) {
        const std::uint32_t n = inst.f.degree;
        auto key = std::make_pair(n, inst.m);
        auto it = expansions.find(key);
        if (it == expansions.end())
            it = expansions.emplace(key, expand_brackets(joint_covariant_brackets(n, inst.m))).first;
        const Poly sym = covariant_J_from_expansion(it->second, inst.f, inst.aux, inst.m);
        const Poly det_path = covariant_J_det(inst.f, inst.aux, inst.m);
        ++instances;
        if (!(sym == det_path)) paths.fail("mismatch at " + inst.label);
        if (!sym.is_zero()) {
            const BinaryForm g = poly_to_form(sym, inst.m);
            if (!apolar_pairing(inst.f, g).is_zero()) apolar.fail("nonzero pairing at " + inst.label);
        }
    }
    if (paths.pass) paths.detail = std::to_string(instances) + " instances, exact equality";
    if (apolar.pass) apolar.detail = std::to_string(instances) + " instances, exact vanishing";
    return {paths, apolar};
}

// 3. covariance under linear changes of variables, with the index computed
// from the bracket structure.
inline CheckResult check_gl2_covariance() {
    namespace sd = selfcheck_detail;
    CheckResult result{"linear-change covariance: J(phi.f) == (det phi)^w J(f) o phi"};
    std::mt19937_64 gen(0xabba7u);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::size_t instances = 0;
    for (const auto& inst : sd::covariant_instances(5)) {
        const std::uint32_t n = inst.f.degree;
        const std::uint32_t w = covariant_index(n, inst.m);
        if (w != binomial(n - inst.m + 1, 2) + binomial(inst.m, 2)) {
            result.fail("index mismatch at " + inst.label);
            continue;
        }
        const Poly base = covariant_J_det(inst.f, inst.aux, inst.m);
        for (int t = 0; t < 10; ++t) {
            LinearChange phi{Rational(num(gen), den(gen)), Rational(num(gen), den(gen)),
                             Rational(num(gen), den(gen)), Rational(num(gen), den(gen))};
            if (phi.det() == 0) {
                --t;
                continue;
            }
            std::vector<BinaryForm> auxt;
            for (const auto& g : inst.aux) auxt.push_back(transform_form(g, phi));
            const Poly lhs = covariant_J_det(transform_form(inst.f, phi), auxt, inst.m);
            const Poly rhs = rational_pow(phi.det(), w) * substitute_block0(base, phi);
            ++instances;
            if (!(lhs == rhs)) result.fail("covariance broken at " + inst.label);
        }
    }
    if (result.pass) result.detail = std::to_string(instances) + " transformed instances, exact";
    return result;
}

// 4. the factorial scaling law between the symbolic and determinantal routes.
inline CheckResult check_ops_scaling_law() {
    namespace sd = selfcheck_detail;
    CheckResult result{"construction scaling law: symbolic == (n-m+1)! * determinantal"};
    std::mt19937_64 gen(0x0525u);
    std::size_t instances = 0;
    for (std::uint32_t n = 1; n <= 5; ++n)
        for (std::uint32_t m = 1; m <= n; ++m) {
            for (const auto& table : sd::kTables) {
                auto M = sd::gops_fixture(table, n, m);
                if (!(gops_symbolic(M, n, m).poly ==
                      gops_det(M, n, m).poly * Rational(factorial(n - m + 1))))
                    result.fail(table + " n=" + std::to_string(n) + " m=" + std::to_string(m));
                ++instances;
            }
            auto R = sd::random_moment_fixture(n, m, gen);
            if (!(gops_symbolic(R, n, m).poly ==
                  gops_det(R, n, m).poly * Rational(factorial(n - m + 1))))
                result.fail("random table n=" + std::to_string(n) + " m=" + std::to_string(m));
            ++instances;
        }
    if (result.pass) result.detail = std::to_string(instances) + " (table, n, m) instances, exact";
    return result;
}

// 5. pinned classical polynomials.
inline CheckResult check_classical_values() {
    CheckResult result{"classical values: gaussian p2, p3 and uniform p2"};
    auto H = MomentFunctional::builtin("hermite", 8);
    auto U = MomentFunctional::builtin("uniform_pm1", 8);
    const Poly x = Poly::var(xvar(0));
    if (!(gops_det(H, 2, 1).poly == x.pow(2) - Poly(Rational(1))))
        result.fail("gaussian p2 != x^2 - 1");
    const Poly p3 = gops_det(H, 3, 1).poly;
    if (!(p3 == Rational(-2) * (x.pow(3) - Rational(3) * x)))
        result.fail("gaussian p3 not proportional to x^3 - 3x");
    const Poly u2 = gops_det(U, 2, 1).poly;
    if (!(u2 * Rational(9, 4) == Rational(3) * x.pow(2) - Poly(Rational(1))))
        result.fail("uniform p2 not proportional to 3x^2 - 1");
    if (result.pass) result.detail = "exact values, stated scalars -2 and 4/9";
    return result;
}

// 6. orthogonality residuals vanish exactly through n-m, and the first
// failure sits exactly at n-m+1.
inline CheckResult check_orthogonality_sweep() {
    namespace sd = selfcheck_detail;
    CheckResult result{"orthogonality sweep: zero through n-m, first failure at n-m+1"};
    std::size_t instances = 0;
    for (const auto& table : sd::kTables) {
        std::vector<GopsEntry> classical;
        for (std::uint32_t n = 1; n <= 6; ++n) {
            for (std::uint32_t m = 1; m <= n; ++m) {
                auto M = sd::gops_fixture(table, n, m);
                const auto entry = gops_det(M, n, m);
                if (!entry.warning.empty()) {
                    result.fail("degenerate entry " + table + " n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
                    continue;
                }
                const auto report =
                    check_orthogonality(M, entry, m == 1 ? classical : std::vector<GopsEntry>{});
                ++instances;
                if (!report.all_zero)
                    result.fail("nonzero residual " + table + " n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
                if (!report.pairwise_all_zero)
                    result.fail("pairwise failure " + table + " n=" + std::to_string(n));
                if (report.first_nonorthogonal != n - m + 1)
                    result.fail("sharpness failure " + table + " n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
                if (m == 1) classical.push_back(entry);
            }
        }
    }
    if (result.pass) result.detail = std::to_string(instances) + " entries over three tables, exact";
    return result;
}

// 7. quadrature exactness through 2n-1 and sharpness at 2n.
inline CheckResult check_quadrature_exactness(double tol) {
    namespace sd = selfcheck_detail;
    CheckResult result{"quadrature exactness through 2n-1, sharp failure at 2n"};
    std::size_t checks = 0;
    for (const auto& table : sd::kTables) {
        for (std::uint32_t n = 1; n <= 8; ++n) {
            auto M = MomentFunctional::builtin(table, 2 * n + 2);
            const auto rule = gauss_rule(M, n, tol);
            for (std::uint32_t k = 0; k + 1 <= 2 * n; ++k) {
                const double a_k = rational_to_double(M.moment1(1, k));
                const double err =
                    std::abs(rational_to_double(rule_power_sum(rule, k) - M.moment1(1, k)));
                ++checks;
                if (err > tol * std::max(1.0, std::abs(a_k)))
                    result.fail(table + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                " err=" + std::to_string(err));
            }
            if (table == "hermite") {
                const double err = std::abs(
                    rational_to_double(rule_power_sum(rule, 2 * n) - M.moment1(1, 2 * n)));
                const double a_2n = rational_to_double(M.moment1(1, 2 * n));
                if (err <= 1e-6 * std::max(1.0, std::abs(a_2n)))
                    result.fail("no failure at k=2n for hermite n=" + std::to_string(n));
            }
        }
    }
    if (result.pass) result.detail = std::to_string(checks) + " power sums within 1e-9, order-2n failure verified";
    return result;
}

// 8. discriminant moment identities, exact expansion vs tensor quadrature.
inline CheckResult check_discriminant_identities(double tol) {
    namespace sd = selfcheck_detail;
    CheckResult result{"discriminant moments: expansion == tensor quadrature, product form at k=1"};
    std::size_t checks = 0;
    for (const auto& table : sd::kTables) {
        for (std::uint32_t N = 1; N <= 3; ++N)
            for (std::uint32_t n = 2; n <= 5; ++n)
                for (std::uint32_t k = 1; 2 * k * (N - 1) <= 2 * n - 1; ++k) {
                    if (k > 6) break;
                    auto M = MomentFunctional::builtin(table, 4 * n + 2);
                    const auto out = discriminant_moment(M, N, k, n, tol);
                    ++checks;
                    if (!out.agrees)
                        result.fail(table + " N=" + std::to_string(N) + " k=" + std::to_string(k) +
                                    " n=" + std::to_string(n));
                }
        for (std::uint32_t n = 2; n <= 3; ++n) {
            auto M = MomentFunctional::builtin(table, 4 * n + 2);
            const auto out = discriminant_moment(M, n, 1, n, tol);
            const double exact = rational_to_double(out.exact);
            ++checks;
            if (!out.product_form ||
                std::abs(*out.product_form - exact) > tol * std::max(1.0, std::abs(exact)))
                result.fail("product form " + table + " n=" + std::to_string(n));
        }
    }
    if (result.pass) result.detail = std::to_string(checks) + " identities within 1e-9";
    return result;
}

// 9. reductions of the symmetrized family to monomial / Schur polynomials.
inline CheckResult check_symmetric_identities() {
    CheckResult result{"symmetrized-family reductions: monomial (even) and signed Schur (odd)"};
    std::size_t checks = 0;
    for (std::uint32_t N = 1; N <= 4; ++N) {
        std::vector<std::uint32_t> parts(N, 0);
        std::function<void(std::uint32_t, std::uint32_t, std::uint32_t)> rec =
            [&](std::uint32_t pos, std::uint32_t cap, std::uint32_t left) {
                if (pos == N) {
                    const Composition alpha{parts};
                    for (std::uint32_t k : {0u, 1u, 2u, 3u}) {
                        if (k % 2 == 1) {
                            bool ok = true;
                            for (std::size_t i = 0; i + 1 < parts.size(); ++i)
                                if (parts[i] <= parts[i + 1]) ok = false;
                            for (std::size_t i = 0; i < parts.size(); ++i)
                                if (parts[i] + i + 1 < N) ok = false;
                            if (!ok) continue;
                            if (k == 3 && alpha.weight() + 3 * (N - 1) > 14) continue;
                        }
                        ++checks;
                        if (!verify_schur_monomial_identities(alpha, k, N).holds)
                            result.fail("alpha=(" + multi_index_to_string(parts) +
                                        ") k=" + std::to_string(k));
                    }
                    return;
                }
                for (std::uint32_t v = 0; v <= std::min(cap, left); ++v) {
                    parts[pos] = v;
                    rec(pos + 1, v, left - v);
                }
            };
        rec(0, 6, 6);
    }
    if (result.pass) result.detail = std::to_string(checks) + " (alpha, k) identities, exact";
    return result;
}

// 10. the central-moment specialization.
inline CheckResult check_central_moments() {
    CheckResult result{"central moments: E of the shifted product == E (a - x0)^N"};
    std::size_t checks = 0;
    for (const char* name : {"hermite", "laguerre"}) {
        auto M = MomentFunctional::builtin(name, 16);
        const Rational mean = M.moment1(1, 1);
        for (std::uint32_t N = 1; N <= 6; ++N) {
            Composition alpha{std::vector<std::uint32_t>(N, 1)};
            Rational expected(0);
            for (std::uint32_t j = 0; j <= N; ++j) {
                Rational t = Rational(binomial(N, j)) * rational_pow(mean, N - j) * M.moment1(1, j);
                if (j % 2 == 1) t = -t;
                expected += t;
            }
            const Poly unsym = p_alpha_k_unsymmetrized(M, alpha, 0);
            ++checks;
            if (expectation_x0(M, unsym) != expected)
                result.fail(std::string(name) + " N=" + std::to_string(N));
            // tie the symmetrized member to its N!-scaled companion
            if (!(p_alpha_k(M, alpha, 0) == Rational(factorial(N)) * unsym))
                result.fail(std::string(name) + " N=" + std::to_string(N) + " symmetrization tie");
        }
    }
    if (result.pass)
        result.detail = std::to_string(checks) +
                        " cases on two tables; symmetrized member carries the N! factor";
    return result;
}

// 11. multivariate: exact one-dimensional degeneration, product factorization,
// and orthogonality below the degree.
inline CheckResult check_multivariate() {
    namespace sd = selfcheck_detail;
    CheckResult result{"multivariate systems: d=0 degeneration, product factorization, orthogonality"};
    auto H = MomentFunctional::builtin("hermite", 16);
    for (std::uint32_t n = 1; n <= 5; ++n) {
        if (!(multi_gops_det(H, MultiDegree{{n}}, MultiDegree{{1}}).poly == gops_det(H, n, 1).poly) ||
            !(multi_gops_symbolic(H, MultiDegree{{n}}, MultiDegree{{1}}).poly ==
              gops_symbolic(H, n, 1).poly) ||
            !(multi_ops_full(H, MultiDegree{{n}}).poly == gops_det(H, n, 1).poly) ||
            !(multi_ops_full_symbolic(H, MultiDegree{{n}}).poly == gops_symbolic(H, n, 1).poly))
            result.fail("degeneration n=" + std::to_string(n));
    }
    {
        MomentFunctional M = MomentFunctional::builtin("hermite", 16);
        M.set_class_moments(2, builtin_moments({"laguerre", {}}, 16));
        M.set_class_moments(3, builtin_moments({"chebyshev1", {}}, 16));
        for (std::uint32_t n = 2; n <= 4; ++n)
            for (std::uint32_t m = 2; m <= std::min(n, 3u); ++m)
                if (!(multi_gops_det(M, MultiDegree{{n}}, MultiDegree{{m}}).poly ==
                      gops_det(M, n, m).poly))
                    result.fail("degeneration with auxiliaries n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
    }

    std::size_t product_checks = 0, orth_checks = 0;
    for (const auto& names : {std::vector<std::string>{"hermite", "hermite"},
                              std::vector<std::string>{"hermite", "uniform_pm1"}}) {
        auto M = sd::product_fixture(names, 12, 0);
        auto M0 = MomentFunctional::builtin(names[0], 12);
        auto M1 = MomentFunctional::builtin(names[1], 12);
        for (std::uint32_t n0 = 0; n0 <= 4; ++n0)
            for (std::uint32_t n1 = 0; n0 + n1 <= 4; ++n1) {
                if (n0 + n1 == 0) continue;
                const MultiDegree n{{n0, n1}};
                const auto full = multi_ops_full(M, n);
                if (!full.warning.empty()) {
                    result.fail("degenerate full system at " + multi_index_to_string(n.comps));
                    continue;
                }
                const Poly p = full.poly;
                Poly prod = n0 == 0 ? Poly(Rational(1)) : gops_det(M0, n0, 1).poly;
                Poly factor1 = n1 == 0 ? Poly(Rational(1)) : gops_det(M1, n1, 1).poly;
                prod = prod * factor1.rename_vars({{xvar(0, 0), xvar(0, 1)}});
                const Monomial lead = block_monomial(0, MultiIndex{n0, n1}, MultiIndex(2, 0));
                const Rational a = p.coefficient(lead), b = prod.coefficient(lead);
                ++product_checks;
                if (a == 0 || b == 0 || !(p * b == prod * a))
                    result.fail("factorization at " + multi_index_to_string(n.comps));
                const auto box = box_enumerate(n).order;
                for (std::size_t i = 0; i + 1 < box.size(); ++i) {
                    Poly xk;
                    xk.add_term(block_monomial(0, box[i], MultiIndex(2, 0)), Rational(1));
                    ++orth_checks;
                    if (expectation_multi_x0(M, p * xk) != 0)
                        result.fail("orthogonality at " + multi_index_to_string(n.comps) +
                                    " against " + multi_index_to_string(box[i]));
                }
            }
    }
    if (result.pass)
        result.detail = "degeneration exact; " + std::to_string(product_checks) +
                        " factorizations and " + std::to_string(orth_checks) +
                        " orthogonality relations, exact";
    return result;
}

// 12. apolar space dimensions by rank, univariate and multivariate.
inline CheckResult check_apolar_dimensions() {
    CheckResult result{"apolar space dimensions: max{0, 2m-n} and s(m) - s(n-m)"};
    std::mt19937_64 gen(0xd1ce5u);
    std::size_t checks = 0;
    struct UniCase {
        std::uint32_t n, m;
    };
    for (const UniCase& c :
         {UniCase{3, 2}, UniCase{4, 2}, UniCase{5, 3}, UniCase{5, 4}, UniCase{4, 4}, UniCase{6, 3}}) {
        const std::uint32_t expected =
            2 * c.m >= c.n ? 2 * c.m - c.n : 0u;
        for (int t = 0; t < 10; ++t) {
            const BinaryForm f = selfcheck_detail::random_form(c.n, gen);
            ++checks;
            if (apolar_space_dim(f, c.m) != expected)
                result.fail("univariate n=" + std::to_string(c.n) + " m=" + std::to_string(c.m));
        }
    }
    struct MultiCase {
        MultiDegree n, m;
    };
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    for (const MultiCase& c : {MultiCase{MultiDegree{{2, 1}}, MultiDegree{{1, 1}}},
                               MultiCase{MultiDegree{{2, 2}}, MultiDegree{{1, 1}}},
                               MultiCase{MultiDegree{{3, 1}}, MultiDegree{{2, 1}}}}) {
        const std::uint64_t expected = box_size(c.m) - box_size(comp_sub(c.n, c.m));
        for (int t = 0; t < 10; ++t) {
            MultiForm f{c.n, {}};
            for (const auto& k : box_enumerate(c.n).order)
                f.coeffs[k] = Rational(num(gen), den(gen));
            ++checks;
            if (multi_apolar_space_dim(f, c.m) != expected)
                result.fail("multivariate n=" + multi_index_to_string(c.n.comps) +
                            " m=" + multi_index_to_string(c.m.comps));
        }
    }
    if (result.pass) result.detail = std::to_string(checks) + " random forms, all ranks as predicted";
    return result;
}

inline std::vector<CheckResult> run_acceptance(double tol = kDefaultTol) {
    std::vector<CheckResult> results;
    auto [paths, apolar] = check_covariant_paths_and_apolarity();
    results.push_back(std::move(paths));
    results.push_back(std::move(apolar));
    results.push_back(check_gl2_covariance());
    results.push_back(check_ops_scaling_law());
    results.push_back(check_classical_values());
    results.push_back(check_orthogonality_sweep());
    results.push_back(check_quadrature_exactness(tol));
    results.push_back(check_discriminant_identities(tol));
    results.push_back(check_symmetric_identities());
    results.push_back(check_central_moments());
    results.push_back(check_multivariate());
    results.push_back(check_apolar_dimensions());
    return results;
}

inline int print_acceptance_report(const std::vector<CheckResult>& results, std::ostream& out) {
    int failures = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.pass) ++failures;
        out << (r.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << r.name;
        if (!r.detail.empty()) out << "  [" << r.detail << "]";
        out << "\n";
    }
    out << (failures == 0 ? "all criteria passed"
                          : std::to_string(failures) + " criteria failed")
        << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace apolar
