#pragma once

// Gauss quadrature from the roots of classical orthogonal polynomials,
// weights by the exact-numerator Cramer route and by a numeric Vandermonde
// solve, multivariable tensor quadrature, and discriminant-moment identities.
//
// Floating point enters the library here and only here. Everything symbolic
// (Vandermonde numerators, discriminant expansions) is computed exactly and
// evaluated at the float nodes as the last step. Root finding is a balanced
// companion matrix, QR eigenvalues, and one Newton polish step; deterministic,
// no randomized restarts.

#include "apolar/moments.hpp"
#include "apolar/ops.hpp"
#include "apolar/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

inline constexpr double kDefaultTol = 1e-9;

struct QuadratureRule {
    std::uint32_t n = 0;
    std::vector<double> nodes;                // ascending, pairwise distinct
    std::vector<double> weights;              // Cramer-route weights
    std::vector<double> weights_vandermonde;  // numeric cross-check
    std::string source;
    double tol = kDefaultTol;
};

// Dense coefficient vector c[0..deg] of a polynomial in the single letter x0.
inline std::vector<Rational> x0_coefficients(const Poly& p) {
    std::uint32_t deg = 0;
    for (const auto& [mono, coef] : p.terms()) {
        std::uint32_t k = 0;
        for (const auto& [v, pw] : mono) {
            if (v.block != 0 || v.coord != 0 || v.kind != VarKind::X)
                throw std::invalid_argument("expected a polynomial in x0 only");
            k = pw;
        }
        deg = std::max(deg, k);
    }
    std::vector<Rational> c(deg + 1, Rational(0));
    for (const auto& [mono, coef] : p.terms()) {
        std::uint32_t k = 0;
        for (const auto& [v, pw] : mono) k = pw;
        c[k] = coef;
    }
    return c;
}

namespace detail {

inline Rational eval_dense_exact(const std::vector<Rational>& c, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Parlett-Reinsch style balancing with powers of two (exact in binary).
inline void balance_in_place(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double rnorm = 0, cnorm = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cnorm += std::abs(a(j, i));
                rnorm += std::abs(a(i, j));
            }
            if (cnorm == 0 || rnorm == 0) continue;
            double f = 1.0;
            const double s = cnorm + rnorm;
            while (cnorm < rnorm / 2.0) {
                f *= 2.0;
                cnorm *= 4.0;
            }
            while (cnorm > rnorm * 2.0) {
                f /= 2.0;
                cnorm /= 4.0;
            }
            if ((cnorm + rnorm) < 0.95 * s) {
                converged = false;
                a.col(i) *= f;
                a.row(i) /= f;
            }
        }
    }
}

}  // namespace detail

// All real roots of a univariate polynomial, to within tol, via companion
// eigenvalues plus one Newton step. The Newton step is evaluated in rational
// arithmetic (float coefficients of these polynomials cancel catastrophically)
// and rounded once, so each root lands on the nearest double. Repeated roots
// are an error: the quadrature construction needs pairwise distinct nodes.
inline std::vector<double> real_roots(const Poly& p, double tol = kDefaultTol) {
    const auto rc = x0_coefficients(p);
    if (rc.size() < 2) throw std::invalid_argument("real_roots: degree must be at least 1");
    if (rc.back() == 0) throw std::invalid_argument("real_roots: zero leading coefficient");
    const std::size_t deg = rc.size() - 1;

    std::vector<Rational> dc(deg);  // derivative coefficients
    for (std::size_t i = 1; i <= deg; ++i) dc[i - 1] = rc[i] * Rational(i);

    std::vector<double> roots;
    if (deg == 1) {
        roots.push_back(rational_to_double(-rc[0] / rc[1]));
    } else {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
        for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
        for (std::size_t i = 0; i < deg; ++i)
            companion(i, deg - 1) = rational_to_double(-rc[i] / rc[deg]);
        detail::balance_in_place(companion);
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
        const auto values = solver.eigenvalues();

        for (Eigen::Index i = 0; i < values.size(); ++i) {
            const std::complex<double> z = values[i];
            if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z))) continue;
            const Rational x(z.real());
            const Rational dpx = detail::eval_dense_exact(dc, x);
            if (dpx != 0) {
                roots.push_back(rational_to_double(x - detail::eval_dense_exact(rc, x) / dpx));
            } else {
                roots.push_back(z.real());
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const double gap_tol =
            std::max(tol, 1e-7 * std::max(1.0, std::abs(roots[i])));
        if (std::abs(roots[i + 1] - roots[i]) <= gap_tol)
            throw std::domain_error("nodes not distinct");
    }
    return roots;
}

// Weights by the Cramer route: the alternant with x0 in slot i divided by the
// node alternant. All factors away from slot i cancel, leaving exactly the
// Lagrange basis polynomial prod_{j!=i} (x0 - z_j)/(z_i - z_j), whose
// expectation under the class-1 moments is the weight. Everything is computed
// in rational arithmetic on the (exactly converted) nodes; one rounding at
// the very end.
inline std::vector<double> weights_cramer(const MomentFunctional& M,
                                          const std::vector<double>& nodes,
                                          double tol = kDefaultTol) {
    const std::size_t n = nodes.size();
    if (n == 0) throw std::invalid_argument("weights_cramer: no nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs(nodes[i + 1] - nodes[i]) <= tol) throw std::domain_error("nodes not distinct");

    std::vector<Rational> zs(n);
    for (std::size_t i = 0; i < n; ++i) zs[i] = Rational(nodes[i]);

    std::vector<double> weights(n);
    for (std::size_t slot = 0; slot < n; ++slot) {
        std::vector<Rational> numer{Rational(1)};  // prod_{j != slot} (x0 - z_j)
        Rational denom(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == slot) continue;
            numer.push_back(Rational(0));
            for (std::size_t c = numer.size() - 1; c > 0; --c)
                numer[c] = numer[c - 1] - zs[j] * numer[c];
            numer[0] *= -zs[j];
            denom *= zs[slot] - zs[j];
        }
        Rational value(0);
        for (std::size_t k = 0; k < numer.size(); ++k)
            value += numer[k] * M.moment1(1, static_cast<std::uint32_t>(k));
        weights[slot] = rational_to_double(value / denom);
    }
    return weights;
}

// Same weights by solving the truncated moment system
// sum_i c_i nodes_i^k = a_k for k = 0..n-1 (exactly, on the given nodes).
inline std::vector<double> weights_vandermonde_solve(const MomentFunctional& M,
                                                     const std::vector<double>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(n + 1));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            Rational p(1);
            const Rational z(nodes[i]);
            for (std::size_t e = 0; e < k; ++e) p *= z;
            aug[k][i] = p;
        }
        aug[k][n] = M.moment1(1, static_cast<std::uint32_t>(k));
    }
    // gaussian elimination with partial (first nonzero) pivoting
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("weights: singular node system");
        std::swap(aug[col], aug[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            const Rational f = aug[r][col] / aug[col][col];
            for (std::size_t c2 = col; c2 <= n; ++c2) aug[r][c2] -= f * aug[col][c2];
        }
    }
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) weights[i] = rational_to_double(aug[i][n] / aug[i][i]);
    return weights;
}

// Exact power sum  sum_i c_i z_i^k  of a (double) rule, as a rational.
inline Rational rule_power_sum(const QuadratureRule& rule, std::uint32_t k) {
    Rational acc(0);
    for (std::uint32_t i = 0; i < rule.n; ++i) {
        Rational t(rule.weights[i]);
        const Rational z(rule.nodes[i]);
        for (std::uint32_t e = 0; e < k; ++e) t *= z;
        acc += t;
    }
    return acc;
}

inline QuadratureRule gauss_rule(const MomentFunctional& M, std::uint32_t n,
                                 double tol = kDefaultTol) {
    if (n == 0) throw std::invalid_argument("gauss_rule: need n >= 1");
    const GopsEntry entry = gops_det(M, n, 1);
    if (!entry.warning.empty() || entry.leading == 0)
        throw std::domain_error("gauss_rule: orthogonal polynomial is degenerate");
    QuadratureRule rule;
    rule.n = n;
    rule.tol = tol;
    rule.source = "roots of the degree-" + std::to_string(n) + " moment-determinant polynomial";
    rule.nodes = real_roots(entry.poly, tol);
    if (rule.nodes.size() != n)
        throw std::domain_error("gauss_rule: expected " + std::to_string(n) +
                                " distinct real roots, found " + std::to_string(rule.nodes.size()));
    rule.weights = weights_cramer(M, rule.nodes, tol);
    rule.weights_vandermonde = weights_vandermonde_solve(M, rule.nodes);

    const double drift =
        rational_to_double(rule_power_sum(rule, 0) - M.moment1(1, 0));
    if (std::abs(drift) > tol * std::max(1.0, rational_to_double(M.moment1(1, 0))))
        throw std::domain_error("gauss_rule: weights do not sum to the order-0 moment");
    return rule;
}

// Tensor quadrature over blocks 1..N: exact (up to tol) for per-block degree
// at most 2n-1, matching the expectation of p under the functional.
inline double tensor_quadrature([[maybe_unused]] const MomentFunctional& M,
                                const QuadratureRule& rule, const Poly& p) {
    if (p.has_kind(VarKind::Y))
        throw std::invalid_argument("tensor_quadrature: x-letters only");
    const auto blocks = p.blocks_present();
    if (!blocks.empty() && blocks.front() == 0)
        throw std::invalid_argument("tensor_quadrature: block 0 not allowed");
    const std::uint32_t N = blocks.empty() ? 0 : blocks.back();
    for (std::uint32_t b : blocks)
        if (p.block_degree(b) > 2 * rule.n - 1)
            throw std::invalid_argument("tensor_quadrature: per-variable degree exceeds 2n-1");
    if (N == 0) return p.eval_double([](VarId) { return 0.0; });

    std::vector<std::size_t> idx(N, 0);
    double acc = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t t = 0; t < N; ++t) w *= rule.weights[idx[t]];
        acc += w * p.eval_double([&](VarId v) { return rule.nodes[idx[v.block - 1]]; });
        std::size_t t = 0;
        while (t < N && idx[t] + 1 == rule.n) idx[t++] = 0;
        if (t == N) break;
        ++idx[t];
    }
    return acc;
}

struct DiscriminantMoment {
    Rational exact;                      // E Delta(x_1..x_N)^{2k} by expansion
    double quadrature = 0.0;             // the tensor root sum
    std::optional<double> product_form;  // n! c_1..c_n Delta(nodes)^2 when k=1, N=n
    double tol = kDefaultTol;
    bool agrees = false;
};

inline DiscriminantMoment discriminant_moment(const MomentFunctional& M, std::uint32_t N,
                                              std::uint32_t k, std::uint32_t n,
                                              double tol = kDefaultTol) {
    if (N < 1 || k < 1) throw std::invalid_argument("discriminant_moment: need N, k >= 1");
    if (2 * k * (N - 1) > 2 * n - 1)
        throw std::invalid_argument("discriminant_moment: need 2k(N-1) <= 2n-1");
    std::vector<VarId> vars;
    for (std::uint32_t b = 1; b <= N; ++b) vars.push_back(xvar(b));
    std::vector<std::uint32_t> ambient;
    for (std::uint32_t b = 1; b <= N; ++b) ambient.push_back(b);
    const Poly disc = vandermonde(vars).pow(2 * k);

    DiscriminantMoment out;
    out.tol = tol;
    out.exact = apply_E(M, disc, &ambient);

    const QuadratureRule rule = gauss_rule(M, n, tol);
    std::vector<std::size_t> idx(N, 0);
    double acc = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t t = 0; t < N; ++t) w *= rule.weights[idx[t]];
        double d = 1.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) d *= rule.nodes[idx[j]] - rule.nodes[idx[i]];
        double dpow = 1.0;
        for (std::uint32_t e = 0; e < 2 * k; ++e) dpow *= d;
        acc += w * dpow;
        std::size_t t = 0;
        while (t < N && idx[t] + 1 == rule.n) idx[t++] = 0;
        if (t == N) break;
        ++idx[t];
    }
    out.quadrature = acc;

    if (k == 1 && N == n) {
        double prod = rational_to_double(Rational(factorial(n)));
        for (double w : rule.weights) prod *= w;
        double d = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) d *= rule.nodes[j] - rule.nodes[i];
        out.product_form = prod * d * d;
    }

    const double exact_d = rational_to_double(out.exact);
    out.agrees = std::abs(exact_d - out.quadrature) <= tol * std::max(1.0, std::abs(exact_d));
    return out;
}

struct SylvesterReport {
    QuadratureRule rule;
    std::vector<double> residuals;  // |a_k - sum_i c_i z_i^k| for k = 0..2n-1
    double max_residual = 0.0;
};

inline SylvesterReport sylvester_decompose(const MomentFunctional& M, std::uint32_t n,
                                           double tol = kDefaultTol) {
    SylvesterReport report;
    report.rule = gauss_rule(M, n, tol);
    for (std::uint32_t k = 0; k <= 2 * n - 1; ++k) {
        const double r = std::abs(
            rational_to_double(rule_power_sum(report.rule, k) - M.moment1(1, k)));
        report.residuals.push_back(r);
        report.max_residual = std::max(report.max_residual, r);
    }
    return report;
}

}  // namespace apolar
