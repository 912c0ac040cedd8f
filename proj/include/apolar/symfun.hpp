#pragma once

// Symmetric-function machinery: monomial and Schur polynomials, the
// symmetrized covariant family S_{alpha,k} / P_{alpha,k}, the identities
// reducing S to monomial or Schur polynomials times discriminant powers, and
// the root-average operator built on complete homogeneous polynomials.

#include "apolar/moments.hpp"
#include "apolar/poly.hpp"
#include "apolar/poly_matrix.hpp"
#include "apolar/quadrature.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace apolar {

// weakly decreasing exponent vector alpha_1 >= ... >= alpha_N >= 0
struct Composition {
    std::vector<std::uint32_t> parts;

    std::size_t length() const { return parts.size(); }
    std::uint32_t weight() const { return std::accumulate(parts.begin(), parts.end(), 0u); }
};

inline void check_composition(const Composition& alpha) {
    for (std::size_t i = 0; i + 1 < alpha.parts.size(); ++i)
        if (alpha.parts[i] < alpha.parts[i + 1])
            throw std::invalid_argument("composition parts must be weakly decreasing");
}

// Order of the stabilizer of alpha inside the symmetric group: the product of
// the factorials of the multiplicities of the distinct values.
inline BigInt stab_order(const Composition& alpha) {
    check_composition(alpha);
    BigInt acc = 1;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= alpha.parts.size(); ++i) {
        if (i < alpha.parts.size() && alpha.parts[i] == alpha.parts[i - 1]) {
            ++run;
        } else {
            acc *= factorial(static_cast<unsigned>(run));
            run = 1;
        }
    }
    return acc;
}

// lambda_i = alpha_i - (N - i); entries may be negative, in which case the
// odd-power Schur identity does not apply.
inline std::vector<std::int64_t> lambda_from_alpha(const Composition& alpha) {
    const std::int64_t N = static_cast<std::int64_t>(alpha.parts.size());
    std::vector<std::int64_t> lambda(alpha.parts.size());
    for (std::int64_t i = 0; i < N; ++i)
        lambda[i] = static_cast<std::int64_t>(alpha.parts[i]) - (N - 1 - i);
    return lambda;
}

// m_alpha: the sum of the distinct monomials whose exponent multiset is alpha.
inline Poly monomial_sym(const Composition& alpha, const std::vector<VarId>& vars) {
    check_composition(alpha);
    if (alpha.parts.size() != vars.size())
        throw std::invalid_argument("monomial_sym: need one variable per part");
    std::vector<std::uint32_t> exps = alpha.parts;
    std::sort(exps.begin(), exps.end());
    Poly out;
    do {
        Monomial m;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (exps[i] > 0) m.emplace_back(vars[i], exps[i]);
        std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.add_term(m, Rational(1));
    } while (std::next_permutation(exps.begin(), exps.end()));
    return out;
}

// Schur polynomial by the bialternant: det(x_i^{lambda_j + N - j}) divided by
// det(x_i^{N - j}); the division is exact by construction.
inline Poly schur(const std::vector<std::uint32_t>& lambda, const std::vector<VarId>& vars) {
    const std::size_t N = vars.size();
    if (lambda.size() > N)
        throw std::invalid_argument("schur: more parts than variables");
    for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
        if (lambda[i] < lambda[i + 1])
            throw std::invalid_argument("schur: partition parts must be weakly decreasing");
    auto alternant = [&](const std::vector<std::uint32_t>& exps) {
        PolyMatrix m(N, N);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) m.at(i, j) = Poly::var(vars[i], exps[j]);
        return det(m);
    };
    std::vector<std::uint32_t> shifted(N), staircase(N);
    for (std::size_t j = 0; j < N; ++j) {
        const std::uint32_t lj = j < lambda.size() ? lambda[j] : 0;
        shifted[j] = lj + static_cast<std::uint32_t>(N - 1 - j);
        staircase[j] = static_cast<std::uint32_t>(N - 1 - j);
    }
    return exact_divide(alternant(shifted), alternant(staircase));
}

// S_{alpha,k}: the full symmetrization of x^alpha Delta^k over the symmetric
// group of the variables.
inline Poly s_alpha_k(const Composition& alpha, std::uint32_t k, const std::vector<VarId>& vars) {
    check_composition(alpha);
    const std::size_t N = vars.size();
    if (alpha.parts.size() != N)
        throw std::invalid_argument("s_alpha_k: need one variable per part");
    Poly base{Rational(1)};
    for (std::size_t i = 0; i < N; ++i)
        if (alpha.parts[i] > 0) base *= Poly::var(vars[i], alpha.parts[i]);
    base *= vandermonde(vars).pow(k);

    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    Poly acc;
    do {
        std::map<VarId, VarId> perm;
        for (std::size_t i = 0; i < N; ++i) perm[vars[i]] = vars[idx[i]];
        acc += base.rename_vars(perm);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return acc;
}

// P_{alpha,k}: the moment image of S_{alpha,k} at the shifted letters
// x_i - x_0; a polynomial in x0 alone.
inline Poly p_alpha_k(const MomentFunctional& M, const Composition& alpha, std::uint32_t k) {
    check_composition(alpha);
    const std::size_t N = alpha.parts.size();
    std::vector<VarId> vars;
    for (std::uint32_t b = 1; b <= N; ++b) vars.push_back(xvar(b));
    const Poly sym = s_alpha_k(alpha, k, vars);
    std::map<VarId, Poly> shift;
    for (VarId v : vars) shift[v] = Poly::var(v) - Poly::var(xvar(0));
    std::vector<std::uint32_t> ambient;
    for (std::uint32_t b = 1; b <= N; ++b) ambient.push_back(b);
    return apply_E0(M, sym.substitute(shift), &ambient);
}

// The unsymmetrized companion  E_0 prod_i (x_i - x_0)^{alpha_i} Delta^k;
// p_alpha_k equals N! times this whenever all blocks share class-1 moments.
inline Poly p_alpha_k_unsymmetrized(const MomentFunctional& M, const Composition& alpha,
                                    std::uint32_t k) {
    check_composition(alpha);
    const std::size_t N = alpha.parts.size();
    std::vector<VarId> vars;
    std::vector<std::uint32_t> ambient;
    for (std::uint32_t b = 1; b <= N; ++b) {
        vars.push_back(xvar(b));
        ambient.push_back(b);
    }
    Poly base{Rational(1)};
    for (std::size_t i = 0; i < N; ++i)
        if (alpha.parts[i] > 0)
            base *= (Poly::var(vars[i]) - Poly::var(xvar(0))).pow(alpha.parts[i]);
    base *= vandermonde(vars).pow(k);
    return apply_E0(M, base, &ambient);
}

struct SchurMonomialReport {
    bool holds = false;
    Poly lhs;  // S_{alpha,k}
    Poly rhs;  // the reduced product
    std::string identity;
};

// Even k = 2h:  S_{alpha,2h} = |stab(alpha)| m_alpha Delta^{2h}.
// Odd  k = 2h-1: S_{alpha,2h-1} = (-1)^{N(N-1)/2} s_lambda Delta^{2h} with
// lambda_i = alpha_i - (N-i); requires alpha strictly decreasing so that
// lambda is a partition. The sign belongs to the orientation
// Delta = prod_{i<j} (x_j - x_i) used throughout.
inline SchurMonomialReport verify_schur_monomial_identities(const Composition& alpha,
                                                            std::uint32_t k, std::uint32_t N) {
    check_composition(alpha);
    if (alpha.parts.size() != N)
        throw std::invalid_argument("verify_schur_monomial_identities: |alpha| parts != N");
    std::vector<VarId> vars;
    for (std::uint32_t b = 1; b <= N; ++b) vars.push_back(xvar(b));

    SchurMonomialReport report;
    report.lhs = s_alpha_k(alpha, k, vars);
    const Poly delta = vandermonde(vars);
    if (k % 2 == 0) {
        report.identity = "S = |stab(alpha)| * m_alpha * Delta^k";
        report.rhs = Rational(stab_order(alpha)) * monomial_sym(alpha, vars) * delta.pow(k);
    } else {
        const auto lambda_signed = lambda_from_alpha(alpha);
        std::vector<std::uint32_t> lambda;
        for (std::int64_t l : lambda_signed) {
            if (l < 0)
                throw std::invalid_argument(
                    "odd-power identity needs alpha_i >= N-i (lambda would be negative)");
            lambda.push_back(static_cast<std::uint32_t>(l));
        }
        report.identity = "S = (-1)^{N(N-1)/2} * s_lambda * Delta^{k+1}";
        Poly rhs = schur(lambda, vars) * delta.pow(k + 1);
        if ((N * (N - 1) / 2) % 2 == 1) rhs = -rhs;
        report.rhs = rhs;
    }
    report.holds = report.lhs == report.rhs;
    return report;
}

namespace detail {

template <typename T>
T small_det(std::vector<std::vector<T>> a) {
    const std::size_t n = a.size();
    if (n == 0) return T(1);
    T acc(1);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == T(0)) ++piv;
        if (piv == n) return T(0);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            negate = !negate;
        }
        acc *= a[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            if (a[r][k] == T(0)) continue;
            const T f = a[r][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
        }
    }
    return negate ? -acc : acc;
}

// det(h_{lambda_i - i + j}) over the given complete homogeneous values.
template <typename T>
T schur_from_h(const std::vector<std::int64_t>& lambda, const std::vector<T>& h) {
    const std::size_t N = lambda.size();
    std::vector<std::vector<T>> m(N, std::vector<T>(N, T(0)));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const std::int64_t idx = lambda[i] - static_cast<std::int64_t>(i) +
                                     static_cast<std::int64_t>(j);
            if (idx == 0) m[i][j] = T(1);
            else if (idx > 0 && idx < static_cast<std::int64_t>(h.size())) m[i][j] = h[idx];
        }
    return small_det(std::move(m));
}

}  // namespace detail

struct TildeReport {
    std::vector<double> nodes;
    double value = 0;  // root-average operator applied to S_{alpha,1}
    // s_lambda(nodes) under the two index conventions in play
    double schur_rising = 0;   // lambda_i = alpha_i + i - 1
    double schur_classic = 0;  // lambda_i = alpha_i - N + i
    double rising_over_nfact = 0;
    double rising_times_Nfact = 0;
    std::string matched;
};

// Evaluates the root-average operator (powers -> complete homogeneous values
// at the nodes of the n-th classical rule) on S_{alpha,1}, and compares it
// against Schur values under both index conventions and both normalizations.
// The convention that matches is lambda_i = alpha_i + i - 1 with the value
// equal to N! * s_lambda(nodes).
inline TildeReport schur_average_tilde(const MomentFunctional& M, std::uint32_t n,
                                       const Composition& alpha, double tol = kDefaultTol) {
    check_composition(alpha);
    const std::size_t N = alpha.parts.size();
    const QuadratureRule rule = gauss_rule(M, n, tol);

    std::vector<VarId> vars;
    for (std::uint32_t b = 1; b <= N; ++b) vars.push_back(xvar(b));
    const Poly sym = s_alpha_k(alpha, 1, vars);

    std::uint32_t max_pow = 0;
    for (const auto& [mono, coef] : sym.terms())
        for (const auto& [v, pw] : mono) max_pow = std::max(max_pow, pw);
    const auto h = complete_homogeneous_row<double>(max_pow, rule.nodes);

    TildeReport report;
    report.nodes = rule.nodes;
    for (const auto& [mono, coef] : sym.terms()) {
        double t = rational_to_double(coef);
        for (const auto& [v, pw] : mono) t *= h[pw];
        report.value += t;
    }

    std::vector<std::int64_t> rising(N), classic(N);
    for (std::size_t i = 0; i < N; ++i) {
        rising[i] = static_cast<std::int64_t>(alpha.parts[i]) + static_cast<std::int64_t>(i);
        classic[i] = static_cast<std::int64_t>(alpha.parts[i]) -
                     static_cast<std::int64_t>(N) + static_cast<std::int64_t>(i) + 1;
    }
    const std::uint32_t needed = alpha.parts.empty() ? 0 : alpha.parts[0] + static_cast<std::uint32_t>(N);
    const auto hh = complete_homogeneous_row<double>(std::max(max_pow, needed), rule.nodes);
    report.schur_rising = detail::schur_from_h(rising, hh);
    report.schur_classic = detail::schur_from_h(classic, hh);

    const double nfact = rational_to_double(Rational(factorial(n)));
    const double Nfact = rational_to_double(Rational(factorial(static_cast<unsigned>(N))));
    report.rising_over_nfact = report.schur_rising / nfact;
    report.rising_times_Nfact = Nfact * report.schur_rising;

    const double scale = std::max(1.0, std::abs(report.value));
    if (std::abs(report.value - report.rising_times_Nfact) <= tol * scale)
        report.matched = "value = N! * s_lambda(nodes) with lambda_i = alpha_i + i - 1";
    else if (std::abs(report.value - report.rising_over_nfact) <= tol * scale)
        report.matched = "value = s_lambda(nodes)/n! with lambda_i = alpha_i + i - 1";
    else
        report.matched = "no candidate matched";
    return report;
}

// Exact variant on explicitly supplied roots: returns the operator value and
// N! * s_lambda(roots) under lambda_i = alpha_i + i - 1; the two agree.
inline std::pair<Rational, Rational> schur_average_tilde_exact(const std::vector<Rational>& roots,
                                                               const Composition& alpha) {
    check_composition(alpha);
    const std::size_t N = alpha.parts.size();
    std::vector<VarId> vars;
    for (std::uint32_t b = 1; b <= N; ++b) vars.push_back(xvar(b));
    const Poly sym = s_alpha_k(alpha, 1, vars);
    const Rational value = apply_E_tilde(roots, sym);

    std::vector<std::int64_t> rising(N);
    for (std::size_t i = 0; i < N; ++i)
        rising[i] = static_cast<std::int64_t>(alpha.parts[i]) + static_cast<std::int64_t>(i);
    const std::uint32_t needed =
        (alpha.parts.empty() ? 0 : alpha.parts[0]) + static_cast<std::uint32_t>(N);
    const auto h = complete_homogeneous_row<Rational>(needed, roots);
    const Rational reference =
        Rational(factorial(static_cast<unsigned>(N))) * detail::schur_from_h(rising, h);
    return {value, reference};
}

}  // namespace apolar
