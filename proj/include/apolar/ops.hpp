#pragma once

// Generalized orthogonal polynomial systems from a moment functional, via
// the explicit moment determinant and via the symbolic Vandermonde route.
// The two are tied by the exact scaling law  symbolic = (n-m+1)! * det.
//
// The degree-n entry p_{nm} satisfies  E x0^k p_{nm} = 0  for 0 <= k <= n-m;
// m = 1 is the classical case, m = n the biorthogonal one. For m >= 2 the
// construction consumes m-1 auxiliary moment classes (2..m); auxiliary
// classes sharing the class-1 moments force a provably zero determinant and
// are reported as a warning rather than an error.

#include "apolar/moments.hpp"
#include "apolar/poly.hpp"
#include "apolar/poly_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace apolar {

enum class GopsPath { determinantal, symbolic };

struct GopsEntry {
    std::uint32_t n = 0, m = 1;
    Poly poly;  // in the single letter x0
    GopsPath path = GopsPath::determinantal;
    Rational leading;     // coefficient of x0^n; zero means degree dropped
    std::string warning;  // nonempty when the determinant is provably zero
};

namespace detail {

inline void check_gops_args(std::uint32_t n, std::uint32_t m) {
    if (m == 0 || m > n) throw std::invalid_argument("gops: need 1 <= m <= n");
}

inline Rational leading_of(const Poly& p, std::uint32_t n) {
    Monomial lead;
    if (n > 0) lead.emplace_back(xvar(0), n);
    return p.coefficient(lead);
}

}  // namespace detail

// E restricted to polynomials in x0 alone: x0^k -> class-1 moment of order k.
inline Rational expectation_x0(const MomentFunctional& M, const Poly& p) {
    Rational acc(0);
    for (const auto& [mono, coef] : p.terms()) {
        std::uint32_t k = 0;
        for (const auto& [v, pw] : mono) {
            if (v.block != 0 || v.coord != 0 || v.kind != VarKind::X)
                throw std::invalid_argument("expectation_x0: polynomial must live in x0");
            k = pw;
        }
        acc += coef * M.moment1(1, k);
    }
    return acc;
}

inline GopsEntry gops_det(const MomentFunctional& M, std::uint32_t n, std::uint32_t m) {
    detail::check_gops_args(n, m);
    std::vector<Poly> top;
    top.reserve(n + 1);
    for (std::uint32_t j = 0; j <= n; ++j) top.push_back(Poly::var(xvar(0), j));

    std::vector<std::vector<Rational>> body;
    for (std::uint32_t k = 0; k + m <= n; ++k) {
        std::vector<Rational> row;
        row.reserve(n + 1);
        for (std::uint32_t j = 0; j <= n; ++j) row.push_back(M.moment1(1, k + j));
        body.push_back(std::move(row));
    }
    for (std::uint32_t cls = 2; cls <= m; ++cls) {
        std::vector<Rational> row;
        row.reserve(n + 1);
        for (std::uint32_t j = 0; j <= n; ++j) row.push_back(M.moment1(cls, j));
        body.push_back(std::move(row));
    }

    GopsEntry entry{n, m, Poly{}, GopsPath::determinantal, Rational(0), {}};
    for (std::size_t i = 0; i < body.size(); ++i)
        for (std::size_t j = i + 1; j < body.size(); ++j)
            if (body[i] == body[j]) {
                entry.warning = "determinant vanishes: moment rows " + std::to_string(i) +
                                " and " + std::to_string(j) + " are equal";
                return entry;
            }
    entry.poly = det_symbolic_top_row(top, body);
    entry.leading = detail::leading_of(entry.poly, n);
    return entry;
}

namespace detail {

// Class layout shared by the symbolic routes: blocks 1..n-m+1 carry class 1
// and block n-m+1+t carries auxiliary class 1+t.
inline MomentFunctional with_gops_blocks(const MomentFunctional& M, std::uint32_t n,
                                         std::uint32_t m) {
    MomentFunctional local = M;
    for (std::uint32_t t = 1; t < m; ++t) local.assign_block(n - m + 1 + t, 1 + t);
    return local;
}

}  // namespace detail

inline GopsEntry gops_symbolic(const MomentFunctional& M, std::uint32_t n, std::uint32_t m) {
    detail::check_gops_args(n, m);
    const MomentFunctional local = detail::with_gops_blocks(M, n, m);

    std::vector<VarId> head, all;
    for (std::uint32_t b = 1; b <= n - m + 1; ++b) head.push_back(xvar(b));
    all.push_back(xvar(0));
    for (std::uint32_t b = 1; b <= n; ++b) all.push_back(xvar(b));

    std::vector<std::uint32_t> ambient;
    for (std::uint32_t b = 1; b <= n; ++b) ambient.push_back(b);

    const Poly product = vandermonde(head) * vandermonde(all);
    GopsEntry entry{n, m, apply_E0(local, product, &ambient), GopsPath::symbolic, Rational(0), {}};
    entry.leading = detail::leading_of(entry.poly, n);
    return entry;
}

// E Delta(x_1..x_{n-m+1}) Delta(x_1..x_n): the leading coefficient of the
// symbolic entry; the entry has degree n exactly when this is nonzero.
inline Rational leading_coefficient(const MomentFunctional& M, std::uint32_t n, std::uint32_t m) {
    detail::check_gops_args(n, m);
    const MomentFunctional local = detail::with_gops_blocks(M, n, m);
    std::vector<VarId> head, tail;
    for (std::uint32_t b = 1; b <= n - m + 1; ++b) head.push_back(xvar(b));
    for (std::uint32_t b = 1; b <= n; ++b) tail.push_back(xvar(b));
    std::vector<std::uint32_t> ambient;
    for (std::uint32_t b = 1; b <= n; ++b) ambient.push_back(b);
    return apply_E(local, vandermonde(head) * vandermonde(tail), &ambient);
}

struct OrthogonalityReport {
    std::vector<bool> zero_through;  // k = 0..n-m
    bool all_zero = true;
    // Smallest k with E x0^k p != 0, if it is reachable with the available
    // moments; for positive-definite tables this is n-m+1.
    std::optional<std::uint32_t> first_nonorthogonal;
    std::vector<bool> pairwise_zero;  // against previously built entries
    bool pairwise_all_zero = true;
};

inline OrthogonalityReport check_orthogonality(const MomentFunctional& M, const GopsEntry& entry,
                                               const std::vector<GopsEntry>& prior = {}) {
    OrthogonalityReport report;
    const Poly x0 = Poly::var(xvar(0));
    Poly shifted = entry.poly;
    for (std::uint32_t k = 0; k + entry.m <= entry.n; ++k) {
        const bool zero = expectation_x0(M, shifted) == 0;
        report.zero_through.push_back(zero);
        report.all_zero = report.all_zero && zero;
        shifted *= x0;
    }
    // keep scanning upward for the first failure while moments last
    Poly probe = entry.poly;
    for (std::uint32_t k = 0; k <= 2 * entry.n + 2; ++k) {
        try {
            if (expectation_x0(M, probe) != 0) {
                report.first_nonorthogonal = k;
                break;
            }
        } catch (const missing_moment&) {
            break;
        }
        probe *= x0;
    }
    for (const auto& other : prior) {
        const bool zero = expectation_x0(M, entry.poly * other.poly) == 0;
        report.pairwise_zero.push_back(zero);
        report.pairwise_all_zero = report.pairwise_all_zero && zero;
    }
    return report;
}

inline GopsEntry monicize(GopsEntry entry) {
    if (entry.leading == 0)
        throw std::domain_error("monic normalization impossible: leading coefficient is zero");
    entry.poly = entry.poly / entry.leading;
    entry.leading = Rational(1);
    return entry;
}

}  // namespace apolar
