#pragma once

// Binary forms, brackets, the umbral coefficient operator, apolarity, the
// joint covariant that manufactures apolar forms (two independent computation
// paths), transvectants, and linear changes of variables.
//
// A degree-n form is stored by its coefficient vector a_0..a_n relative to the
// signed binomial basis
//     f(x0, y0) = sum_k  C(n,k) (-1)^{n-k} a_k x0^{n-k} y0^k,
// so that a_k plays the role of a k-th moment when forms are built from a
// moment functional.

#include "apolar/moments.hpp"
#include "apolar/poly.hpp"
#include "apolar/poly_matrix.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace apolar {

struct BinaryForm {
    std::uint32_t degree = 0;
    std::vector<Rational> coeffs;  // a_0 .. a_degree

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }
    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

inline void check_form(const BinaryForm& f, const char* who) {
    if (f.coeffs.size() != f.degree + 1)
        throw std::invalid_argument(std::string(who) + ": coefficient count must be degree + 1");
}

inline Poly form_to_poly(const BinaryForm& f) {
    check_form(f, "form_to_poly");
    const std::uint32_t n = f.degree;
    Poly out;
    for (std::uint32_t k = 0; k <= n; ++k) {
        Rational c = f.coeffs[k] * Rational(binomial(n, k));
        if ((n - k) % 2 == 1) c = -c;
        Monomial m;
        if (n - k > 0) m.emplace_back(xvar(0), n - k);
        if (k > 0) m.emplace_back(yvar(0), k);
        out.add_term(m, c);
    }
    return out;
}

// Reads coefficients back off a homogeneous degree-n polynomial in the
// block-0 pair by matching against the signed binomial basis.
inline BinaryForm poly_to_form(const Poly& p, std::uint32_t n) {
    BinaryForm f{n, std::vector<Rational>(n + 1, Rational(0))};
    for (const auto& [m, c] : p.terms()) {
        std::uint32_t xp = 0, yp = 0;
        for (const auto& [v, pw] : m) {
            if (v.block != 0 || v.coord != 0)
                throw std::invalid_argument("poly_to_form: polynomial has letters outside block 0");
            (v.kind == VarKind::X ? xp : yp) = pw;
        }
        if (xp + yp != n)
            throw std::invalid_argument("poly_to_form: polynomial is not homogeneous of the stated degree");
        Rational a = c / Rational(binomial(n, yp));
        if ((n - yp) % 2 == 1) a = -a;
        f.coeffs[yp] = a;
    }
    return f;
}

inline BinaryForm form_from_moments(const MomentFunctional& M, std::uint32_t cls, std::uint32_t n) {
    BinaryForm f{n, {}};
    f.coeffs.reserve(n + 1);
    for (std::uint32_t k = 0; k <= n; ++k) f.coeffs.push_back(M.moment1(cls, k));
    return f;
}

struct LinearChange {
    Rational c11, c12, c21, c22;
    Rational det() const { return c11 * c22 - c12 * c21; }
};

// Substitutes (x0, y0) <- (c11 x0 + c12 y0, c21 x0 + c22 y0) in a block-0
// polynomial (other blocks untouched).
inline Poly substitute_block0(const Poly& p, const LinearChange& phi) {
    const Poly x0 = Poly::var(xvar(0)), y0 = Poly::var(yvar(0));
    return p.substitute({{xvar(0), phi.c11 * x0 + phi.c12 * y0},
                         {yvar(0), phi.c21 * x0 + phi.c22 * y0}});
}

inline BinaryForm transform_form(const BinaryForm& f, const LinearChange& phi) {
    check_form(f, "transform_form");
    if (phi.det() == 0) throw std::invalid_argument("transform_form: singular change of variables");
    return poly_to_form(substitute_block0(form_to_poly(f), phi), f.degree);
}

// [i j] = x_i y_j - x_j y_i
inline Poly bracket(std::uint32_t i, std::uint32_t j) {
    if (i == j) throw std::invalid_argument("bracket: indices must differ");
    return Poly::var(xvar(i)) * Poly::var(yvar(j)) - Poly::var(xvar(j)) * Poly::var(yvar(i));
}

struct BracketFactor {
    std::uint32_t hi = 0, lo = 0;  // the factor [hi lo]
    std::uint32_t power = 1;
};

using BracketProduct = std::vector<BracketFactor>;

inline Poly expand_brackets(const BracketProduct& factors) {
    Poly acc{Rational(1)};
    for (const auto& f : factors) {
        if (f.hi == f.lo) throw std::invalid_argument("bracket: indices must differ");
        acc *= bracket(f.hi, f.lo).pow(f.power);
    }
    return acc;
}

// Number of bracket factors avoiding block 0, counted with multiplicity:
// the covariance index of the resulting joint covariant.
inline std::uint32_t covariant_index(const BracketProduct& factors) {
    std::uint32_t w = 0;
    for (const auto& f : factors)
        if (f.hi != 0 && f.lo != 0) w += f.power;
    return w;
}

// The coefficient operator: block 0 letters pass through, and a block whose
// pair-degree matches its class's form degree contributes that form's
// coefficient indexed by the x-power. Off-degree monomials map to zero;
// multiplicative across blocks.
struct UmbralContext {
    std::map<std::uint32_t, std::uint32_t> block_class;
    std::map<std::uint32_t, BinaryForm> class_form;

    const BinaryForm& form_of_block(std::uint32_t block) const {
        auto ic = block_class.find(block);
        if (ic == block_class.end())
            throw std::invalid_argument("umbral_U: block " + std::to_string(block) +
                                        " has no class assignment");
        auto it = class_form.find(ic->second);
        if (it == class_form.end())
            throw std::invalid_argument("umbral_U: class " + std::to_string(ic->second) +
                                        " has no assigned form");
        return it->second;
    }
};

inline Poly umbral_U(const Poly& p, const UmbralContext& ctx) {
    Poly out;
    for (const auto& [mono, coef] : p.terms()) {
        // collect (x,y) powers per block
        std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (const auto& [v, pw] : mono) {
            if (v.coord != 0) throw std::invalid_argument("umbral_U: univariate letters only");
            auto& pr = pairs[v.block];
            (v.kind == VarKind::X ? pr.first : pr.second) += pw;
        }
        Rational value = coef;
        Monomial passthrough;
        bool dead = false;
        for (const auto& [block, xy] : pairs) {
            if (block == 0) {
                if (xy.first > 0) passthrough.emplace_back(xvar(0), xy.first);
                if (xy.second > 0) passthrough.emplace_back(yvar(0), xy.second);
                continue;
            }
            const BinaryForm& form = ctx.form_of_block(block);
            if (xy.first + xy.second != form.degree) {
                dead = true;
                break;
            }
            value *= form.coeffs[xy.first];
            if (value == 0) break;
        }
        if (!dead) out.add_term(passthrough, value);
    }
    return out;
}

// Pairing whose vanishing defines apolarity: homogeneous of degree n - m in
// the block-0 pair, a scalar when the degrees agree.
inline Poly apolar_pairing(const BinaryForm& f, const BinaryForm& g) {
    check_form(f, "apolar_pairing");
    check_form(g, "apolar_pairing");
    if (f.degree < g.degree)
        throw std::invalid_argument("apolar_pairing: first form must have the larger degree");
    const std::uint32_t n = f.degree, m = g.degree;
    BracketProduct prod;
    if (n - m > 0) prod.push_back({1, 0, n - m});
    if (m > 0) prod.push_back({2, 1, m});
    UmbralContext ctx;
    ctx.block_class = {{1u, 1u}, {2u, 2u}};
    ctx.class_form = {{1u, f}, {2u, g}};
    return umbral_U(expand_brackets(prod), ctx);
}

namespace detail {

inline void check_joint_covariant_args(const BinaryForm& f, const std::vector<BinaryForm>& aux,
                                       std::uint32_t m) {
    check_form(f, "covariant_J");
    const std::uint32_t n = f.degree;
    if (m == 0 || m > n) throw std::invalid_argument("covariant_J: need 1 <= m <= deg f");
    if (2 * m < n + 1)
        throw std::invalid_argument("covariant_J: need 2m - n >= 1");
    const std::uint32_t l = 2 * m - n;
    if (aux.size() != l - 1)
        throw std::invalid_argument("covariant_J: expected " + std::to_string(l - 1) +
                                    " auxiliary forms, got " + std::to_string(aux.size()));
    for (const auto& g : aux) {
        check_form(g, "covariant_J");
        if (g.degree != m)
            throw std::invalid_argument("covariant_J: auxiliary forms must have degree m");
    }
}

}  // namespace detail

inline BracketProduct joint_covariant_brackets(std::uint32_t n, std::uint32_t m) {
    BracketProduct prod;
    for (std::uint32_t i = 1; i + 1 <= n - m + 1; ++i)
        for (std::uint32_t j = i + 1; j <= n - m + 1; ++j) prod.push_back({j, i, 1});
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j <= m; ++j) prod.push_back({j, i, 1});
    return prod;
}

inline std::uint32_t covariant_index(std::uint32_t n, std::uint32_t m) {
    return covariant_index(joint_covariant_brackets(n, m));
}

// Joint covariant producing a degree-m form apolar to f, by full symbolic
// bracket expansion. Blocks 1..n-m+1 carry f's class; each auxiliary form
// gets its own fresh block and class. The (n-m+1)! symmetrization factor is
// divided out so this path agrees with the determinantal path exactly.
//
// The expansion of the bracket product depends only on (n, m); callers
// sweeping many forms at fixed degrees can expand once and reuse it.
inline Poly covariant_J_from_expansion(const Poly& expanded, const BinaryForm& f,
                                       const std::vector<BinaryForm>& aux, std::uint32_t m) {
    detail::check_joint_covariant_args(f, aux, m);
    const std::uint32_t n = f.degree;
    UmbralContext ctx;
    for (std::uint32_t b = 1; b <= n - m + 1; ++b) ctx.block_class[b] = 1;
    for (std::uint32_t t = 1; t < 2 * m - n; ++t) ctx.block_class[n - m + 1 + t] = 1 + t;
    ctx.class_form[1] = f;
    for (std::uint32_t t = 1; t < 2 * m - n; ++t) ctx.class_form[1 + t] = aux[t - 1];
    return umbral_U(expanded, ctx) / Rational(factorial(n - m + 1));
}

inline Poly covariant_J(const BinaryForm& f, const std::vector<BinaryForm>& aux, std::uint32_t m) {
    detail::check_joint_covariant_args(f, aux, m);
    const Poly expanded = expand_brackets(joint_covariant_brackets(f.degree, m));
    return covariant_J_from_expansion(expanded, f, aux, m);
}

// Same covariant through the explicit determinant: top row of degree-m
// monomials, then the n-m+1 sliding windows of f's coefficients, then one
// coefficient row per auxiliary form.
inline Poly covariant_J_det(const BinaryForm& f, const std::vector<BinaryForm>& aux,
                            std::uint32_t m) {
    detail::check_joint_covariant_args(f, aux, m);
    const std::uint32_t n = f.degree;
    std::vector<Poly> top;
    top.reserve(m + 1);
    for (std::uint32_t j = 0; j <= m; ++j) {
        Monomial mono;
        if (j > 0) mono.emplace_back(xvar(0), j);
        if (m - j > 0) mono.emplace_back(yvar(0), m - j);
        Poly t;
        t.add_term(mono, Rational(1));
        top.push_back(t);
    }
    std::vector<std::vector<Rational>> body;
    for (std::uint32_t k = 0; k + m <= n; ++k)
        body.emplace_back(f.coeffs.begin() + k, f.coeffs.begin() + k + m + 1);
    for (const auto& g : aux) body.push_back(g.coeffs);
    return det_symbolic_top_row(top, body);
}

// k-th transvectant of f and g; k = 0 recovers the plain product, and the
// diagonal k = 2 case is the Hessian up to a constant.
inline Poly transvectant(const BinaryForm& f, const BinaryForm& g, std::uint32_t k) {
    check_form(f, "transvectant");
    check_form(g, "transvectant");
    const std::uint32_t n = f.degree, m = g.degree;
    if (k > n || k > m) throw std::invalid_argument("transvectant: order exceeds a degree");
    BracketProduct prod;
    if (n - k > 0) prod.push_back({1, 0, n - k});
    if (m - k > 0) prod.push_back({2, 0, m - k});
    if (k > 0) prod.push_back({2, 1, k});
    UmbralContext ctx;
    ctx.block_class = {{1u, 1u}, {2u, 2u}};
    ctx.class_form = {{1u, f}, {2u, g}};
    return umbral_U(expand_brackets(prod), ctx);
}

inline Poly hessian(const BinaryForm& f) {
    if (f.degree < 2) throw std::invalid_argument("hessian: degree must be at least 2");
    return transvectant(f, f, 2);
}

// Dimension of the space of degree-m forms apolar to f, via the rank of the
// linear system expressing the pairing's vanishing.
inline std::uint32_t apolar_space_dim(const BinaryForm& f, std::uint32_t m) {
    check_form(f, "apolar_space_dim");
    const std::uint32_t n = f.degree;
    if (m > n) throw std::invalid_argument("apolar_space_dim: need m <= deg f");
    std::vector<std::vector<Rational>> rows;
    for (std::uint32_t h = 0; h <= n - m; ++h) {
        std::vector<Rational> row(m + 1);
        for (std::uint32_t j = 0; j <= m; ++j) {
            Rational c = f.coeffs[h + m - j] * Rational(binomial(m, j));
            if ((m - j) % 2 == 1) c = -c;
            row[j] = c;
        }
        rows.push_back(std::move(row));
    }
    return (m + 1) - static_cast<std::uint32_t>(rank_rational(std::move(rows)));
}

}  // namespace apolar
