#pragma once

// Orthogonal polynomials in several variables: multi-index degrees under the
// componentwise order, 2(d+1)-ary forms, the multivariate apolar pairing, and
// the generalized / full orthogonal systems via moment determinants and the
// symbolic alternant route.
//
// Everything degenerates exactly to the univariate machinery at d = 0: boxes
// become ranges, the alternants become Vandermonde products, and the moment
// determinants coincide row by row with the univariate ones.

#include "apolar/forms.hpp"
#include "apolar/moments.hpp"
#include "apolar/poly.hpp"
#include "apolar/poly_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace apolar {

struct MultiDegree {
    std::vector<std::uint32_t> comps;  // d+1 components

    std::uint32_t dim() const { return static_cast<std::uint32_t>(comps.size()) - 1; }
    std::uint32_t rank() const {
        std::uint32_t r = 0;
        for (auto c : comps) r += c;
        return r;
    }
    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
};

inline bool comp_leq(const MultiDegree& a, const MultiDegree& b) {
    if (a.comps.size() != b.comps.size())
        throw std::invalid_argument("multi-degrees live in different dimensions");
    for (std::size_t i = 0; i < a.comps.size(); ++i)
        if (a.comps[i] > b.comps[i]) return false;
    return true;
}

inline bool comp_less(const MultiDegree& a, const MultiDegree& b) {
    return comp_leq(a, b) && a != b;
}

inline MultiDegree comp_sub(const MultiDegree& a, const MultiDegree& b) {
    if (!comp_leq(b, a)) throw std::invalid_argument("componentwise subtraction underflow");
    MultiDegree out = a;
    for (std::size_t i = 0; i < a.comps.size(); ++i) out.comps[i] -= b.comps[i];
    return out;
}

inline std::uint64_t box_size(const MultiDegree& n) {
    std::uint64_t s = 1;
    for (auto c : n.comps) s *= c + 1;
    return s;
}

struct BoxEnumeration {
    MultiDegree n;
    std::vector<MultiIndex> order;  // graded-lex, starts at 0, ends at n
};

// All k with 0 <= k <= n in graded lexicographic order.
inline BoxEnumeration box_enumerate(const MultiDegree& n) {
    BoxEnumeration box{n, {}};
    MultiIndex k(n.comps.size(), 0);
    while (true) {
        box.order.push_back(k);
        std::size_t i = k.size();
        while (i > 0 && k[i - 1] == n.comps[i - 1]) k[--i] = 0;
        if (i == 0) break;
        ++k[i - 1];
    }
    std::stable_sort(box.order.begin(), box.order.end(),
                     [](const MultiIndex& a, const MultiIndex& b) {
                         std::uint32_t ra = 0, rb = 0;
                         for (auto c : a) ra += c;
                         for (auto c : b) rb += c;
                         if (ra != rb) return ra < rb;
                         return a < b;
                     });
    return box;
}

struct MultiForm {
    MultiDegree n;
    std::map<MultiIndex, Rational> coeffs;  // keyed by the box of n

    bool is_zero() const {
        for (const auto& [k, c] : coeffs)
            if (c != 0) return false;
        return true;
    }
    friend bool operator==(const MultiForm&, const MultiForm&) = default;
};

inline BigInt multi_binomial(const MultiDegree& n, const MultiIndex& k) {
    BigInt acc = 1;
    for (std::size_t i = 0; i < n.comps.size(); ++i) acc *= binomial(n.comps[i], k[i]);
    return acc;
}

// Monomial prod_c x_{block,c}^{k_c} * prod_c y_{block,c}^{l_c}.
inline Monomial block_monomial(std::uint32_t block, const MultiIndex& xpow,
                               const MultiIndex& ypow) {
    Monomial m;
    for (std::uint32_t c = 0; c < xpow.size(); ++c)
        if (xpow[c] > 0) m.emplace_back(xvar(block, c), xpow[c]);
    for (std::uint32_t c = 0; c < ypow.size(); ++c)
        if (ypow[c] > 0) m.emplace_back(yvar(block, c), ypow[c]);
    std::sort(m.begin(), m.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return m;
}

inline void check_multi_form(const MultiForm& f, const char* who) {
    const auto box = box_enumerate(f.n);
    if (f.coeffs.size() != box.order.size())
        throw std::invalid_argument(std::string(who) + ": coefficients must cover the box exactly");
    for (const auto& k : box.order)
        if (!f.coeffs.count(k))
            throw std::invalid_argument(std::string(who) + ": missing coefficient at " +
                                        multi_index_to_string(k));
}

inline Poly multi_form_to_poly(const MultiForm& f) {
    check_multi_form(f, "multi_form_to_poly");
    Poly out;
    for (const auto& [k, a] : f.coeffs) {
        MultiIndex xpow(f.n.comps.size());
        std::uint32_t corank = 0;
        for (std::size_t c = 0; c < k.size(); ++c) {
            xpow[c] = f.n.comps[c] - k[c];
            corank += xpow[c];
        }
        Rational coef = a * Rational(multi_binomial(f.n, k));
        if (corank % 2 == 1) coef = -coef;
        out.add_term(block_monomial(0, xpow, k), coef);
    }
    return out;
}

inline MultiForm multi_poly_to_form(const Poly& p, const MultiDegree& n) {
    MultiForm f{n, {}};
    for (const auto& k : box_enumerate(n).order) f.coeffs[k] = Rational(0);
    for (const auto& [mono, coef] : p.terms()) {
        MultiIndex xpow(n.comps.size(), 0), ypow(n.comps.size(), 0);
        for (const auto& [v, pw] : mono) {
            if (v.block != 0) throw std::invalid_argument("multi_poly_to_form: letters outside block 0");
            (v.kind == VarKind::X ? xpow : ypow)[v.coord] = pw;
        }
        std::uint32_t corank = 0;
        for (std::size_t c = 0; c < xpow.size(); ++c) {
            if (xpow[c] + ypow[c] != n.comps[c])
                throw std::invalid_argument("multi_poly_to_form: not homogeneous of the stated degree");
            corank += xpow[c];
        }
        Rational a = coef / Rational(multi_binomial(n, ypow));
        if (corank % 2 == 1) a = -a;
        f.coeffs[ypow] = a;
    }
    return f;
}

inline MultiForm multi_form_from_moments(const MomentFunctional& M, std::uint32_t cls,
                                         const MultiDegree& n) {
    MultiForm f{n, {}};
    for (const auto& k : box_enumerate(n).order) f.coeffs[k] = M.moment(cls, k);
    return f;
}

// Coordinate-wise homogenization of a block-0 polynomial to multi-degree n.
inline Poly multi_homogenize(const Poly& p, const MultiDegree& n) {
    Poly out;
    for (const auto& [mono, coef] : p.terms()) {
        MultiIndex xpow(n.comps.size(), 0);
        for (const auto& [v, pw] : mono) {
            if (v.block != 0 || v.kind != VarKind::X)
                throw std::invalid_argument("multi_homogenize: expected block-0 x-letters");
            xpow[v.coord] = pw;
        }
        MultiIndex ypow(n.comps.size(), 0);
        for (std::size_t c = 0; c < xpow.size(); ++c) {
            if (xpow[c] > n.comps[c])
                throw std::invalid_argument("multi_homogenize: degree exceeds the target");
            ypow[c] = n.comps[c] - xpow[c];
        }
        out.add_term(block_monomial(0, xpow, ypow), coef);
    }
    return out;
}

// prod_c (x_{ic} y_{jc} - x_{jc} y_{ic})^{n_c}
inline Poly multi_bracket(std::uint32_t i, std::uint32_t j, const MultiDegree& n) {
    if (i == j) throw std::invalid_argument("multi_bracket: indices must differ");
    Poly acc{Rational(1)};
    for (std::uint32_t c = 0; c < n.comps.size(); ++c) {
        if (n.comps[c] == 0) continue;
        const Poly b = Poly::var(xvar(i, c)) * Poly::var(yvar(j, c)) -
                       Poly::var(xvar(j, c)) * Poly::var(yvar(i, c));
        acc *= b.pow(n.comps[c]);
    }
    return acc;
}

// The coefficient operator for 2(d+1)-ary forms: per block, the pair degrees
// must match the assigned form's degree componentwise, and the x-power picks
// the coefficient; block 0 passes through.
struct MultiUmbralContext {
    std::map<std::uint32_t, std::uint32_t> block_class;
    std::map<std::uint32_t, MultiForm> class_form;
};

inline Poly multi_umbral_U(const Poly& p, const MultiUmbralContext& ctx) {
    Poly out;
    for (const auto& [mono, coef] : p.terms()) {
        std::map<std::uint32_t, std::pair<MultiIndex, MultiIndex>> pairs;
        Rational value = coef;
        Monomial passthrough;
        bool dead = false;
        for (const auto& [v, pw] : mono) {
            if (v.block == 0) {
                passthrough.emplace_back(v, pw);
                continue;
            }
            auto ic = ctx.block_class.find(v.block);
            if (ic == ctx.block_class.end())
                throw std::invalid_argument("multi_umbral_U: block " + std::to_string(v.block) +
                                            " has no class assignment");
            const MultiForm& form = ctx.class_form.at(ic->second);
            auto [it, fresh] = pairs.try_emplace(
                v.block, std::make_pair(MultiIndex(form.n.comps.size(), 0),
                                        MultiIndex(form.n.comps.size(), 0)));
            (v.kind == VarKind::X ? it->second.first : it->second.second)[v.coord] += pw;
        }
        for (const auto& [block, xy] : pairs) {
            const MultiForm& form = ctx.class_form.at(ctx.block_class.at(block));
            bool full = true;
            for (std::size_t c = 0; c < form.n.comps.size(); ++c)
                if (xy.first[c] + xy.second[c] != form.n.comps[c]) full = false;
            if (!full) {
                dead = true;
                break;
            }
            value *= form.coeffs.at(xy.first);
            if (value == 0) break;
        }
        if (!dead) out.add_term(passthrough, value);
    }
    return out;
}

// Apolar pairing of 2(d+1)-ary forms; f and g are apolar iff it vanishes.
inline Poly multi_apolar_pairing(const MultiForm& f, const MultiForm& g) {
    check_multi_form(f, "multi_apolar_pairing");
    check_multi_form(g, "multi_apolar_pairing");
    if (!comp_leq(g.n, f.n))
        throw std::invalid_argument("multi_apolar_pairing: need deg g <= deg f componentwise");
    const MultiDegree diff = comp_sub(f.n, g.n);
    Poly product = multi_bracket(1, 0, diff) * multi_bracket(2, 1, g.n);
    MultiUmbralContext ctx;
    ctx.block_class = {{1u, 1u}, {2u, 2u}};
    ctx.class_form = {{1u, f}, {2u, g}};
    return multi_umbral_U(product, ctx);
}

// Dimension of the space of degree-m forms apolar to f: s(m) minus the rank
// of the vanishing system; generically s(m) - s(n-m).
inline std::uint64_t multi_apolar_space_dim(const MultiForm& f, const MultiDegree& m) {
    check_multi_form(f, "multi_apolar_space_dim");
    if (!comp_leq(m, f.n))
        throw std::invalid_argument("multi_apolar_space_dim: need m <= deg f componentwise");
    const MultiDegree diff = comp_sub(f.n, m);
    const auto rows_idx = box_enumerate(diff).order;
    const auto cols_idx = box_enumerate(m).order;
    std::vector<std::vector<Rational>> rows;
    for (const auto& h : rows_idx) {
        std::vector<Rational> row;
        row.reserve(cols_idx.size());
        for (const auto& j : cols_idx) {
            MultiIndex idx(h.size());
            std::uint32_t corank = 0;
            for (std::size_t c = 0; c < h.size(); ++c) {
                idx[c] = h[c] + m.comps[c] - j[c];
                corank += m.comps[c] - j[c];
            }
            Rational v = f.coeffs.at(idx) * Rational(multi_binomial(m, j));
            if (corank % 2 == 1) v = -v;
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return cols_idx.size() - rank_rational(std::move(rows));
}

struct MultiGops {
    MultiDegree n, m;
    Poly poly;  // in the block-0 x-letters
    std::string warning;
};

enum class AuxRowSource { moment_classes, seeded_random };

namespace detail {

inline MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline std::vector<Poly> box_monomial_row(const std::vector<MultiIndex>& box) {
    std::vector<Poly> top;
    top.reserve(box.size());
    for (const auto& k : box) {
        Poly t;
        t.add_term(block_monomial(0, k, MultiIndex(k.size(), 0)), Rational(1));
        top.push_back(t);
    }
    return top;
}

inline void check_multi_gops_args(const MultiDegree& n, const MultiDegree& m) {
    if (m.rank() == 0) throw std::invalid_argument("multi_gops: need m > 0");
    if (!comp_leq(m, n)) throw std::invalid_argument("multi_gops: need m <= n componentwise");
}

inline std::string find_equal_rows(const std::vector<std::vector<Rational>>& body) {
    for (std::size_t i = 0; i < body.size(); ++i)
        for (std::size_t j = i + 1; j < body.size(); ++j)
            if (body[i] == body[j])
                return "determinant vanishes: rows " + std::to_string(i) + " and " +
                       std::to_string(j) + " are equal";
    return {};
}

}  // namespace detail

// The (s+1) x (s+1) moment determinant: top row of box monomials, one moment
// row per box element of n - m, and s - r - 1 free rows. Free rows default to
// the moment rows of distinct auxiliary classes 2, 3, ...; the seeded fallback
// draws deterministic rational rows and retries past degeneracies.
inline MultiGops multi_gops_det(const MomentFunctional& M, const MultiDegree& n,
                                const MultiDegree& m,
                                const std::vector<std::vector<Rational>>& explicit_aux_rows) {
    detail::check_multi_gops_args(n, m);
    const auto box_n = box_enumerate(n).order;
    const auto box_diff = box_enumerate(comp_sub(n, m)).order;
    const std::size_t s = box_n.size() - 1;
    const std::size_t r = box_diff.size() - 1;
    if (explicit_aux_rows.size() != s - r - 1)
        throw std::invalid_argument("multi_gops_det: expected " + std::to_string(s - r - 1) +
                                    " auxiliary rows, got " +
                                    std::to_string(explicit_aux_rows.size()));
    std::vector<std::vector<Rational>> body;
    for (const auto& h : box_diff) {
        std::vector<Rational> row;
        row.reserve(box_n.size());
        for (const auto& k : box_n) row.push_back(M.moment(1, detail::add_indices(k, h)));
        body.push_back(std::move(row));
    }
    for (const auto& row : explicit_aux_rows) {
        if (row.size() != box_n.size())
            throw std::invalid_argument("multi_gops_det: auxiliary row has wrong length");
        body.push_back(row);
    }
    MultiGops out{n, m, Poly{}, detail::find_equal_rows(body)};
    if (!out.warning.empty()) return out;
    out.poly = det_symbolic_top_row(detail::box_monomial_row(box_n), body);
    if (out.poly.is_zero()) out.warning = "determinant vanished";
    return out;
}

inline MultiGops multi_gops_det(const MomentFunctional& M, const MultiDegree& n,
                                const MultiDegree& m,
                                AuxRowSource source = AuxRowSource::moment_classes,
                                std::uint64_t seed = 0x5ca1ab1eu) {
    detail::check_multi_gops_args(n, m);
    const auto box_n = box_enumerate(n).order;
    const std::size_t s = box_n.size() - 1;
    const std::size_t r = box_size(comp_sub(n, m)) - 1;
    std::vector<std::vector<Rational>> aux;
    if (source == AuxRowSource::moment_classes) {
        for (std::uint32_t cls = 2; cls + r < s + 1; ++cls) {
            std::vector<Rational> row;
            row.reserve(box_n.size());
            for (const auto& k : box_n) row.push_back(M.moment(cls, k));
            aux.push_back(std::move(row));
        }
        return multi_gops_det(M, n, m, aux);
    }
    // deterministic pseudo-random rows with a degeneracy check
    std::uint64_t attempt_seed = seed;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::mt19937_64 gen(attempt_seed);
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 5);
        aux.assign(s - r - 1, {});
        for (auto& row : aux) {
            row.reserve(box_n.size());
            for (std::size_t j = 0; j <= s; ++j) row.emplace_back(num(gen), den(gen));
        }
        MultiGops out = multi_gops_det(M, n, m, aux);
        if (out.warning.empty()) return out;
        attempt_seed += 1;
    }
    MultiGops failed{n, m, Poly{}, "seeded auxiliary rows kept degenerating"};
    return failed;
}

// Alternant det(x_i^{e_j}) over the given blocks and exponent multi-indices.
inline Poly multi_alternant(const std::vector<std::uint32_t>& block_ids,
                            const std::vector<MultiIndex>& exponents) {
    const std::size_t N = block_ids.size();
    if (exponents.size() != N) throw std::invalid_argument("multi_alternant: shape mismatch");
    if (N == 0) return Poly{Rational(1)};
    PolyMatrix mat(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            Poly t;
            t.add_term(block_monomial(block_ids[i], exponents[j], MultiIndex(exponents[j].size(), 0)),
                       Rational(1));
            mat.at(i, j) = t;
        }
    return det(mat);
}

// Symbolic route: E_0 of the box alternant over blocks 1..r+1 (class 1) times
// the full degree-n alternant over blocks 0..s; blocks r+2..s carry the
// auxiliary classes. Equals (r+1)! times the moment determinant.
inline MultiGops multi_gops_symbolic(const MomentFunctional& M, const MultiDegree& n,
                                     const MultiDegree& m) {
    detail::check_multi_gops_args(n, m);
    const auto box_n = box_enumerate(n).order;
    const auto box_diff = box_enumerate(comp_sub(n, m)).order;
    const std::size_t s = box_n.size() - 1;
    const std::size_t r = box_diff.size() - 1;

    MomentFunctional local = M;
    for (std::size_t b = r + 2; b <= s; ++b)
        local.assign_block(static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b - r));

    std::vector<std::uint32_t> head_blocks, all_blocks, ambient;
    for (std::size_t b = 1; b <= r + 1; ++b) head_blocks.push_back(static_cast<std::uint32_t>(b));
    all_blocks.push_back(0);
    for (std::size_t b = 1; b <= s; ++b) {
        all_blocks.push_back(static_cast<std::uint32_t>(b));
        ambient.push_back(static_cast<std::uint32_t>(b));
    }
    const Poly head = multi_alternant(head_blocks, box_diff);
    const Poly full = multi_alternant(all_blocks, box_n);
    MultiGops out{n, m, apply_E0(local, head * full, &ambient), {}};
    if (out.poly.is_zero()) out.warning = "symbolic construction vanished";
    return out;
}

// Full-system polynomial: orthogonal to every monomial strictly below n in
// the componentwise order. Rows are the moment translates of the box elements
// below n; all blocks share class 1.
inline MultiGops multi_ops_full(const MomentFunctional& M, const MultiDegree& n) {
    const auto box_n = box_enumerate(n).order;
    const std::size_t s = box_n.size() - 1;
    std::vector<std::vector<Rational>> body;
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Rational> row;
        row.reserve(box_n.size());
        for (const auto& k : box_n) row.push_back(M.moment(1, detail::add_indices(box_n[i], k)));
        body.push_back(std::move(row));
    }
    MultiGops out{n, n, Poly{}, detail::find_equal_rows(body)};
    if (!out.warning.empty()) return out;
    out.poly = det_symbolic_top_row(detail::box_monomial_row(box_n), body);
    if (out.poly.is_zero()) out.warning = "determinant vanished";
    return out;
}

inline MultiGops multi_ops_full_symbolic(const MomentFunctional& M, const MultiDegree& n) {
    const auto box_n = box_enumerate(n).order;
    const std::size_t s = box_n.size() - 1;
    std::vector<std::uint32_t> head_blocks, all_blocks, ambient;
    for (std::size_t b = 1; b <= s; ++b) {
        head_blocks.push_back(static_cast<std::uint32_t>(b));
        ambient.push_back(static_cast<std::uint32_t>(b));
    }
    all_blocks.push_back(0);
    for (std::size_t b = 1; b <= s; ++b) all_blocks.push_back(static_cast<std::uint32_t>(b));
    const std::vector<MultiIndex> below(box_n.begin(), box_n.end() - 1);
    const Poly head = multi_alternant(head_blocks, below);
    const Poly full = multi_alternant(all_blocks, box_n);
    MultiGops out{n, n, apply_E0(M, head * full, &ambient), {}};
    if (out.poly.is_zero()) out.warning = "symbolic construction vanished";
    return out;
}

// E of a polynomial in the block-0 x-letters.
inline Rational expectation_multi_x0(const MomentFunctional& M, const Poly& p) {
    Rational acc(0);
    for (const auto& [mono, coef] : p.terms()) {
        MultiIndex k(M.dimension() + 1, 0);
        for (const auto& [v, pw] : mono) {
            if (v.block != 0 || v.kind != VarKind::X)
                throw std::invalid_argument("expectation_multi_x0: expected block-0 x-letters");
            k[v.coord] = pw;
        }
        acc += coef * M.moment(1, k);
    }
    return acc;
}

}  // namespace apolar
