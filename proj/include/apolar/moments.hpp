#pragma once

// Moment functionals: linear functionals that evaluate polynomials by
// replacing each block's powers with moments of that block's class, then
// multiplying across blocks. Block 0 is special: the operator that fixes it
// pointwise returns a polynomial in the block-0 letters instead of a scalar.
//
// Moment tables are exact rationals produced by integer recurrences, never by
// numeric integration. A missing entry is a hard error naming the class and
// order; a silent zero would corrupt every Hankel determinant built on top.

#include "apolar/poly.hpp"
#include "apolar/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

using MultiIndex = std::vector<std::uint32_t>;

inline std::string multi_index_to_string(const MultiIndex& k) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s;
}

class missing_moment : public std::runtime_error {
  public:
    missing_moment(std::uint32_t cls, const MultiIndex& order)
        : std::runtime_error("missing moment (class " + std::to_string(cls) + ", order " +
                             multi_index_to_string(order) + ")"),
          cls_(cls),
          order_(order) {}
    std::uint32_t moment_class() const { return cls_; }
    const MultiIndex& order() const { return order_; }

  private:
    std::uint32_t cls_;
    MultiIndex order_;
};

struct MomentTableSpec {
    std::string name;  // hermite | uniform_pm1 | laguerre | chebyshev1 | custom
    std::vector<Rational> custom_moments;
};

// Exact univariate moment table of a builtin family, orders 0..up_to.
//   hermite      a_{2m} = (2m-1)!!          (unit Gaussian)
//   uniform_pm1  a_k = 2/(k+1), k even      (Lebesgue on [-1,1])
//   laguerre     a_k = k!                   (Exp(1) on [0,inf))
//   chebyshev1   a_{2m} = binom(2m,m)/4^m   (arcsine on [-1,1], a_0 = 1)
inline std::vector<Rational> builtin_moments(const MomentTableSpec& spec, std::uint32_t up_to) {
    std::vector<Rational> a(up_to + 1, Rational(0));
    if (spec.name == "hermite") {
        a[0] = 1;
        for (std::uint32_t k = 2; k <= up_to; k += 2) a[k] = Rational(k - 1) * a[k - 2];
    } else if (spec.name == "uniform_pm1") {
        for (std::uint32_t k = 0; k <= up_to; k += 2) a[k] = Rational(2, k + 1);
    } else if (spec.name == "laguerre") {
        a[0] = 1;
        for (std::uint32_t k = 1; k <= up_to; ++k) a[k] = Rational(k) * a[k - 1];
    } else if (spec.name == "chebyshev1") {
        a[0] = 1;
        for (std::uint32_t k = 2; k <= up_to; k += 2)
            a[k] = Rational(binomial(k, k / 2)) / Rational(rational_pow(Rational(4), k / 2));
    } else if (spec.name == "custom") {
        if (spec.custom_moments.size() <= up_to)
            throw missing_moment(1, {up_to});
        for (std::uint32_t k = 0; k <= up_to; ++k) a[k] = spec.custom_moments[k];
    } else {
        throw std::invalid_argument("unknown moment table '" + spec.name + "'");
    }
    return a;
}

inline bool is_builtin_table_name(const std::string& name) {
    return name == "hermite" || name == "uniform_pm1" || name == "laguerre" ||
           name == "chebyshev1";
}

// The functional: per-class moment tables a_{j,k} (k a multi-index over the
// d+1 coordinates) plus the block -> class partition. Classes 0 and 1 share
// moments; block 0 is always in class 0; unlisted blocks default to class 1.
// Immutable in use: build it, then only const operations are applied.
class MomentFunctional {
  public:
    explicit MomentFunctional(std::uint32_t d = 0) : d_(d) {}

    std::uint32_t dimension() const { return d_; }

    void set_class_moments(std::uint32_t cls, std::map<MultiIndex, Rational> table) {
        if (cls == 0) throw std::invalid_argument("class 0 aliases class 1; set class 1 instead");
        for (const auto& [k, v] : table)
            if (k.size() != d_ + 1)
                throw std::invalid_argument("moment multi-index has wrong dimension");
        if (cls == 1) {
            const MultiIndex zero(d_ + 1, 0);
            auto it = table.find(zero);
            if (it == table.end() || it->second == 0)
                throw std::invalid_argument("class 1 needs a nonzero moment at order 0");
        }
        moments_[cls] = std::move(table);
    }

    // Univariate convenience: a[k] becomes the order-k moment of the class.
    void set_class_moments(std::uint32_t cls, const std::vector<Rational>& a) {
        if (d_ != 0) throw std::invalid_argument("vector moments are for d = 0 functionals");
        std::map<MultiIndex, Rational> table;
        for (std::uint32_t k = 0; k < a.size(); ++k) table[{k}] = a[k];
        set_class_moments(cls, std::move(table));
    }

    void assign_block(std::uint32_t block, std::uint32_t cls) {
        if (block == 0) throw std::invalid_argument("block 0 is always in class 0");
        if (cls == 0) throw std::invalid_argument("only block 0 lives in class 0");
        class_of_[block] = cls;
    }

    std::uint32_t class_of(std::uint32_t block) const {
        if (block == 0) return 0;
        auto it = class_of_.find(block);
        return it == class_of_.end() ? 1u : it->second;
    }

    bool has_class(std::uint32_t cls) const {
        return moments_.count(cls == 0 ? 1u : cls) != 0;
    }

    std::vector<std::uint32_t> classes() const {
        std::vector<std::uint32_t> out;
        for (const auto& [cls, table] : moments_) out.push_back(cls);
        return out;
    }

    const Rational& moment(std::uint32_t cls, const MultiIndex& k) const {
        const std::uint32_t real_cls = cls == 0 ? 1u : cls;
        auto ct = moments_.find(real_cls);
        if (ct == moments_.end()) throw missing_moment(real_cls, k);
        auto it = ct->second.find(k);
        if (it == ct->second.end()) throw missing_moment(real_cls, k);
        return it->second;
    }

    const Rational& moment1(std::uint32_t cls, std::uint32_t k) const {
        if (d_ != 0) throw std::invalid_argument("moment1 needs a d = 0 functional");
        return moment(cls, MultiIndex{k});
    }

    const std::map<MultiIndex, Rational>& class_table(std::uint32_t cls) const {
        auto it = moments_.find(cls == 0 ? 1u : cls);
        if (it == moments_.end()) throw missing_moment(cls, MultiIndex(d_ + 1, 0));
        return it->second;
    }

    static MomentFunctional builtin(const std::string& name, std::uint32_t up_to) {
        MomentFunctional m(0);
        m.set_class_moments(1, builtin_moments({name, {}}, up_to));
        return m;
    }

    // Full box of the product table a_k = prod_i a^{(i)}_{k_i} up to the given
    // per-coordinate order.
    static std::map<MultiIndex, Rational> product_box_table(const std::vector<std::string>& names,
                                                            std::uint32_t up_to) {
        if (names.empty()) throw std::invalid_argument("product of zero tables");
        std::vector<std::vector<Rational>> tables;
        tables.reserve(names.size());
        for (const auto& n : names) tables.push_back(builtin_moments({n, {}}, up_to));
        std::map<MultiIndex, Rational> box;
        MultiIndex k(names.size(), 0);
        while (true) {
            Rational v(1);
            for (std::size_t i = 0; i < names.size(); ++i) v *= tables[i][k[i]];
            box[k] = v;
            std::size_t i = 0;
            while (i < k.size() && k[i] == up_to) k[i++] = 0;
            if (i == k.size()) break;
            ++k[i];
        }
        return box;
    }

    // Product functional on d+1 coordinates.
    static MomentFunctional product(const std::vector<std::string>& names, std::uint32_t up_to) {
        MomentFunctional m(static_cast<std::uint32_t>(names.size() - 1));
        m.set_class_moments(1, product_box_table(names, up_to));
        return m;
    }

  private:
    std::uint32_t d_;
    std::map<std::uint32_t, std::uint32_t> class_of_;
    std::map<std::uint32_t, std::map<MultiIndex, Rational>> moments_;
};

namespace detail {

// Per-block exponent multi-index of one monomial; throws on Y letters.
inline std::map<std::uint32_t, MultiIndex> split_blocks(const Monomial& m, std::uint32_t d) {
    std::map<std::uint32_t, MultiIndex> by_block;
    for (const auto& [v, p] : m) {
        if (v.kind != VarKind::X)
            throw std::invalid_argument("moment functional is defined on x-letters only");
        if (v.coord > d) throw std::invalid_argument("variable coordinate exceeds functional dimension");
        auto [it, fresh] = by_block.try_emplace(v.block, MultiIndex(d + 1, 0));
        it->second[v.coord] += p;
    }
    return by_block;
}

}  // namespace detail

// E: each block's power multi-index maps to the matching moment of the
// block's class, multiplicatively across distinct blocks, extended linearly.
// Block 0 must not appear (that is the job of apply_E0).
//
// The functional acts on a fixed ambient set of blocks (by default, every
// block occurring in the polynomial): a block of the ambient set that is
// missing from a monomial contributes its order-0 moment. For tables with
// a_0 = 1 this is invisible; for the others it is what keeps E multiplicative
// and the determinantal identities exact.
inline Rational apply_E(const MomentFunctional& M, const Poly& p,
                        const std::vector<std::uint32_t>* ambient = nullptr) {
    const std::vector<std::uint32_t> present = ambient ? *ambient : p.blocks_present();
    const MultiIndex zero(M.dimension() + 1, 0);
    Rational acc(0);
    for (const auto& [mono, coef] : p.terms()) {
        auto by_block = detail::split_blocks(mono, M.dimension());
        Rational v = coef;
        for (std::uint32_t block : present) {
            if (block == 0) throw std::invalid_argument("block 0 present: use apply_E0");
            auto it = by_block.find(block);
            v *= M.moment(M.class_of(block), it == by_block.end() ? zero : it->second);
            if (v == 0) break;
        }
        acc += v;
    }
    return acc;
}

// E_0: fixes block 0 pointwise and acts as E on every other ambient block,
// so the result is a polynomial in the block-0 letters.
inline Poly apply_E0(const MomentFunctional& M, const Poly& p,
                     const std::vector<std::uint32_t>* ambient = nullptr) {
    std::vector<std::uint32_t> present = ambient ? *ambient : p.blocks_present();
    std::erase(present, 0u);
    const MultiIndex zero(M.dimension() + 1, 0);
    Poly out;
    for (const auto& [mono, coef] : p.terms()) {
        Monomial fixed;
        Rational v = coef;
        for (const auto& [var, pw] : mono) {
            if (var.kind != VarKind::X)
                throw std::invalid_argument("moment functional is defined on x-letters only");
            if (var.block == 0) fixed.emplace_back(var, pw);
        }
        auto by_block = detail::split_blocks(mono, M.dimension());
        for (std::uint32_t block : present) {
            auto it = by_block.find(block);
            v *= M.moment(M.class_of(block), it == by_block.end() ? zero : it->second);
            if (v == 0) break;
        }
        out.add_term(fixed, v);
    }
    return out;
}

// Complete homogeneous symmetric polynomial h_k evaluated at given values.
template <typename T>
inline std::vector<T> complete_homogeneous_row(std::uint32_t up_to, const std::vector<T>& vals) {
    std::vector<T> h(up_to + 1, T(0));
    h[0] = T(1);
    for (const T& z : vals)
        for (std::uint32_t k = 1; k <= up_to; ++k) h[k] += z * h[k - 1];
    return h;
}

// E-tilde: x_i^k -> h_k(roots), blockwise multiplicative. Exact variant.
inline Rational apply_E_tilde(const std::vector<Rational>& roots, const Poly& p) {
    std::uint32_t max_pow = 0;
    for (const auto& [mono, coef] : p.terms())
        for (const auto& [v, pw] : mono) max_pow = std::max(max_pow, pw);
    if (roots.empty() && max_pow > 0)
        throw std::invalid_argument("empty root list with positive powers present");
    const auto h = complete_homogeneous_row<Rational>(max_pow, roots);

    Rational acc(0);
    for (const auto& [mono, coef] : p.terms()) {
        auto by_block = detail::split_blocks(mono, 0);
        Rational v = coef;
        for (const auto& [block, k] : by_block) {
            if (block == 0) throw std::invalid_argument("block 0 present: use apply_E0");
            v *= h[k[0]];
        }
        acc += v;
    }
    return acc;
}

}  // namespace apolar
