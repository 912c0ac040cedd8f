#pragma once

// Sparse multivariate polynomials over Rational.
//
// Variables are indexed by (block, coord, kind): block i selects the i-th
// letter x_i / y_i, coord selects the coordinate 0..d inside a block (0 for
// the univariate theory), and kind distinguishes the x from the y letter of
// a pair. Monomials are kept sorted and zero coefficients are never stored,
// so polynomial equality is a plain map comparison.

#include "apolar/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

enum class VarKind : std::uint8_t { X = 0, Y = 1 };

struct VarId {
    std::uint32_t block = 0;
    std::uint32_t coord = 0;
    VarKind kind = VarKind::X;

    friend bool operator==(const VarId&, const VarId&) = default;
    friend auto operator<=>(const VarId& a, const VarId& b) {
        if (auto c = a.block <=> b.block; c != 0) return c;
        if (auto c = a.coord <=> b.coord; c != 0) return c;
        return static_cast<std::uint8_t>(a.kind) <=> static_cast<std::uint8_t>(b.kind);
    }
};

inline VarId xvar(std::uint32_t block, std::uint32_t coord = 0) { return {block, coord, VarKind::X}; }
inline VarId yvar(std::uint32_t block, std::uint32_t coord = 0) { return {block, coord, VarKind::Y}; }

// Exponent vector: (variable, power) pairs sorted by VarId, powers > 0.
using Monomial = std::vector<std::pair<VarId, std::uint32_t>>;

inline std::uint32_t monomial_degree(const Monomial& m) {
    std::uint32_t d = 0;
    for (const auto& [v, p] : m) d += p;
    return d;
}

// Graded lexicographic order on exponent vectors, variables compared by
// (block, coord, kind).
struct GradedLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const std::uint32_t da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        // Lexicographic on the dense reading of the sparse exponent vectors:
        // at the earliest differing variable, the larger exponent is greater.
        auto ia = a.begin(), ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (ia->first != ib->first) return ib->first < ia->first;
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia;
            ++ib;
        }
        return ib != b.end();
    }
};

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            out.push_back(*ia++);
        } else if (ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            out.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    out.insert(out.end(), ia, a.end());
    out.insert(out.end(), ib, b.end());
    return out;
}

class Poly {
  public:
    using TermMap = std::map<Monomial, Rational, GradedLess>;

    Poly() = default;
    explicit Poly(Rational c) {
        if (c != 0) terms_.emplace(Monomial{}, std::move(c));
    }
    explicit Poly(long c) : Poly(Rational(c)) {}

    static Poly var(VarId v, std::uint32_t power = 1) {
        Poly p;
        if (power == 0) return Poly(Rational(1));
        p.terms_.emplace(Monomial{{v, power}}, Rational(1));
        return p;
    }

    static Poly from_terms(TermMap terms) {
        Poly p;
        p.terms_ = std::move(terms);
        std::erase_if(p.terms_, [](const auto& kv) { return kv.second == 0; });
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_.begin()->second;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        if (a.is_zero() || b.is_zero()) return out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_mul(ma, mb), ca * cb);
        return out;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(const Poly& a, const Rational& s) {
        Poly out;
        if (s == 0) return out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, c * s);
        return out;
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }
    Poly& operator*=(const Rational& s) { return *this = *this * s; }

    friend Poly operator/(const Poly& a, const Rational& s) {
        if (s == 0) throw std::domain_error("division by zero scalar");
        Poly out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, c / s);
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    Poly pow(std::uint32_t e) const {
        Poly acc{Rational(1)};
        Poly base = *this;
        while (e) {
            if (e & 1u) acc *= base;
            if (e >>= 1u) base *= base;
        }
        return acc;
    }

    template <typename PointFn>  // PointFn: VarId -> Rational
    Rational eval(PointFn&& point) const {
        Rational acc(0);
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (const auto& [v, p] : m) t *= rational_pow(point(v), p);
            acc += t;
        }
        return acc;
    }

    template <typename PointFn>  // PointFn: VarId -> double
    double eval_double(PointFn&& point) const {
        double acc = 0.0;
        for (const auto& [m, c] : terms_) {
            double t = rational_to_double(c);
            for (const auto& [v, p] : m) {
                const double x = point(v);
                for (std::uint32_t i = 0; i < p; ++i) t *= x;
            }
            acc += t;
        }
        return acc;
    }

    // Substitutes whole polynomials for selected variables; unlisted
    // variables stay untouched.
    Poly substitute(const std::map<VarId, Poly>& repl) const {
        Poly out;
        for (const auto& [m, c] : terms_) {
            Poly term{c};
            Monomial untouched;
            for (const auto& [v, p] : m) {
                auto it = repl.find(v);
                if (it == repl.end())
                    untouched.emplace_back(v, p);
                else
                    term *= it->second.pow(p);
            }
            if (!untouched.empty()) term *= Poly::from_terms({{untouched, Rational(1)}});
            out += term;
        }
        return out;
    }

    // Renames block indices; (coord, kind) are preserved.
    Poly rename_blocks(const std::map<std::uint32_t, std::uint32_t>& mapping) const {
        Poly out;
        for (const auto& [m, c] : terms_) {
            Monomial renamed;
            renamed.reserve(m.size());
            for (auto [v, p] : m) {
                if (auto it = mapping.find(v.block); it != mapping.end()) v.block = it->second;
                renamed.emplace_back(v, p);
            }
            std::sort(renamed.begin(), renamed.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            // A rename may merge variables only if the mapping is non-injective
            // on the blocks present; rebuild defensively.
            Monomial merged;
            for (const auto& [v, p] : renamed) {
                if (!merged.empty() && merged.back().first == v)
                    merged.back().second += p;
                else
                    merged.emplace_back(v, p);
            }
            Poly t;
            t.terms_.emplace(std::move(merged), c);
            out += t;
        }
        return out;
    }

    // Renames whole variables; non-injective maps merge exponents.
    Poly rename_vars(const std::map<VarId, VarId>& mapping) const {
        Poly out;
        for (const auto& [m, c] : terms_) {
            Monomial renamed;
            renamed.reserve(m.size());
            for (auto [v, p] : m) {
                if (auto it = mapping.find(v); it != mapping.end()) v = it->second;
                renamed.emplace_back(v, p);
            }
            std::sort(renamed.begin(), renamed.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            Monomial merged;
            for (const auto& [v, p] : renamed) {
                if (!merged.empty() && merged.back().first == v)
                    merged.back().second += p;
                else
                    merged.emplace_back(v, p);
            }
            Poly t;
            t.terms_.emplace(std::move(merged), c);
            out += t;
        }
        return out;
    }

    std::uint32_t degree_in(VarId v) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_)
            for (const auto& [w, p] : m)
                if (w == v) d = std::max(d, p);
        return d;
    }

    // Max total degree of a block's variables (x and y, all coords) over terms.
    std::uint32_t block_degree(std::uint32_t block) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) {
            std::uint32_t t = 0;
            for (const auto& [v, p] : m)
                if (v.block == block) t += p;
            d = std::max(d, t);
        }
        return d;
    }

    std::vector<std::uint32_t> blocks_present() const {
        std::vector<std::uint32_t> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, p] : m) out.push_back(v.block);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool has_kind(VarKind k) const {
        for (const auto& [m, c] : terms_)
            for (const auto& [v, p] : m)
                if (v.kind == k) return true;
        return false;
    }

    std::string to_string() const;

  private:
    TermMap terms_;
};

// Substitutes 1 for every y-letter, leaving the x-letters untouched.
inline Poly dehomogenize(const Poly& p) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial keep;
        for (const auto& [v, pw] : m)
            if (v.kind == VarKind::X) keep.emplace_back(v, pw);
        out.add_term(keep, c);
    }
    return out;
}

// prod_{i<j} (vars[j] - vars[i]); a single variable gives 1.
inline Poly vandermonde(const std::vector<VarId>& vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                throw std::invalid_argument("vandermonde: duplicate variable (product would vanish)");
    Poly acc{Rational(1)};
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            acc *= Poly::var(vars[j]) - Poly::var(vars[i]);
    return acc;
}

// Exact multivariate division: returns q with a == q * b. Throws if b does
// not divide a (callers only use it where divisibility holds by construction,
// e.g. the bialternant quotient).
inline Poly exact_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
    Poly rem = a;
    Poly quot;
    const auto& blead = *b.terms().rbegin();  // greatest monomial in graded lex
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms().rbegin();
        // Divide leading monomials.
        Monomial q;
        auto ir = rlead.first.begin();
        bool divisible = true;
        for (auto ib = blead.first.begin(); ib != blead.first.end() && divisible; ++ib) {
            while (ir != rlead.first.end() && ir->first < ib->first) {
                q.push_back(*ir);
                ++ir;
            }
            if (ir == rlead.first.end() || ir->first != ib->first || ir->second < ib->second) {
                divisible = false;
                break;
            }
            if (ir->second > ib->second) q.emplace_back(ir->first, ir->second - ib->second);
            ++ir;
        }
        if (!divisible) throw std::domain_error("exact_divide: not divisible");
        q.insert(q.end(), ir, rlead.first.end());
        const Rational qc = rlead.second / blead.second;
        Poly qterm = Poly::from_terms({{q, qc}});
        quot += qterm;
        rem -= qterm * b;
    }
    return quot;
}

inline std::string var_to_string(const VarId& v) {
    std::string s = v.kind == VarKind::X ? "x" : "y";
    s += std::to_string(v.block);
    if (v.coord != 0) s += "_" + std::to_string(v.coord);
    return s;
}

inline std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Print highest terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        const Rational ac = c > 0 ? c : Rational(-c);
        const bool unit = ac == 1 && !m.empty();
        if (!unit) out += rational_to_string(ac);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!unit || i > 0) out += "*";
            out += var_to_string(m[i].first);
            if (m[i].second > 1) out += "^" + std::to_string(m[i].second);
        }
    }
    return out;
}

}  // namespace apolar
