#pragma once

// Rectangular matrices of polynomials and their exact determinants.
//
// Determinants are computed by cofactor expansion for dimension <= 4 and by
// fraction-free Bareiss elimination above; the two are output-identical, and
// the Bareiss intermediate entries stay polynomial because every division is
// exact in the polynomial ring.

#include "apolar/poly.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace apolar {

class PolyMatrix {
  public:
    PolyMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("PolyMatrix: empty dimension");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Poly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Poly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  private:
    std::size_t rows_, cols_;
    std::vector<Poly> entries_;
};

inline Poly det_cofactor(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    Poly acc;
    // Recursive expansion along the first row via an explicit minor copy.
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Poly term = m.at(0, j) * det_cofactor(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

inline Poly det_bareiss(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r][c] = m.at(r, c);

    bool negate = false;
    Poly prev_pivot{Rational(1)};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Poly{};  // whole column zero below: singular
            std::swap(a[k], a[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = exact_divide(num, prev_pivot);
            }
            a[i][k] = Poly{};
        }
        prev_pivot = a[k][k];
    }
    return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

inline Poly det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    return m.rows() <= 4 ? det_cofactor(m) : det_bareiss(m);
}

// Determinant of a matrix whose top row holds polynomials (e.g. monomials)
// while every other row is constant: expand along the top row with rational
// Bareiss minors. Used by the orthogonal-polynomial constructions, where it
// is much cheaper than eliminating polynomial entries.
inline Rational det_rational(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    if (n == 0) return Rational(1);
    bool negate = false;
    Rational prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return Rational(0);
            std::swap(a[k], a[s]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return negate ? Rational(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

inline Poly det_symbolic_top_row(const std::vector<Poly>& top,
                                 const std::vector<std::vector<Rational>>& body) {
    const std::size_t n = top.size();
    if (body.size() != n - 1) throw std::invalid_argument("det_symbolic_top_row: shape mismatch");
    for (const auto& row : body)
        if (row.size() != n) throw std::invalid_argument("det_symbolic_top_row: ragged row");
    Poly acc;
    for (std::size_t j = 0; j < n; ++j) {
        if (top[j].is_zero()) continue;
        std::vector<std::vector<Rational>> minor(n - 1, std::vector<Rational>(n - 1));
        for (std::size_t r = 0; r < n - 1; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[r][cc++] = body[r][c];
            }
        }
        const Rational d = det_rational(std::move(minor));
        if (d == 0) continue;
        Poly term = top[j] * d;
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// Exact rank over the rationals by Gaussian elimination with full pivot search.
inline std::size_t rank_rational(std::vector<std::vector<Rational>> a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

}  // namespace apolar
