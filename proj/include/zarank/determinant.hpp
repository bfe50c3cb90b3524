#pragma once

/*
 * Exact determinants of small square matrices.
 *
 * Rational input is first brought to an integer matrix by scaling every
 * column with the lcm of its denominators; the integer determinant is then
 * computed by fraction-free (Bareiss) elimination, where every division is
 * exact. Row swaps on a zero pivot flip the sign.
 */

#include "zarank/rational.hpp"

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace zarank {

/// Bareiss elimination on a row-major n x n integer matrix (consumed).
inline Integer bareiss_determinant(std::vector<Integer> a, std::size_t n) {
    if (a.size() != n * n) throw std::invalid_argument("bareiss: matrix is not n x n");
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    auto at = [&](std::size_t r, std::size_t c) -> Integer& { return a[r * n + c]; };
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            }
        }
        prev = at(k, k);
    }
    Integer det = at(n - 1, n - 1);
    return sign < 0 ? Integer(-det) : det;
}

/// Determinant of the matrix whose columns are the given vectors (all of length n).
inline Rational column_determinant(std::span<const std::vector<Rational>* const> columns) {
    const std::size_t n = columns.size();
    for (const auto* c : columns) {
        if (c->size() != n) throw std::invalid_argument("column_determinant: not a square matrix");
    }
    if (n == 2) {
        const auto& u = *columns[0];
        const auto& v = *columns[1];
        return u[0] * v[1] - u[1] * v[0];
    }
    std::vector<Integer> m(n * n);
    Integer scale = 1;
    for (std::size_t c = 0; c < n; ++c) {
        Integer l = 1;
        for (const auto& x : *columns[c]) {
            const Integer den = denominator_of(x);
            l = l / boost::multiprecision::gcd(l, den) * den;
        }
        scale *= l;
        for (std::size_t r = 0; r < n; ++r) {
            const Rational& x = (*columns[c])[r];
            m[r * n + c] = numerator_of(x) * (l / denominator_of(x));
        }
    }
    return Rational(bareiss_determinant(std::move(m), n), scale);
}

inline Rational column_determinant(const std::vector<std::vector<Rational>>& columns) {
    std::vector<const std::vector<Rational>*> ptrs;
    ptrs.reserve(columns.size());
    for (const auto& c : columns) ptrs.push_back(&c);
    return column_determinant(std::span<const std::vector<Rational>* const>(ptrs));
}

} // namespace zarank
