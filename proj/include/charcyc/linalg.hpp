/**
 * Dense exact-rational linear algebra: elimination, rank, nullspace, and a
 * Fourier-Motzkin feasibility solver with witness recovery.  Sizes here are
 * chamber-sized (ambient dimension <= 3, a handful of constraints), so the
 * doubly-exponential worst case of elimination never bites.
 */
#pragma once

#include "charcyc/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace charcyc {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row major

inline Mat identity_matrix(std::size_t n) {
    Mat m(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    Mat c(a.size(), Vec(b.empty() ? 0 : b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline Vec mat_vec(const Mat& a, const Vec& x) {
    Vec y(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

inline Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Row-echelon rank by fraction-free-enough exact pivoting.
inline std::size_t rank(Mat a) {
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            Rational factor = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
        }
        ++r;
    }
    return r;
}

/// Basis of the right nullspace {x : a x = 0} via reduced row echelon form.
inline std::vector<Vec> nullspace_basis(Mat a, std::size_t cols) {
    std::size_t rows = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        Rational inv = a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational factor = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec x(cols, 0);
        x[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -a[i][free];
        basis.push_back(std::move(x));
    }
    return basis;
}

/// One linear inequality  coeffs . y >= bound.
struct LinearConstraint {
    Vec coeffs;
    Rational bound;
};

namespace detail {

/// Fourier-Motzkin with back-substitution.  Eliminates the last variable,
/// recurses, then picks a feasible value between the surviving bounds.
inline std::optional<Vec> fm_solve(const std::vector<LinearConstraint>& cons, std::size_t nvars) {
    if (nvars == 0) {
        for (const LinearConstraint& c : cons)
            if (c.bound > 0) return std::nullopt;
        return Vec{};
    }
    const std::size_t k = nvars - 1;
    std::vector<LinearConstraint> lowers, uppers, rest;
    for (const LinearConstraint& c : cons) {
        if (c.coeffs[k] > 0) lowers.push_back(c);
        else if (c.coeffs[k] < 0) uppers.push_back(c);
        else rest.push_back(c);
    }
    for (const LinearConstraint& lo : lowers) {
        for (const LinearConstraint& up : uppers) {
            // (bound_lo - sum_lo)/a_lo <= (bound_up - sum_up)/a_up, a_lo > 0 > a_up
            LinearConstraint combined;
            combined.coeffs.assign(k, 0);
            for (std::size_t j = 0; j < k; ++j)
                combined.coeffs[j] = -up.coeffs[k] * lo.coeffs[j] + lo.coeffs[k] * up.coeffs[j];
            combined.bound = -up.coeffs[k] * lo.bound + lo.coeffs[k] * up.bound;
            rest.push_back(std::move(combined));
        }
    }
    for (LinearConstraint& c : rest) c.coeffs.resize(k);
    std::optional<Vec> partial = fm_solve(rest, k);
    if (!partial) return std::nullopt;
    Vec y = *partial;
    std::optional<Rational> lo_star, up_star;
    for (const LinearConstraint& lo : lowers) {
        Rational sum = 0;
        for (std::size_t j = 0; j < k; ++j) sum += lo.coeffs[j] * y[j];
        Rational b = (lo.bound - sum) / lo.coeffs[k];
        if (!lo_star || b > *lo_star) lo_star = b;
    }
    for (const LinearConstraint& up : uppers) {
        Rational sum = 0;
        for (std::size_t j = 0; j < k; ++j) sum += up.coeffs[j] * y[j];
        Rational b = (up.bound - sum) / up.coeffs[k];
        if (!up_star || b < *up_star) up_star = b;
    }
    Rational yk;
    if (lo_star && up_star) yk = (*lo_star + *up_star) / 2;
    else if (lo_star) yk = *lo_star + 1;
    else if (up_star) yk = *up_star - 1;
    else yk = 0;
    y.push_back(yk);
    return y;
}

}  // namespace detail

/// Witness for  a . y >= bound  for every constraint, or nullopt.
inline std::optional<Vec> solve_inequalities(const std::vector<LinearConstraint>& cons,
                                             std::size_t nvars) {
    return detail::fm_solve(cons, nvars);
}

/**
 * Strict homogeneous feasibility:  find y with  row . y > 0  for every row.
 * By homogeneity this is equivalent to  row . y >= 1, which Fourier-Motzkin
 * decides exactly.
 */
inline std::optional<Vec> solve_strict_positive(const std::vector<Vec>& rows, std::size_t nvars) {
    std::vector<LinearConstraint> cons;
    cons.reserve(rows.size());
    for (const Vec& r : rows) cons.push_back(LinearConstraint{r, Rational(1)});
    return solve_inequalities(cons, nvars);
}

}  // namespace charcyc
