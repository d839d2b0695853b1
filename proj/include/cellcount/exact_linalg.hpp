#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cellcount/errors.hpp"
#include "cellcount/matrix.hpp"
#include "cellcount/numeric.hpp"

namespace cellcount {

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det_bareiss(IntMatrix const &m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (a.at(t, t) == 0) {
            std::size_t swap_row = t;
            for (std::size_t i = t + 1; i < n; ++i)
                if (a.at(i, t) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row == t)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(t, j), a.at(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = t + 1; i < n; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                a.at(i, j) = (a.at(t, t) * a.at(i, j) - a.at(i, t) * a.at(t, j)) / prev;
        prev = a.at(t, t);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

// Rank over Q (equivalently over Z) by fraction-free elimination.
inline std::size_t rank(IntMatrix const &m) {
    IntMatrix a = m;
    std::size_t n = a.rows(), cols = a.cols();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < cols && r < n; ++c) {
        std::size_t piv = r;
        while (piv < n && a.at(piv, c) == 0)
            ++piv;
        if (piv == n)
            continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(a.at(r, j), a.at(piv, j));
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a.at(i, j) = (a.at(r, c) * a.at(i, j) - a.at(i, c) * a.at(r, j)) / prev;
            a.at(i, c) = 0;
        }
        prev = a.at(r, c);
        ++r;
    }
    return r;
}

// Greedy selection of a maximal independent subset of rows, in index order.
inline std::vector<std::size_t> independent_rows(IntMatrix const &m) {
    std::vector<std::size_t> chosen;
    std::size_t current = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        chosen.push_back(i);
        std::size_t r = rank(m.select_rows(chosen));
        if (r > current)
            current = r;
        else
            chosen.pop_back();
    }
    return chosen;
}

inline std::vector<std::size_t> independent_columns(IntMatrix const &m) {
    std::vector<std::size_t> chosen;
    std::size_t current = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        chosen.push_back(j);
        std::size_t r = rank(m.select_columns(chosen));
        if (r > current)
            current = r;
        else
            chosen.pop_back();
    }
    return chosen;
}

// Smith decomposition: left * M * right is diagonal with nonnegative entries
// d_1 | d_2 | ... ; left and right are unimodular.
struct SmithDecomposition {
    IntMatrix left;
    IntMatrix right;
    std::vector<Int> diagonal; // full min(n,m) diagonal, zeros included

    std::vector<Int> invariant_factors() const {
        std::vector<Int> out;
        for (auto const &d : diagonal)
            if (d != 0)
                out.push_back(d);
        return out;
    }

    IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const {
        IntMatrix d(rows, cols);
        for (std::size_t i = 0; i < diagonal.size(); ++i)
            d.at(i, i) = diagonal[i];
        return d;
    }
};

inline SmithDecomposition snf(IntMatrix const &m) {
    std::size_t n = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix left = IntMatrix::identity(n);
    IntMatrix right = IntMatrix::identity(cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t c = 0; c < cols; ++c)
            std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < n; ++c)
            std::swap(left.at(i, c), left.at(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t r = 0; r < n; ++r)
            std::swap(a.at(r, i), a.at(r, j));
        for (std::size_t r = 0; r < cols; ++r)
            std::swap(right.at(r, i), right.at(r, j));
    };
    // row_i -= q * row_j
    auto row_sub = [&](std::size_t i, std::size_t j, Int const &q) {
        if (q == 0)
            return;
        for (std::size_t c = 0; c < cols; ++c)
            a.at(i, c) -= q * a.at(j, c);
        for (std::size_t c = 0; c < n; ++c)
            left.at(i, c) -= q * left.at(j, c);
    };
    // col_i -= q * col_j
    auto col_sub = [&](std::size_t i, std::size_t j, Int const &q) {
        if (q == 0)
            return;
        for (std::size_t r = 0; r < n; ++r)
            a.at(r, i) -= q * a.at(r, j);
        for (std::size_t r = 0; r < cols; ++r)
            right.at(r, i) -= q * right.at(r, j);
    };
    auto row_add = [&](std::size_t i, std::size_t j) { row_sub(i, j, Int(-1)); };

    std::size_t bound = std::min(n, cols);
    std::size_t t = 0;
    for (; t < bound; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = t, pj = t;
            Int best = 0;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    Int v = int_abs(a.at(i, j));
                    if (v != 0 && (!found || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found)
                goto done; // trailing block is zero
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i)
                if (a.at(i, t) != 0) {
                    row_sub(i, t, Int(a.at(i, t) / a.at(t, t)));
                    if (a.at(i, t) != 0)
                        clean = false; // remainder left; re-pivot on it
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a.at(t, j) != 0) {
                    col_sub(j, t, Int(a.at(t, j) / a.at(t, t)));
                    if (a.at(t, j) != 0)
                        clean = false;
                }
            if (!clean)
                continue;

            // Divisibility fixup: the pivot must divide the trailing block.
            bool fixed = false;
            for (std::size_t i = t + 1; i < n && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        row_add(t, i);
                        fixed = true;
                    }
            if (!fixed)
                break;
        }
    }
done:
    SmithDecomposition out;
    for (std::size_t i = 0; i < bound; ++i) {
        if (a.at(i, i) < 0) {
            for (std::size_t c = 0; c < cols; ++c)
                a.at(i, c) = -a.at(i, c);
            for (std::size_t c = 0; c < n; ++c)
                left.at(i, c) = -left.at(i, c);
        }
        out.diagonal.push_back(a.at(i, i));
    }
    out.left = std::move(left);
    out.right = std::move(right);
    return out;
}

// Positive diagonal entries a_1 | a_2 | ... of the Smith normal form.
inline std::vector<Int> invariant_factors(IntMatrix const &m) {
    return snf(m).invariant_factors();
}

// gamma(M, k) = prod_i gcd(k, a_i) over the invariant factors a_i.
inline Int gamma(IntMatrix const &m, Int const &k) {
    if (k < 1)
        throw IndexOutOfRange("gamma requires k >= 1");
    Int g = 1;
    for (auto const &d : invariant_factors(m))
        g *= int_gcd(k, d);
    return g;
}

inline Int gamma(std::vector<Int> const &factors, Int const &k) {
    Int g = 1;
    for (auto const &d : factors)
        g *= int_gcd(k, d);
    return g;
}

// Number of column vectors v over Z_k with M v == 0 (mod k):
// k^(cols - rank) * gamma(M, k).
inline Int count_kernel_mod(IntMatrix const &m, Int const &k) {
    if (k < 1)
        throw IndexOutOfRange("count_kernel_mod requires k >= 1");
    auto factors = invariant_factors(m);
    std::size_t rho = factors.size();
    return int_pow(k, static_cast<unsigned long>(m.cols() - rho)) * gamma(factors, k);
}

namespace detail {

inline void canonicalize_basis_rows(std::vector<std::vector<Int>> &rows) {
    for (auto &row : rows) {
        for (auto const &v : row) {
            if (v == 0)
                continue;
            if (v < 0)
                for (auto &w : row)
                    w = -w;
            break;
        }
    }
    std::sort(rows.begin(), rows.end());
}

} // namespace detail

// Rows form a Z-basis of the integer kernel {v : M v = 0}, i.e. a basis of a
// saturated lattice of rank cols - rank(M). Canonical form: first nonzero
// entry of each row positive, rows sorted lexicographically.
inline IntMatrix kernel_basis(IntMatrix const &m) {
    SmithDecomposition s = snf(m);
    std::size_t rho = s.invariant_factors().size();
    std::vector<std::vector<Int>> rows;
    for (std::size_t j = rho; j < m.cols(); ++j)
        rows.push_back(s.right.column(j));
    detail::canonicalize_basis_rows(rows);
    if (rows.empty())
        return IntMatrix(0, m.cols());
    return IntMatrix::from_rows(rows);
}

// Deformation-retract pivot: requires |M[r][f]| = 1; returns the matrix with
// entries M[i][j] - M[i][f] * M[r][j] / M[r][f] and row r, column f removed.
inline IntMatrix pivot(IntMatrix const &m, std::size_t r, std::size_t f) {
    if (r >= m.rows() || f >= m.cols())
        throw IndexOutOfRange("pivot position");
    Int const &p = m.at(r, f);
    if (p != 1 && p != -1)
        throw NonUnitPivot("pivot entry must be +1 or -1, got " + p.str());
    IntMatrix out(m.rows() - 1, m.cols() - 1);
    std::size_t oi = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == r)
            continue;
        std::size_t oj = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j == f)
                continue;
            // 1/p == p for unit p.
            out.at(oi, oj) = m.at(i, j) - m.at(i, f) * p * m.at(r, j);
            ++oj;
        }
        ++oi;
    }
    return out;
}

// Solve M x = b over the integers. Returns a solution or nullopt.
inline std::optional<std::vector<Int>> integer_solve(IntMatrix const &m,
                                                     std::vector<Int> const &b) {
    if (b.size() != m.rows())
        throw DimensionMismatch("integer_solve right-hand side length");
    SmithDecomposition s = snf(m);
    std::vector<Int> lb = s.left.mul_vec(b);
    std::size_t bound = s.diagonal.size();
    std::vector<Int> u(m.cols(), Int(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = i < bound ? s.diagonal[i] : Int(0);
        if (d == 0) {
            if (lb[i] != 0)
                return std::nullopt;
        } else {
            if (lb[i] % d != 0)
                return std::nullopt;
            if (i < m.cols())
                u[i] = lb[i] / d;
        }
    }
    std::vector<Int> x = s.right.mul_vec(u);
    if (m.mul_vec(x) != b)
        throw Error("integer_solve internal verification failed");
    return x;
}

// Witness for a totally-unimodular violation: a square submatrix whose
// determinant lies outside {-1, 0, 1}.
struct MinorWitness {
    std::vector<std::size_t> row_indices;
    std::vector<std::size_t> col_indices;
    Int determinant;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t> &idx, std::size_t limit) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < limit) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    return idx;
}

// Exhaustive search for a non-unit square minor, smallest sizes first,
// early exit on the first violation.
inline std::optional<MinorWitness> find_non_unit_minor(IntMatrix const &m) {
    std::size_t bound = std::min(m.rows(), m.cols());
    for (std::size_t s = 1; s <= bound; ++s) {
        auto rows = first_combination(s);
        do {
            IntMatrix rsel = m.select_rows(rows);
            auto cols = first_combination(s);
            do {
                Int d = det_bareiss(rsel.select_columns(cols));
                if (d > 1 || d < -1)
                    return MinorWitness{rows, cols, d};
            } while (next_combination(cols, m.cols()));
        } while (next_combination(rows, m.rows()));
    }
    return std::nullopt;
}

} // namespace detail

struct TuKernelBasis {
    IntMatrix basis;                         // (cols - rank) x cols, original column order
    std::vector<std::size_t> basis_columns;  // columns forming the invertible block B
    std::vector<std::size_t> other_columns;  // remaining columns, one kernel row each
};

// Totally-unimodular kernel basis: with columns permuted so a column basis B
// comes first, the rows of [ (B^-1 C)^T | -I ] form a Z-basis of ker M and are
// again totally unimodular. Rows are returned in original column order; the
// permutation is recorded in basis_columns / other_columns.
inline TuKernelBasis tu_kernel_basis(IntMatrix const &m, std::size_t minor_size_bound = 8) {
    if (std::min(m.rows(), m.cols()) > minor_size_bound)
        throw SizeLimitExceeded("tu_kernel_basis minor check bound exceeded");
    if (auto w = detail::find_non_unit_minor(m))
        throw NotTotallyUnimodular("minor with determinant " + w->determinant.str());

    // Dependent rows do not change the kernel; drop them for an invertible B.
    IntMatrix reduced = m.select_rows(independent_rows(m));
    std::vector<std::size_t> basis_cols = independent_columns(reduced);
    std::vector<std::size_t> other_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (std::find(basis_cols.begin(), basis_cols.end(), j) == basis_cols.end())
            other_cols.push_back(j);

    IntMatrix b = reduced.select_columns(basis_cols);
    TuKernelBasis out;
    out.basis_columns = basis_cols;
    out.other_columns = other_cols;
    out.basis = IntMatrix(other_cols.size(), m.cols());
    for (std::size_t i = 0; i < other_cols.size(); ++i) {
        // B y = C_i has a (unique) integer solution since |det B| = 1.
        auto y = integer_solve(b, reduced.column(other_cols[i]));
        if (!y)
            throw Error("tu_kernel_basis: basis block not invertible");
        for (std::size_t j = 0; j < basis_cols.size(); ++j)
            out.basis.at(i, basis_cols[j]) = (*y)[j];
        out.basis.at(i, other_cols[i]) = -1;
    }
    return out;
}

} // namespace cellcount

#include "cellcount/feasibility.hpp"
