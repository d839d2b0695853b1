#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cellcount/errors.hpp"
#include "cellcount/numeric.hpp"

namespace cellcount {

// Dense integer matrix with arbitrary-precision entries, row-major storage.
// Shapes with zero rows or zero columns are legal and used throughout
// (boundary matrices of complexes with no ridges or no facets).
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

    static IntMatrix from_rows(std::vector<std::vector<Int>> const &rows) {
        IntMatrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        m.data_.reserve(m.rows_ * m.cols_);
        for (auto const &row : rows) {
            if (row.size() != m.cols_)
                throw DimensionMismatch("ragged rows in matrix literal");
            for (auto const &v : row)
                m.data_.push_back(v);
        }
        return m;
    }

    static IntMatrix from_rows(std::vector<std::vector<long long>> const &rows) {
        std::vector<std::vector<Int>> lifted(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            lifted[i].assign(rows[i].begin(), rows[i].end());
        return from_rows(lifted);
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int &at(std::size_t r, std::size_t c) {
        check(r, c);
        return data_[r * cols_ + c];
    }

    Int const &at(std::size_t r, std::size_t c) const {
        check(r, c);
        return data_[r * cols_ + c];
    }

    bool operator==(IntMatrix const &other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }
    bool operator!=(IntMatrix const &other) const { return !(*this == other); }

    bool is_zero() const {
        for (auto const &v : data_)
            if (v != 0)
                return false;
        return true;
    }

    std::vector<Int> row(std::size_t r) const {
        if (r >= rows_)
            throw IndexOutOfRange("row index");
        return std::vector<Int>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }

    std::vector<Int> column(std::size_t c) const {
        if (c >= cols_)
            throw IndexOutOfRange("column index");
        std::vector<Int> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] = data_[r * cols_ + c];
        return out;
    }

    bool column_is_zero(std::size_t c) const {
        for (std::size_t r = 0; r < rows_; ++r)
            if (at(r, c) != 0)
                return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t.at(c, r) = at(r, c);
        return t;
    }

    IntMatrix select_rows(std::vector<std::size_t> const &idx) const {
        IntMatrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= rows_)
                throw IndexOutOfRange("row selection");
            for (std::size_t c = 0; c < cols_; ++c)
                m.at(i, c) = at(idx[i], c);
        }
        return m;
    }

    IntMatrix select_columns(std::vector<std::size_t> const &idx) const {
        IntMatrix m(rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] >= cols_)
                throw IndexOutOfRange("column selection");
            for (std::size_t r = 0; r < rows_; ++r)
                m.at(r, j) = at(r, idx[j]);
        }
        return m;
    }

    IntMatrix delete_column(std::size_t c) const {
        if (c >= cols_)
            throw IndexOutOfRange("column deletion");
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < cols_; ++j)
            if (j != c)
                keep.push_back(j);
        return select_columns(keep);
    }

    IntMatrix delete_row(std::size_t r) const {
        if (r >= rows_)
            throw IndexOutOfRange("row deletion");
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r)
                keep.push_back(i);
        return select_rows(keep);
    }

    IntMatrix multiply(IntMatrix const &other) const {
        if (cols_ != other.rows_)
            throw DimensionMismatch("matrix product shapes");
        IntMatrix p(rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                Int const &a = at(r, k);
                if (a == 0)
                    continue;
                for (std::size_t c = 0; c < other.cols_; ++c)
                    p.at(r, c) += a * other.at(k, c);
            }
        return p;
    }

    // M * v for a column vector v.
    std::vector<Int> mul_vec(std::vector<Int> const &v) const {
        if (v.size() != cols_)
            throw DimensionMismatch("matrix-vector product");
        std::vector<Int> out(rows_, Int(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (at(r, c) != 0)
                    out[r] += at(r, c) * v[c];
        return out;
    }

    // v^T * M for a row vector v.
    std::vector<Int> vec_mul(std::vector<Int> const &v) const {
        if (v.size() != rows_)
            throw DimensionMismatch("vector-matrix product");
        std::vector<Int> out(cols_, Int(0));
        for (std::size_t r = 0; r < rows_; ++r)
            if (v[r] != 0)
                for (std::size_t c = 0; c < cols_; ++c)
                    out[c] += v[r] * at(r, c);
        return out;
    }

    Int max_abs_entry() const {
        Int m = 0;
        for (auto const &v : data_)
            if (int_abs(v) > m)
                m = int_abs(v);
        return m;
    }

    // Compact canonical serialization; used as a memoization key.
    std::string serialize() const {
        std::ostringstream os;
        os << rows_ << "x" << cols_ << ":";
        for (auto const &v : data_)
            os << v << ",";
        return os.str();
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t r = 0; r < rows_; ++r) {
            os << "[";
            for (std::size_t c = 0; c < cols_; ++c)
                os << (c ? " " : "") << at(r, c);
            os << "]";
            if (r + 1 < rows_)
                os << "\n";
        }
        return os.str();
    }

  private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw IndexOutOfRange("matrix entry (" + std::to_string(r) + "," +
                                  std::to_string(c) + ") of " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Int> data_;
};

} // namespace cellcount
