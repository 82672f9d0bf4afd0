#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qbern {

/// Dense row-major matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, T(0)) {}

    /// Builds from a list of equally long rows.
    explicit Matrix(const std::vector<std::vector<T>>& rows) : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
        entries_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged matrix rows");
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    [[nodiscard]] std::vector<std::vector<T>> to_rows() const {
        std::vector<std::vector<T>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out[i].assign(entries_.begin() + static_cast<long>(i * cols_), entries_.begin() + static_cast<long>((i + 1) * cols_));
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                    " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> entries_;
};

using RMatrix = Matrix<Rational>;

inline RMatrix mat_mul(const RMatrix& a, const RMatrix& b) { return a * b; }

/// Exact Gauss-Jordan inversion. The pivot for each column is the first
/// row at or below the diagonal with a nonzero entry.
inline RMatrix mat_inverse(const RMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("cannot invert a non-square " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " matrix");
    const std::size_t n = a.rows();
    RMatrix work = a;
    RMatrix inv = RMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw SingularMatrix("matrix is singular (no pivot in column " + std::to_string(col) + ")");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        const Rational scale = Rational(1) / work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) *= scale;
            inv(col, j) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work(r, col).is_zero()) continue;
            const Rational factor = work(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= factor * work(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

/// Exact determinant by the same elimination.
inline Rational determinant(const RMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    RMatrix work = a;
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(work(pivot, j), work(col, j));
            det = -det;
        }
        det *= work(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (work(r, col).is_zero()) continue;
            const Rational factor = work(r, col) / work(col, col);
            for (std::size_t j = col; j < n; ++j) work(r, j) -= factor * work(col, j);
        }
    }
    return det;
}

} // namespace qbern
