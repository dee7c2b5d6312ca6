#pragma once

// Dense exact linear algebra over Q: row reduction, rank, kernels,
// determinants and products of small square matrices.

#include <cstddef>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace nilcascade {

using RVec = std::vector<Rational>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (auto& r : init) {
            if (r.size() != cols_) throw ValidationError("bad_matrix", "ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw InvariantError("matrix product shape mismatch");
        Matrix p(rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(r, k);
                if (a == 0) continue;
                for (std::size_t c = 0; c < o.cols_; ++c)
                    if (o(k, c) != 0) p(r, c) += a * o(k, c);
            }
        return p;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix s(*this);
        for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] += o.data_[k];
        return s;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix s(*this);
        for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] -= o.data_[k];
        return s;
    }

    Matrix scaled(const Rational& f) const {
        Matrix s(*this);
        for (auto& x : s.data_) x *= f;
        return s;
    }

    Rational trace() const {
        Rational t = 0;
        for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
        return t;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (m(row, c) != 0) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<RVec> kernel(Matrix m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RVec v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rows of the reduced echelon form of the span of `vectors`.
inline std::vector<RVec> row_basis(const std::vector<RVec>& vectors, std::size_t dim) {
    Matrix m(vectors.size(), dim);
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = vectors[r][c];
    auto pivots = rref(m);
    std::vector<RVec> out;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        RVec v(dim);
        for (std::size_t c = 0; c < dim; ++c) v[c] = m(r, c);
        out.push_back(std::move(v));
    }
    return out;
}

inline std::size_t span_rank(const std::vector<RVec>& vectors, std::size_t dim) {
    return row_basis(vectors, dim).size();
}

/// Whether v lies in span(basis).
inline bool in_span(const std::vector<RVec>& basis, const RVec& v) {
    std::vector<RVec> ext(basis);
    ext.push_back(v);
    return span_rank(ext, v.size()) == span_rank(basis, v.size());
}

inline Rational determinant(Matrix m) {
    if (m.rows() != m.cols()) throw InvariantError("determinant of a non-square matrix");
    Rational det = 1;
    std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m(p, col) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) == 0) continue;
            Rational f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

/// exp(X) for nilpotent X: the finite sum Σ X^k / k!.
inline Matrix exp_nilpotent(const Matrix& x) {
    std::size_t n = x.rows();
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        term = (term * x).scaled(Rational(1, static_cast<long>(k)));
        if (term.is_zero()) return result;
        result = result + term;
    }
    if (!term.is_zero()) throw InvariantError("exp_nilpotent: matrix is not nilpotent");
    return result;
}

}  // namespace nilcascade
