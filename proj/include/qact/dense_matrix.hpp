#pragma once

// Small dense matrices over an exact ring; the elimination routines need a field
// (Rational or Cyclotomic).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qact/error.hpp"

namespace qact {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : r_(rows), c_(cols), d_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < d_.size(); ++k) d_[k] = d_[k] + o.d_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < d_.size(); ++k) d_[k] = d_[k] - o.d_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) fail(ErrorKind::InvalidParameter, "matrix shapes do not match");
        Matrix p(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& v = a(i, k);
                if (is_zero_value(v)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) p(i, j) = p(i, j) + v * b(k, j);
            }
        return p;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& v : a.d_) v = s * v;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }

    bool is_zero() const {
        for (const auto& v : d_)
            if (!is_zero_value(v)) return false;
        return true;
    }

    static bool is_zero_value(const T& v) {
        if constexpr (requires { v.is_zero(); })
            return v.is_zero();
        else
            return v == T(0);
    }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) fail(ErrorKind::InvalidParameter, "matrix shapes do not match");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> d_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && Matrix<T>::is_zero_value(a(p, col))) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
        T inv = T(1) / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || Matrix<T>::is_zero_value(a(i, col))) continue;
            T f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a) {
    return row_reduce(a).size();
}

template <class T>
T determinant(Matrix<T> a) {
    if (a.rows() != a.cols()) fail(ErrorKind::InvalidParameter, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    T det = T(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && Matrix<T>::is_zero_value(a(p, col))) ++p;
        if (p == n) return T(0);
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(col, j));
            det = T(0) - det;
        }
        det = det * a(col, col);
        T inv = T(1) / a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (Matrix<T>::is_zero_value(a(i, col))) continue;
            T f = a(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) a(i, j) = a(i, j) - f * a(col, j);
        }
    }
    return det;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) fail(ErrorKind::InvalidParameter, "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    auto piv = row_reduce(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrorKind::Arithmetic, "singular matrix");
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

/// Solution set of a x = b: a particular solution plus a basis of the kernel, or nullopt if inconsistent.
template <class T>
struct LinearSolution {
    std::vector<T> particular;
    std::vector<std::vector<T>> kernel;
};

template <class T>
std::optional<LinearSolution<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
    if (b.size() != a.rows()) fail(ErrorKind::InvalidParameter, "right-hand side has wrong length");
    const std::size_t n = a.cols();
    Matrix<T> aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto piv = row_reduce(aug);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    LinearSolution<T> sol;
    sol.particular.assign(n, T(0));
    std::vector<char> is_pivot(n, 0);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        sol.particular[piv[r]] = aug(r, n);
        is_pivot[piv[r]] = 1;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(n, T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = T(0) - aug(r, f);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

}  // namespace qact
