#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lti {

using Vector = std::vector<double>;

/**
 * @brief Dense real matrix with row-major storage.
 *
 * The universal numeric carrier of the toolkit: state maps, input/output
 * maps, Gramians, Riccati matrices and gains are all plain matrices.
 * Values are immutable once built by the analysis routines; the type
 * itself has ordinary value semantics.
 */
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw DimensionMismatch("matrix initializer rows have unequal lengths");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    static Matrix diagonal(const Vector& d) {
        Matrix D(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
        return D;
    }

    /// n x 1 matrix from a vector.
    static Matrix column(const Vector& v) {
        Matrix c(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) c(i, 0) = v[i];
        return c;
    }

    /// 1 x n matrix from a vector.
    static Matrix row(const Vector& v) {
        Matrix r(1, v.size());
        for (std::size_t j = 0; j < v.size(); ++j) r(0, j) = v[j];
        return r;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_ && rows_ > 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double trace() const {
        require_square("trace");
        double s = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }

    /// Maximum absolute row sum.
    double norm_inf() const {
        double best = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) row_sum += std::abs((*this)(i, j));
            if (row_sum > best) best = row_sum;
        }
        return best;
    }

    double max_abs() const {
        double best = 0.0;
        for (double v : data_) best = std::max(best, std::abs(v));
        return best;
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    Vector column_vector(std::size_t c) const {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
        return v;
    }

    Matrix& operator+=(const Matrix& other) {
        require_same_shape(other, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& other) {
        require_same_shape(other, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
        return *this;
    }

    Matrix& operator*=(double s) {
        for (double& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    Matrix operator-() const {
        Matrix r = *this;
        for (double& v : r.data_) v = -v;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) {
            throw DimensionMismatch("matrix product: " + shape_text(a) + " * " + shape_text(b));
        }
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        }
        return r;
    }

    void require_square(const std::string& op) const {
        if (!is_square()) throw DimensionMismatch(op + " requires a square matrix, got " + shape_text(*this));
    }

private:
    void require_same_shape(const Matrix& other, const std::string& op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw DimensionMismatch("matrix " + op + ": " + shape_text(*this) + " vs " + shape_text(other));
        }
    }

    static std::string shape_text(const Matrix& m) {
        return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) {
        throw DimensionMismatch("matrix-vector product: " + std::to_string(a.cols()) +
                                " columns vs vector of length " + std::to_string(x.size()));
    }
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector add: unequal lengths");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sub: unequal lengths");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector scaled(const Vector& a, double s) {
    Vector r(a);
    for (double& v : r) v *= s;
    return r;
}

inline double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: unequal lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vector& a) {
    double best = 0.0;
    for (double v : a) best = std::max(best, std::abs(v));
    return best;
}

/// Largest entrywise absolute difference; matrices must share a shape.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("max_abs_diff: shapes differ");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            best = std::max(best, std::abs(a(i, j) - b(i, j)));
    return best;
}

inline Matrix symmetrized(const Matrix& m) {
    m.require_square("symmetrized");
    Matrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

inline double asymmetry_inf(const Matrix& m) {
    m.require_square("asymmetry_inf");
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            best = std::max(best, std::abs(m(i, j) - m(j, i)));
    return best;
}

} // namespace lti
