#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace mateq {

/// Dense real m x n matrix, row-major, all entries finite.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool is_zero() const noexcept;
    bool same_shape(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    Matrix& operator*=(double s);
    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

Matrix operator*(double s, Matrix m);
Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);

/// Largest absolute entrywise difference. Shapes must agree.
double max_abs_diff(const Matrix& lhs, const Matrix& rhs);

double trace(const Matrix& m);

/// A norm on R^{m x n}: one of the built-ins or a user callback that is
/// absolutely homogeneous, p(lambda X) = |lambda| p(X).
class Norm {
public:
    enum class Kind { One, Two, Infinity, Frobenius, Custom };
    using Function = std::function<double(const Matrix&)>;

    /// Frobenius by default.
    Norm() = default;
    Norm(Kind kind);  // NOLINT(google-explicit-constructor)

    /// Registers a custom function after spot-checking homogeneity on random
    /// matrices of the given shape. Throws InvalidParameter on failure.
    static Norm custom(Function fn, std::size_t check_rows = 2, std::size_t check_cols = 2);

    Kind kind() const noexcept { return kind_; }
    bool is_builtin() const noexcept { return kind_ != Kind::Custom; }
    std::string_view name() const noexcept;

    double operator()(const Matrix& x) const;

private:
    Kind kind_ = Kind::Frobenius;
    Function fn_;
};

/// Parses "one", "two", "inf", "frobenius" (and a few aliases).
Norm parse_norm(std::string_view name);

double norm_one(const Matrix& x);
double norm_infinity(const Matrix& x);
double norm_frobenius(const Matrix& x);
/// Largest singular value by power iteration on X^T X.
double norm_two(const Matrix& x);

}  // namespace mateq
