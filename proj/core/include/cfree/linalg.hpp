#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cfree/rational.hpp"

namespace cfree {

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_diagonal() const;
    Matrix transposed() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& s, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Exact positive-semidefiniteness test for a symmetric matrix by symmetric
/// elimination.  A zero pivot is admissible only when its whole remaining
/// row vanishes.
bool is_positive_semidefinite(const Matrix& symmetric);

std::size_t rank(Matrix m);

/// Solves A x = b.  Returns nothing unless the solution exists and is unique.
std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b);

}  // namespace cfree
