#include "cfree/linalg.hpp"

#include <utility>

#include "cfree/error.hpp"

namespace cfree {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

bool Matrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i != j && !(*this)(i, j).is_zero()) return false;
        }
    }
    return true;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return c;
}

bool is_positive_semidefinite(const Matrix& symmetric) {
    if (!symmetric.is_square()) throw DimensionMismatch("PSD test needs a square matrix");
    Matrix a = symmetric;
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Rational pivot = a(k, k);
        if (pivot.sign() < 0) return false;
        if (pivot.is_zero()) {
            for (std::size_t j = k + 1; j < n; ++j) {
                if (!a(k, j).is_zero() || !a(j, k).is_zero()) return false;
            }
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            const Rational factor = a(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (!a(k, j).is_zero()) a(i, j) -= factor * a(k, j);
            }
        }
    }
    return true;
}

namespace {

// Reduces `m` (with optional augmented rhs) to row echelon form, returning the
// pivot columns.
std::vector<std::size_t> echelon(Matrix& m, std::vector<Rational>* rhs) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
            if (rhs) std::swap((*rhs)[p], (*rhs)[row]);
        }
        const Rational inv = Rational(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        if (rhs) (*rhs)[row] *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
            if (rhs) (*rhs)[i] -= f * (*rhs)[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(Matrix m) { return echelon(m, nullptr).size(); }

std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b) {
    if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length mismatch");
    const auto pivots = echelon(a, &b);
    if (pivots.size() != a.cols()) return std::nullopt;
    for (std::size_t i = pivots.size(); i < a.rows(); ++i) {
        if (!b[i].is_zero()) return std::nullopt;
    }
    std::vector<Rational> x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
    return x;
}

}  // namespace cfree
