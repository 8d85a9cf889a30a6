#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cfree/linalg.hpp"
#include "cfree/ncseries.hpp"
#include "cfree/rational.hpp"
#include "cfree/word.hpp"

namespace cfree {

/// Sparse element of the free algebra ℚ⟨x_1,…,x_d⟩.  Zero coefficients are
/// never stored, so the zero polynomial has no terms and equality is
/// structural.
class NCPolynomial {
public:
    using TermMap = std::map<Word, Scalar, GradedLex>;

    explicit NCPolynomial(std::size_t d) : d_(d) {}
    NCPolynomial(std::size_t d, TermMap terms);

    static NCPolynomial constant(std::size_t d, const Scalar& c);
    static NCPolynomial one(std::size_t d) { return constant(d, Scalar(1)); }
    static NCPolynomial variable(std::size_t d, Letter i);
    static NCPolynomial monomial(std::size_t d, const Word& w, const Scalar& c = Scalar(1));

    std::size_t d() const { return d_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Highest word length present; -1 for the zero polynomial.
    int degree() const;
    Scalar coefficient(const Word& w) const;
    Scalar constant_term() const { return coefficient(Word{}); }

    /// Adds c·x_w in place (drops the term if it cancels).
    void add_term(const Word& w, const Scalar& c);

    /// P ↦ P*: reverses every word (real coefficients, self-adjoint letters).
    NCPolynomial adjoint() const;

    NCPolynomial& operator+=(const NCPolynomial& o);
    NCPolynomial& operator-=(const NCPolynomial& o);
    NCPolynomial& operator*=(const Scalar& s);
    friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { a += b; return a; }
    friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { a -= b; return a; }
    friend NCPolynomial operator-(NCPolynomial a) { a *= Scalar(-1); return a; }
    friend NCPolynomial operator*(NCPolynomial a, const Scalar& s) { a *= s; return a; }
    friend NCPolynomial operator*(const Scalar& s, NCPolynomial a) { a *= s; return a; }
    /// Concatenation product; degrees add.
    friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
    friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) = default;

private:
    std::size_t d_;
    TermMap terms_;
};

/// Sparse element of ℚ⟨x⟩ ⊗ ℚ⟨x⟩.
class TensorPolynomial {
public:
    using Key = std::pair<Word, Word>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            GradedLex lt;
            if (lt(a.first, b.first)) return true;
            if (lt(b.first, a.first)) return false;
            return lt(a.second, b.second);
        }
    };
    using TermMap = std::map<Key, Scalar, KeyLess>;

    explicit TensorPolynomial(std::size_t d) : d_(d) {}

    /// p ⊗ q
    static TensorPolynomial tensor(const NCPolynomial& p, const NCPolynomial& q);

    std::size_t d() const { return d_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Word& left, const Word& right, const Scalar& c);

    TensorPolynomial& operator+=(const TensorPolynomial& o);
    TensorPolynomial& operator-=(const TensorPolynomial& o);
    friend TensorPolynomial operator+(TensorPolynomial a, const TensorPolynomial& b) { a += b; return a; }
    friend TensorPolynomial operator-(TensorPolynomial a, const TensorPolynomial& b) { a -= b; return a; }
    /// (a⊗b)(c⊗d) = ac ⊗ bd
    friend TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b);
    friend bool operator==(const TensorPolynomial& a, const TensorPolynomial& b) = default;

private:
    std::size_t d_;
    TermMap terms_;
};

/// Partial difference quotient ∂_i: x_{u(1)}…x_{u(n)} ↦ Σ_{j: u(j)=i} x_{u(1)}…x_{u(j-1)} ⊗ x_{u(j+1)}…x_{u(n)}.
TensorPolynomial diff_quotient(Letter i, const NCPolynomial& p);

/// Left partial derivative D_i: x_u ↦ δ_{i,u(1)} x_{u(2)}…x_{u(n)}.
NCPolynomial left_derivative(Letter i, const NCPolynomial& p);

/// Applies a moment functional (given by its moment series, constant term 1)
/// to one tensor factor: Side::Left computes (s ⊗ I)[t], Side::Right (I ⊗ s)[t].
NCPolynomial apply_state_partial(Side side, const NCSeries& moments, const TensorPolynomial& t);

/// s[p] = Σ_w p_w s[x_w].
Scalar apply_functional(const NCSeries& moments, const NCPolynomial& p);

/// Substitutes x_i ↦ ops[i] and the unit ↦ identity.
Matrix evaluate(const NCPolynomial& p, std::span<const Matrix> ops);

}  // namespace cfree
