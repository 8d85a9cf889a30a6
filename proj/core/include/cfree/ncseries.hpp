#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "cfree/rational.hpp"
#include "cfree/word.hpp"

namespace cfree {

using Scalar = Rational;

enum class Side { Left, Right };

/// Truncated non-commutative formal power series in d variables: every word
/// of degree at most N carries a (possibly zero) coefficient.
///
/// Arithmetic between series of different truncation degree or variable count
/// throws; use `truncated()` / `extended()` to convert explicitly.
class NCSeries {
public:
    NCSeries(std::size_t d, std::size_t N, std::size_t max_size = WordSpace::kDefaultMaxSize);

    static NCSeries constant(std::size_t d, std::size_t N, const Scalar& c);
    static NCSeries one(std::size_t d, std::size_t N) { return constant(d, N, Scalar(1)); }
    static NCSeries variable(std::size_t d, std::size_t N, Letter i);
    static NCSeries from_terms(std::size_t d, std::size_t N, const std::map<Word, Scalar, GradedLex>& terms);

    std::size_t d() const { return space_.d(); }
    std::size_t trunc_degree() const { return space_.trunc_degree(); }
    const WordSpace& space() const { return space_; }
    std::size_t size() const { return coeffs_.size(); }

    const Scalar& operator[](const Word& w) const { return coeffs_[space_.index(w)]; }
    const Scalar& at(std::size_t index) const { return coeffs_[index]; }
    Scalar& at(std::size_t index) { return coeffs_[index]; }
    void set(const Word& w, const Scalar& value) { coeffs_[space_.index(w)] = value; }
    const Scalar& constant_term() const { return coeffs_[0]; }

    bool is_zero() const;
    /// True when every coefficient of degree >= 1 vanishes.
    bool is_constant() const;

    /// Copy keeping only degrees <= n (n <= N).
    NCSeries truncated(std::size_t n) const;
    /// Copy embedded into a larger truncation, new coefficients zero.
    NCSeries extended(std::size_t n) const;
    /// Copy with all coefficients of degree != n set to zero.
    NCSeries homogeneous_part(std::size_t n) const;
    /// Word reversal z_{u(1)}…z_{u(n)} ↦ z_{u(n)}…z_{u(1)}; an anti-automorphism.
    NCSeries reversed() const;
    /// Left derivative D_i; the result is known only to degree N-1.
    NCSeries left_derivative(Letter i) const;

    /// Nonzero coefficients in graded-lex order.
    std::vector<std::pair<Word, Scalar>> nonzero_terms() const;

    NCSeries& operator+=(const NCSeries& o);
    NCSeries& operator-=(const NCSeries& o);
    NCSeries& operator*=(const Scalar& s);
    friend NCSeries operator+(NCSeries a, const NCSeries& b) { a += b; return a; }
    friend NCSeries operator-(NCSeries a, const NCSeries& b) { a -= b; return a; }
    friend NCSeries operator*(NCSeries a, const Scalar& s) { a *= s; return a; }
    friend NCSeries operator*(const Scalar& s, NCSeries a) { a *= s; return a; }
    friend NCSeries operator-(NCSeries a) { a *= Scalar(-1); return a; }
    /// Truncated Cauchy product (concatenation of words).
    friend NCSeries operator*(const NCSeries& a, const NCSeries& b);
    friend bool operator==(const NCSeries& a, const NCSeries& b);

private:
    WordSpace space_;
    std::vector<Scalar> coeffs_;
};

/// Two-sided inverse modulo degree N+1.  Throws on a zero constant term.
NCSeries inverse(const NCSeries& s);

/// Replaces every letter z_i of `s` by T·w_i (Side::Left) or w_i·T
/// (Side::Right) and expands, truncated at the common degree N.
NCSeries substitute_sided(const NCSeries& s, const NCSeries& t, Side side);

/// The two equivalent functional equations tying moments to free cumulants:
///   RwM: M(w) = R(w (1 + M(w)))      RMw: M(w) = R((1 + M(w)) w)
enum class FixedPointVariant { RwM, RMw };

/// The unique M with zero constant term satisfying the chosen equation for a
/// given R with zero constant term, solved degree by degree.
NCSeries solve_moment_series(const NCSeries& r, FixedPointVariant variant);

/// Inverse direction: the unique R with zero constant term for which `m`
/// (zero constant term) solves the chosen equation.
NCSeries solve_free_cumulant_series(const NCSeries& m, FixedPointVariant variant);

}  // namespace cfree
