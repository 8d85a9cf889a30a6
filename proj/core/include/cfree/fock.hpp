#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "cfree/appell.hpp"
#include "cfree/orthopoly.hpp"
#include "cfree/partitions.hpp"
#include "cfree/states.hpp"

namespace cfree {

/// Function on the points of a TestAlgebra; products are pointwise.
using AlgebraElement = std::vector<Scalar>;

/// Commutative algebra of functions on m points with two nonnegative
/// point-mass functionals μ and ν.
class TestAlgebra {
public:
    TestAlgebra(std::vector<Scalar> mu_weights, std::vector<Scalar> nu_weights);

    std::size_t size() const { return mu_.size(); }
    const std::vector<Scalar>& mu_weights() const { return mu_; }
    const std::vector<Scalar>& nu_weights() const { return nu_; }

    Scalar mu(const AlgebraElement& f) const;
    Scalar nu(const AlgebraElement& f) const;
    /// Point indicator e_p.
    AlgebraElement point(std::size_t p) const;
    void check(const AlgebraElement& f) const;

private:
    std::vector<Scalar> mu_;
    std::vector<Scalar> nu_;
};

AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b);
/// f_Λ = ∏_{i ∈ Λ} f_i
AlgebraElement product(const std::vector<AlgebraElement>& fs, const std::vector<std::size_t>& indices);
bool disjoint_support(const AlgebraElement& a, const AlgebraElement& b);

/// Vector in ℂΩ ⊕ ⊕_n (point basis)^{⊗n}, depth at most `depth_limit`.  The
/// empty tuple is the vacuum Ω.
class FockVector {
public:
    using Tuple = std::vector<std::size_t>;

    explicit FockVector(std::size_t depth_limit) : limit_(depth_limit) {}
    static FockVector vacuum(std::size_t depth_limit);
    /// f_1 ⊗ … ⊗ f_n expanded in the point basis.
    static FockVector tensor(const std::vector<AlgebraElement>& fs, std::size_t depth_limit);

    std::size_t depth_limit() const { return limit_; }
    const std::map<Tuple, Scalar>& amplitudes() const { return amps_; }
    Scalar amplitude(const Tuple& t) const;
    Scalar vacuum_amplitude() const { return amplitude({}); }
    bool is_zero() const { return amps_.empty(); }

    void add(const Tuple& t, const Scalar& c);

    FockVector& operator+=(const FockVector& o);
    FockVector& operator-=(const FockVector& o);
    friend FockVector operator+(FockVector a, const FockVector& b) { a += b; return a; }
    friend FockVector operator-(FockVector a, const FockVector& b) { a -= b; return a; }
    friend FockVector operator*(const Scalar& s, const FockVector& v);
    friend bool operator==(const FockVector& a, const FockVector& b) { return a.amps_ == b.amps_; }

private:
    std::size_t limit_;
    std::map<Tuple, Scalar> amps_;
};

/// X(f) v.  Throws TruncationError if a creation would exceed the depth limit.
FockVector ks_apply(const TestAlgebra& alg, const AlgebraElement& f, const FockVector& v);

/// Equal-depth tensors pair through ∏_{i<n} ν ⋅ μ on the last factor;
/// distinct depths are orthogonal.
Scalar fock_inner(const TestAlgebra& alg, const FockVector& a, const FockVector& b);

/// Non-commutative polynomial in the operators X(f_Λ): each key lists the
/// index sets Λ_1, …, Λ_k of the product X(f_{Λ_1}) ⋯ X(f_{Λ_k}).
using IndexSet = std::vector<std::size_t>;
using KSPoly = std::map<std::vector<IndexSet>, Scalar>;

enum class KSMethod { Recursion, Explicit };

/// W(f_1, …, f_n) as a polynomial in the X(f_Λ); n >= 1.
KSPoly ks_poly(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, KSMethod method);

/// Applies the operator polynomial to v (rightmost factor first).
FockVector apply(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, const KSPoly& p, const FockVector& v);

/// One term of X(f_1)⋯X(f_n) = Σ coefficient · W(f_B : B ∈ S).
struct KSExpansionTerm {
    SetPartition pi;
    std::vector<std::size_t> s;      // class indices of S in π
    Scalar coefficient;
    std::vector<IndexSet> w_args;    // classes of S in order
};

/// Sum over non-crossing π and subsets S of its outer classes, with ν on inner
/// classes and on outer classes below S, μ on those above S.  n <= 10.
std::vector<KSExpansionTerm> ks_monomial_expansion(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs);

/// Coefficient of the (π, S) term alone; π non-crossing, S outer classes
/// given by class index.  Works for any n the partition allows.
Scalar ks_expansion_coefficient(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, const SetPartition& pi,
                                const std::vector<std::size_t>& s);

/// Σ_terms coefficient · (⊗_{B ∈ S} f_B)
FockVector evaluate_on_vacuum(const std::vector<KSExpansionTerm>& terms, const std::vector<AlgebraElement>& fs,
                              std::size_t depth_limit);

/// ⟨Ω, X(f_1)⋯X(f_n) Ω⟩ via ks_apply.
Scalar vacuum_expectation(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs);

/// Σ_{π ∈ NC(n)} ∏_{inner} ν[f_C] ∏_{outer} μ[f_B], by enumeration.
Scalar vacuum_expectation_by_partitions(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs);

/// The pair (φ, ψ) of the operators X(e_1), …, X(e_d): φ from vacuum
/// expectations, ψ from Σ_{π ∈ NC(n)} ∏_C ν[f_C].  elems must be nonempty.
StatePair joint_pair_from_fock(const TestAlgebra& alg, const std::vector<AlgebraElement>& elems, std::size_t N);

/// P(X(e_1), …, X(e_d)) v
FockVector apply_polynomial(const TestAlgebra& alg, const std::vector<AlgebraElement>& elems, const NCPolynomial& p,
                            const FockVector& v);

struct AppellFromKSReport {
    bool equal;
    FockVector lhs;  // A^{φ,ψ}(X(f_1), …, X(f_n)) Ω
    FockVector rhs;  // Σ_{π ∈ Int(n)} f_{B_1} ⊗ … ⊗ f_{B_k}
};

AppellFromKSReport appell_from_ks(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs);

/// A^{φ,ψ}(X_1, …, X_n) = ∏_{i<k} A^ψ(X_j : j ∈ C_i) ⋅ A^{φ,ψ}(X_j : j ∈ C_k)
/// for consecutive blocks of the given sizes, compared as operators on Ω and
/// on every point-basis vector of depth 1.
bool factorization_check(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs,
                         const std::vector<std::size_t>& block_sizes);

/// φ[a_1 ⋯ a_n] = ∏ φ[a_j] for a_j = P_j(X(e_{g_j})) with consecutive g_j
/// distinct and disjointly supported; interior factors are ψ-centered here
/// before the comparison.  `factors` holds (element index, one-variable P).
bool endpoint_check(const TestAlgebra& alg, const std::vector<AlgebraElement>& elems,
                    const std::vector<std::pair<std::size_t, NCPolynomial>>& factors);

/// φ[X A(X_1 + Y_1, …, X_n + Y_n)] = φ[X A(X_1, …, X_n)] with X_i = X(b_i),
/// Y_i = X(y_i), for X every monomial of degree <= x_degree in the X_i.
/// Each y_i must be disjoint in support from every b_j.
bool martingale_check(const TestAlgebra& alg, const std::vector<AlgebraElement>& b,
                      const std::vector<AlgebraElement>& y, std::size_t x_degree = 2);

/// base algebra × M equal cells of [0,1]; cell weights carry the factor 1/M.
/// Point (p, c) has index p*M + c.
class TimeGrid {
public:
    TimeGrid(TestAlgebra base, std::size_t cells);

    const TestAlgebra& base() const { return base_; }
    const TestAlgebra& algebra() const { return alg_; }
    std::size_t cells() const { return cells_; }
    /// Number of cells in [0, t); throws PreconditionError off the grid.
    std::size_t cell_count(const Scalar& t) const;
    /// f ⊗ χ_{[0,t)}
    AlgebraElement embed(const AlgebraElement& f, const Scalar& t) const;

private:
    TestAlgebra base_;
    std::size_t cells_;
    TestAlgebra alg_;
};

/// Multiplies every tensor factor by χ_{[0,t)}.
FockVector conditional_expectation(const TimeGrid& grid, const FockVector& v, const Scalar& t);

/// E[A_u(X_1(t), …, X_d(t)) Ω | s] = A_u(X_1(s), …, X_d(s)) Ω, plus the
/// matrix elements against point-basis vectors of depth <= 1 supported in [0,s).
bool process_martingale_check(const TimeGrid& grid, const std::vector<AlgebraElement>& fs, const Word& u,
                              const Scalar& s, const Scalar& t);

enum class LimitKind { Gaussian, Poisson };

/// W_0 … W_k from the one-variable limits of the operator recursions.
///   Gaussian(a = μ[x²], b = ν[x²]):  x W_1 = W_2 + a,  x W_n = W_{n+1} + b W_{n-1}
///   Poisson(a = μ[x], b = ν[x]):     W_1 = x - a,  x W_1 = W_2 + (1+b) W_1 + a,
///                                    x W_n = W_{n+1} + (1+b) W_n + b W_{n-1}
std::vector<NCPolynomial> limit_example_recursions(LimitKind kind, const Scalar& a, const Scalar& b, std::size_t k);

/// The Jacobi data the limit family should be orthogonal for, n <= k.
JacobiParams1D limit_example_jacobi(LimitKind kind, const Scalar& a, const Scalar& b, std::size_t k);

}  // namespace cfree
