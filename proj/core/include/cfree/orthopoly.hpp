#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cfree/linalg.hpp"
#include "cfree/ncpoly.hpp"
#include "cfree/states.hpp"

namespace cfree {

/// One-variable Jacobi parameters of x P_n = P_{n+1} + β_n P_n + γ_n P_{n-1}.
/// beta = (β_0, β_1, …), gamma = (γ_1, γ_2, …).  When `termination` is k the
/// measure is supported on k points: γ_k = 0 and the sequences stop there
/// (beta has k entries, gamma k-1).
struct JacobiParams1D {
    std::vector<Scalar> beta;
    std::vector<Scalar> gamma;
    std::optional<std::size_t> termination;

    friend bool operator==(const JacobiParams1D&, const JacobiParams1D&) = default;
};

/// Monic family indexed by words: P_w = x_w + lower-degree terms.
using PolyFamily = std::map<Word, NCPolynomial, GradedLex>;

/// ⟨p, q⟩_s = s[p* q].
Scalar inner_product(const State& s, const NCPolynomial& p, const NCPolynomial& q);

/// Gram–Schmidt on 1, x, x², …  Yields β_n while 2n+1 <= N and γ_n while
/// 2n <= N.  Throws PreconditionError on a negative squared norm.
JacobiParams1D jacobi_from_moments(const State& s);

/// Moments ⟨e_0, J^n e_0⟩ of the tridiagonal operator, n <= N.  Throws
/// PreconditionError if the data is too short for degree N.
State moments_from_jacobi(const JacobiParams1D& j, std::size_t N);

/// Drops (β_0, γ_1).
JacobiParams1D strip(const JacobiParams1D& j);
/// Prepends β = 0, γ = 1.
JacobiParams1D unstrip(const JacobiParams1D& j);

/// Monic orthogonal polynomials P_0 … P_n generated by the recursion.
std::vector<NCPolynomial> polys_from_jacobi(const JacobiParams1D& j, std::size_t n);

/// Reads (β, γ) off a one-variable monic family P_0 … P_n by expanding
/// x P_k in the family.  Throws InconsistencyError if some x P_k has a
/// component below P_{k-1}.
JacobiParams1D jacobi_from_family(const std::vector<NCPolynomial>& family);

/// Q_w = (I ⊗ s) ∂_1 P_{(w,1)} for every w with (w,1) in the family.  For
/// d = 1 this is Q_{n-1} = (I ⊗ s)[∂ P_n].
PolyFamily second_kind(const PolyFamily& p, const State& s);
std::vector<NCPolynomial> second_kind(const std::vector<NCPolynomial>& p, const State& s);

/// d = 1: η^μ(z) = z² (1 + M^ν(z)) through the common truncation degree,
/// that is, μ = Φ[ν].
bool check_mgf_strip_relation(const State& mu, const State& nu);

/// Candidate monic family: x_w minus its projection on lower degrees (null
/// polynomials are skipped).  Returns it only if same-degree members are
/// orthogonal as well.  Requires 2k <= N.
std::optional<PolyFamily> mops(const State& s, std::size_t k);

/// Coefficients of `p` in a monic family containing every word up to deg p,
/// by leading-word reduction.
std::map<Word, Scalar, GradedLex> expand_in_family(const NCPolynomial& p, const PolyFamily& family);

/// Matricial Jacobi data, level n = word length.
///   x_i P_w = P_{(i,w)} + Σ_{|v|=|w|} delta[n][i](v, w) P_v + δ_{i,w(1)} gamma[n][w] P_{w(2…)}
/// Matrices are indexed by words of length n in graded-lex order; gamma[0]
/// is empty (no lower level).
struct MatricialJacobi {
    std::size_t d = 0;
    std::vector<std::vector<Matrix>> delta;       // delta[n][i]
    std::vector<std::vector<Scalar>> gamma;       // gamma[n][index of w among length-n words]

    friend bool operator==(const MatricialJacobi&, const MatricialJacobi&) = default;
};

/// Levels 0 … k, from the MOPS to degree k+1 (needs 2(k+1) <= N).  Throws
/// PreconditionError when the state has no MOPS and InconsistencyError when
/// some x_i P_w leaves the three allowed degrees.
MatricialJacobi matricial_params(const State& s, std::size_t k);

struct OpsSecondKindReport {
    bool a = false;  // φ = Φ[ψ]
    bool b = false;  // shifted matricial parameters
    bool c = false;  // (I ⊗ φ) ∂_j P_{(w,m)} = δ_jm Q_w

    friend bool operator==(const OpsSecondKindReport&, const OpsSecondKindReport&) = default;
};

/// Evaluates the three equivalent conditions through level k.  φ needs
/// truncation >= 2k+2, ψ >= 2k; φ must have mean zero and identity
/// covariance and ψ must have a MOPS to degree k.  (b) and (c) are false
/// when φ has no MOPS.
OpsSecondKindReport check_ops_second_kind(const State& phi, const State& psi, std::size_t k);

}  // namespace cfree
