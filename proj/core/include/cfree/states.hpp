#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cfree/linalg.hpp"
#include "cfree/ncpoly.hpp"
#include "cfree/ncseries.hpp"

namespace cfree {

/// Truncated moment functional on ℚ⟨x_1,…,x_d⟩: s[x_w] for all words of
/// degree <= N, with s[1] = 1 and s[x_w] = s[x_{reverse(w)}].
/// Positivity is not enforced here; see is_positive().
class State {
public:
    /// Takes the full moment series (constant term must be 1).
    explicit State(NCSeries moments);

    static State from_moments(std::size_t d, std::size_t N, const std::map<Word, Scalar, GradedLex>& moments);
    /// Builds from the moment generating function M (zero constant term).
    static State from_mgf(const NCSeries& mgf);

    std::size_t d() const { return moments_.d(); }
    std::size_t trunc_degree() const { return moments_.trunc_degree(); }
    const Scalar& moment(const Word& w) const { return moments_[w]; }
    /// Moment series including the constant 1.
    const NCSeries& moments() const { return moments_; }
    /// M(z) = Σ_{w ≠ ∅} s[x_w] z_w.
    NCSeries mgf() const;

    Scalar operator()(const NCPolynomial& p) const { return apply_functional(moments_, p); }

    friend bool operator==(const State&, const State&) = default;

private:
    NCSeries moments_;
};

/// Two states on the same algebra (same d and N).
class StatePair {
public:
    StatePair(State phi, State psi);
    const State& phi() const { return phi_; }
    const State& psi() const { return psi_; }
    std::size_t d() const { return phi_.d(); }
    std::size_t trunc_degree() const { return phi_.trunc_degree(); }

    friend bool operator==(const StatePair&, const StatePair&) = default;

private:
    State phi_;
    State psi_;
};

enum class CumulantKind { Boolean, Free, TwoState };

/// Cumulant generating function (zero constant term) tagged with its kind.
struct CumulantSeries {
    CumulantKind kind;
    NCSeries series;

    CumulantSeries(CumulantKind k, NCSeries s);
    const Scalar& operator[](const Word& w) const { return series[w]; }
};

/// η(z) = 1 - (1 + M(z))^{-1}.
CumulantSeries boolean_cumulants(const State& s);

/// R from M(w) = R(w(1 + M(w))) (or the mirrored equation), degree by degree.
CumulantSeries free_cumulants(const State& s, FixedPointVariant variant = FixedPointVariant::RwM);

/// R^{φ,ψ} from the defining sum over non-crossing partitions (outer classes
/// carry R^{φ,ψ}, inner classes R^ψ), solved word by word.
CumulantSeries two_state_cumulants(const StatePair& pair);

/// R^{φ,ψ} from η^φ(w) = (1 + M^ψ(w))^{-1} R^{φ,ψ}((1 + M^ψ(w)) w).
CumulantSeries two_state_cumulants_via_generating_function(const StatePair& pair);

/// Exact inverse of the forward transforms.  `aux` (= ψ) is required for
/// two-state cumulants and ignored otherwise.
State moments_from_cumulants(const CumulantSeries& c, const State* aux = nullptr);

enum class ConvolutionKind { Free, Boolean };

/// Free (R additive) or Boolean (η additive) convolution.
State convolve(ConvolutionKind kind, const State& a, const State& b);

/// Boolean convolution power: η ↦ λ η, λ >= 0.
State boolean_power(const State& a, const Scalar& lambda);

/// Φ[ψ]: the state φ with η^φ(w) = Σ_i w_i (1 + M^ψ(w)) w_i.
State phi_map(const State& psi);
/// Same, computed to truncation N <= psi.trunc_degree() + 2 (degree-n
/// moments of Φ[ψ] need ψ only through degree n-2).
State phi_map(const State& psi, std::size_t N);

/// The d-variable pair whose R^ψ and R^{φ,ψ} are sums of the one-variable
/// series of the inputs in disjoint variables.
StatePair cfree_product(const std::vector<StatePair>& pairs);

/// Gram matrix G(u, v) = s[x_{reverse(u)} x_v] over words of degree <= k.
Matrix gram_matrix(const State& s, std::size_t k);

/// Exact positive-semidefiniteness of the degree-k Gram matrix; needs 2k <= N.
bool is_positive(const State& s, std::size_t k);

bool has_mean_zero_identity_covariance(const State& s);

/// Centers and rescales a one-variable state to mean 0, variance 1.  The
/// variance must be the square of a positive rational.
State center_and_rescale(const State& s);

/// Parameters of D_i D_j η = δ_ij + Σ_k B^k_ij D_k η + (1 + C_ij) D_i η D_j η.
struct FreeMeixnerParams {
    std::vector<Matrix> b;  // b[k](i, j) = B^k_ij
    Matrix c;               // c(i, j) = C_ij
};

/// Fits B and C from the degree-3 and degree-4 Boolean cumulants and checks
/// the equation coefficient-wise through degree N.  Requires mean zero and
/// identity covariance.
std::optional<FreeMeixnerParams> is_free_meixner(const State& s);

/// True when the series equals λ Σ_i z_i² exactly.
bool is_simple_quadratic(const NCSeries& r, const Scalar& lambda = Scalar(1));

/// Equality case of the c-free Fisher bound: returns λ when
/// R^{φ,ψ}(z) = λ Σ z_i² for some λ, nothing otherwise.
std::optional<Scalar> fisher_equality_scale(const StatePair& pair);

/// With z_i = (1 + M^ψ(w)) w_i, checks
/// 1 + R^ψ(z) - R^{φ,ψ}(z) = (1 + M^ψ(w)) (1 + M^φ(w))^{-1} through degree N.
bool check_c_cumulant_identity(const StatePair& pair);

// Named states.

/// Semicircle with mean α and variance β (β >= 0), one variable.
State semicircle(const Scalar& alpha, const Scalar& beta, std::size_t N);
/// Free Meixner law μ_{b,c}: Jacobi (0, b, b, …), (1, 1+c, 1+c, …); 1 + c >= 0.
State free_meixner_1d(const Scalar& b, const Scalar& c, std::size_t N);
/// Free product of semicircles with the given means and variances.
State free_product_of_semicircles(const std::vector<std::pair<Scalar, Scalar>>& mean_variance, std::size_t N);
State delta_zero(std::size_t d, std::size_t N);
/// Symmetric Bernoulli law on {-1, +1}.
State bernoulli_pm1(std::size_t N);
/// Point mass at a, one variable.
State point_mass(const Scalar& a, std::size_t N);

}  // namespace cfree
