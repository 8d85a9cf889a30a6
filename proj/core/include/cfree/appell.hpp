#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cfree/linalg.hpp"
#include "cfree/orthopoly.hpp"
#include "cfree/states.hpp"

namespace cfree {

enum class AppellMethod { GenFun, Recursion, Explicit };

/// A^{φ,ψ}_w for all words w of degree <= degree.  Free Appell families use
/// φ = ψ; Boolean ones ψ = δ_0.
struct AppellFamily {
    StatePair pair;
    std::size_t degree;
    PolyFamily polys;

    const NCPolynomial& operator[](const Word& w) const { return polys.at(w); }
};

/// Coefficients of (1 - x·z + R^ψ(z))^{-1}.  Needs k <= N.
AppellFamily free_appell(const State& psi, std::size_t k);

/// The c-free Appell family of the pair, k <= N.
///   GenFun:    (1 - x·z + R^ψ(z))^{-1} (1 + R^ψ(z) - R^{φ,ψ}(z))
///   Recursion: A_{(i,u)} = x_i A_u - Σ_j R^ψ[x_i x_{u(1)}…x_{u(j)}] A_{(u(j+1),…)} - R^{φ,ψ}[x_i x_u]
///   Explicit:  sum over interval partitions and subsets of their singletons
AppellFamily cfree_appell(const StatePair& pair, std::size_t k, AppellMethod method = AppellMethod::GenFun);

/// Coefficients of (1 - x·z)^{-1} (1 - η^φ(z)); ψ is δ_0.
AppellFamily boolean_appell(const State& phi, std::size_t k);

/// x_u = Σ_{B ⊆ {1..n}} ∏ ψ[gap monomials] φ[tail monomial] A_{u|B}, with the
/// coefficients of equal subwords collected.
std::map<Word, Scalar, GradedLex> monomial_expansion(const StatePair& pair, const Word& u);

/// Words at which each characterizing property fails.
struct AppellCheckReport {
    std::vector<Word> not_monic;
    std::vector<Word> not_centered;      // φ[A_w] != 0
    std::vector<Word> left_law;          // (ψ ⊗ I) ∂_i A_w != δ_{i,w(1)} A_{w(2…)}
    std::vector<Word> right_law;         // (I ⊗ φ) ∂_i A_w != δ_{i,w(n)} A^ψ_{w(…n-1)}
    std::vector<Word> coproduct_law;     // ∂_i A_w != Σ_{w(p)=i} A^ψ_{w(<p)} ⊗ A_{w(>p)}

    bool ok() const;
    /// Smallest violating word in graded-lex order.
    std::optional<Word> first_violation() const;
};

AppellCheckReport check_characterizations(const AppellFamily& fam);

struct OrthogonalityReport {
    bool degree_one_orthogonal = false;
    bool fully_orthogonal = false;
    /// (b_i, c_i) when fully orthogonal.
    std::optional<std::vector<std::pair<Scalar, Scalar>>> meixner_params;
};

/// Decided on cumulant coefficients through the truncation degree:
/// degree-one orthogonality iff R^{φ,ψ} = Σ z_i²; full orthogonality iff also
/// R^ψ = Σ (b_i z_i + (1 + c_i) z_i²).  In the full case the free Meixner
/// equation for φ is verified and InconsistencyError raised if it fails.
/// φ must have mean zero and identity covariance.
OrthogonalityReport orthogonality_report(const StatePair& pair);

/// ⟨A_u, A_v⟩_φ over words of degree <= k; needs 2k <= N.
Matrix appell_gram(const StatePair& pair, std::size_t k);

/// One factor of a term of the explicit formula: a variable X_p or a
/// cumulant evaluated at the listed positions (1-based).
struct SymbolicFactor {
    enum class Kind { Variable, FreeCumulant, TwoStateCumulant };
    Kind kind;
    std::vector<std::size_t> positions;
};

struct SymbolicTerm {
    int sign;
    std::vector<SymbolicFactor> factors;  // in order of first position
};

/// The explicit formula for A^{φ,ψ}(X_1, …, X_n) with symbolic cumulants.
std::vector<SymbolicTerm> symbolic_cfree_appell(std::size_t n);

}  // namespace cfree
