#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cfree/appell.hpp"
#include "cfree/fock.hpp"
#include "cfree/orthopoly.hpp"
#include "cfree/states.hpp"

// JSON and LaTeX forms of the library types.  Rationals are {"num", "den"}
// decimal strings, words are 1-based letter arrays, and every list is in
// graded-lex order so output is byte-stable.

namespace cfree::io {

using Json = nlohmann::ordered_json;

/// Parses text, mapping syntax errors to ParseError.
Json parse(std::string_view text, std::string_view source = "input");

/// Bound on Σ_{k<=N} d^k for every series read or requested (CFREE_MAX_COEFFS).
void set_coefficient_limit(std::size_t limit);
std::size_t coefficient_limit();
void check_budget(std::size_t d, std::size_t N);
std::string dump(const Json& j);

void put_scalar(Json& obj, const Scalar& s);
Scalar get_scalar(const Json& obj, std::string_view where);

Json word_json(const Word& w);
Word get_word(const Json& j, std::size_t d, std::string_view where);

// {"d", "terms": [{"word", "num", "den"}]}
Json to_json(const NCPolynomial& p);
NCPolynomial polynomial_from_json(const Json& j);

// {"d", "trunc_degree", "terms"}; only nonzero terms are listed.
Json to_json(const NCSeries& s);
NCSeries series_from_json(const Json& j);

// {"d", "trunc_degree", "moments"}
Json to_json(const State& s);
State state_from_json(const Json& j);

// {"phi": State, "psi": State}
Json to_json(const StatePair& p);
StatePair pair_from_json(const Json& j);

// {"kind", "d", "trunc_degree", "terms"}
Json to_json(const CumulantSeries& c);
CumulantSeries cumulants_from_json(const Json& j);

// {"beta": [...], "gamma": [...], "termination": n | null}
Json to_json(const JacobiParams1D& j);
JacobiParams1D jacobi_from_json(const Json& j);

Json to_json(const MatricialJacobi& m);
Json to_json(const Matrix& m);

// {"d", "degree", "polys": [{"word", "terms"}]}
Json family_json(const PolyFamily& f, std::size_t d, std::size_t degree);
PolyFamily family_from_json(const Json& j, std::size_t& d, std::size_t& degree);

// {"mu_weights": [...], "nu_weights": [...]}
Json to_json(const TestAlgebra& a);
TestAlgebra algebra_from_json(const Json& j);
// [[scalar, ...], ...]; each element has one entry per point.
std::vector<AlgebraElement> elements_from_json(const Json& j, std::size_t points);

// {"depth_limit", "amplitudes": [{"tuple", "num", "den"}]}
Json to_json(const FockVector& v);
// {"n", "terms": [{"factors": [[1,2],[3]], "num", "den"}]}
Json ks_json(const KSPoly& p, std::size_t n);
Json to_json(const std::vector<KSExpansionTerm>& terms, std::size_t n);
Json to_json(const std::vector<SymbolicTerm>& terms, std::size_t n);

std::string latex(const Scalar& s);
std::string latex(const NCPolynomial& p);
/// One aligned line per word: A_{(1,2)} &= …
std::string latex(const PolyFamily& f, std::string_view symbol);
std::string latex(const KSPoly& p, std::size_t n);
std::string latex(const std::vector<SymbolicTerm>& terms, std::size_t n);

}  // namespace cfree::io
