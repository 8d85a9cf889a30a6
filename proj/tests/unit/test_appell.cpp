#include "doctest.h"

#include "cfree/appell.hpp"
#include "cfree/error.hpp"
#include "cfree/orthopoly.hpp"
#include "support.hpp"

using namespace cfree;

namespace {

/// Free product of SC(b_i, 1 + c_i) and its image under Φ.
StatePair meixner_pair(const std::vector<std::pair<Scalar, Scalar>>& bc, std::size_t N) {
    std::vector<std::pair<Scalar, Scalar>> mv;
    for (const auto& [b, c] : bc) mv.emplace_back(b, Scalar(1) + c);
    const State psi = free_product_of_semicircles(mv, N);
    return {phi_map(psi), psi};
}

/// φ[x_i A_w] = δ_{w,(i)} for every nonempty w with |w| + 1 <= N.
bool degree_one_orthogonal_by_inner_products(const StatePair& pair) {
    const std::size_t N = pair.trunc_degree();
    const AppellFamily fam = cfree_appell(pair, N - 1);
    for (const auto& [w, a] : fam.polys) {
        if (w.empty()) continue;
        for (Letter i = 0; i < pair.d(); ++i) {
            const Scalar v = pair.phi()(NCPolynomial::variable(pair.d(), i) * a);
            if (v != Scalar(w == Word{i} ? 1 : 0)) return false;
        }
    }
    return true;
}

/// Σ_{w = u v, |v| >= 1} ... coefficients of (1 - x·z)^{-1} (1 - η(z)) by hand.
NCPolynomial boolean_appell_oracle(const State& phi, const Word& w) {
    const NCSeries eta = test::boolean_cumulants_oracle(phi);
    NCPolynomial p = NCPolynomial::monomial(phi.d(), w);
    for (std::size_t cut = 0; cut < w.size(); ++cut) {
        p.add_term(slice(w, 0, cut), -eta[slice(w, cut, w.size())]);
    }
    return p;
}

NCPolynomial evaluate_symbolic(const std::vector<SymbolicTerm>& terms, const Word& w, const StatePair& pair) {
    const NCSeries rpsi = free_cumulants(pair.psi()).series;
    const NCSeries r = two_state_cumulants(pair).series;
    NCPolynomial acc(pair.d());
    for (const auto& t : terms) {
        Scalar c(t.sign);
        Word vars;
        for (const auto& f : t.factors) {
            Word sub;
            for (std::size_t p : f.positions) sub.push_back(w[p - 1]);
            switch (f.kind) {
                case SymbolicFactor::Kind::Variable:
                    vars.push_back(sub[0]);
                    break;
                case SymbolicFactor::Kind::FreeCumulant:
                    c *= rpsi[sub];
                    break;
                case SymbolicFactor::Kind::TwoStateCumulant:
                    c *= r[sub];
                    break;
            }
        }
        acc.add_term(vars, c);
    }
    return acc;
}

}  // namespace

TEST_CASE("low-order c-free Appell polynomials") {
    test::Rng rng(61);
    const StatePair pair = test::random_pair(rng, 2, 4);
    const AppellFamily fam = cfree_appell(pair, 2);
    const auto& phi = pair.phi();
    const auto& psi = pair.psi();
    for (Letter i = 0; i < 2; ++i) {
        CHECK(fam[{i}] == test::poly(2, {{{i}, 1}, {{}, -phi.moment({i})}}));
        for (Letter j = 0; j < 2; ++j) {
            NCPolynomial expect(2);
            expect.add_term({i, j}, Scalar(1));
            expect.add_term({i}, -phi.moment({j}));
            expect.add_term({j}, -psi.moment({i}));
            expect.add_term({}, psi.moment({i}) * phi.moment({j}) - phi.moment({i, j}) + phi.moment({i}) * phi.moment({j}));
            CHECK(fam[{i, j}] == expect);
        }
    }
    CHECK(fam[{}] == NCPolynomial::one(2));
}

TEST_CASE("genfun, recursion and explicit constructions agree") {
    test::Rng rng(62);
    for (int t = 0; t < 6; ++t) {
        const std::size_t d = 1 + t % 2;
        const std::size_t k = d == 1 ? 6 : 5;
        const StatePair pair = test::random_pair(rng, d, k);
        const auto a = cfree_appell(pair, k, AppellMethod::GenFun);
        const auto b = cfree_appell(pair, k, AppellMethod::Recursion);
        const auto c = cfree_appell(pair, k, AppellMethod::Explicit);
        CHECK(a.polys == b.polys);
        CHECK(a.polys == c.polys);
        CHECK(a.polys.size() == WordSpace::total_words(d, k));
    }
    CHECK_THROWS_AS(cfree_appell(test::random_pair(rng, 1, 3), 4), TruncationError);
}

TEST_CASE("phi = psi gives the free Appell family, psi = delta_0 the Boolean one") {
    test::Rng rng(63);
    for (std::size_t d = 1; d <= 2; ++d) {
        const State s = test::random_functional(rng, d, 5);
        CHECK(cfree_appell(StatePair(s, s), 5).polys == free_appell(s, 5).polys);
        const auto boolean = boolean_appell(s, 5);
        CHECK(cfree_appell(StatePair(s, delta_zero(d, 5)), 5).polys == boolean.polys);
        for (const auto& [w, p] : boolean.polys) CHECK(p == boolean_appell_oracle(s, w));
    }
}

TEST_CASE("free Appell polynomials are the unique centered family with the right law") {
    test::Rng rng(64);
    for (std::size_t d = 1; d <= 2; ++d) {
        const std::size_t k = d == 1 ? 5 : 4;
        const State psi = test::random_functional(rng, d, k);
        const AppellFamily fam = free_appell(psi, k);
        const WordSpace sp(d, k);
        std::map<Word, NCPolynomial, GradedLex> solved;
        solved.emplace(Word{}, NCPolynomial::one(d));
        for (std::size_t n = 1; n <= k; ++n) {
            const std::size_t unknowns = sp.offset(n);  // words of degree < n
            for (const Word& w : sp.words_of_degree(n)) {
                // rows: (letter i, word u of degree < n) coefficient equations and ψ[P] = 0
                const std::size_t rows = d * unknowns + 1;
                Matrix a(rows, unknowns);
                std::vector<Scalar> rhs(rows);
                auto right = [&](Letter i, const NCPolynomial& p) {
                    return apply_state_partial(Side::Right, psi.moments(), diff_quotient(i, p));
                };
                for (Letter i = 0; i < d; ++i) {
                    NCPolynomial target = i == w.back() ? solved.at(slice(w, 0, n - 1)) : NCPolynomial(d);
                    target -= right(i, NCPolynomial::monomial(d, w));
                    for (std::size_t u = 0; u < unknowns; ++u) {
                        const NCPolynomial col = right(i, NCPolynomial::monomial(d, sp.word(u)));
                        for (const auto& [v, c] : col.terms()) a(i * unknowns + sp.index(v), u) = c;
                    }
                    for (const auto& [v, c] : target.terms()) rhs[i * unknowns + sp.index(v)] = c;
                }
                for (std::size_t u = 0; u < unknowns; ++u) a(rows - 1, u) = psi.moment(sp.word(u));
                rhs[rows - 1] = -psi.moment(w);
                const auto x = solve_unique(a, rhs);
                REQUIRE(x.has_value());
                NCPolynomial p = NCPolynomial::monomial(d, w);
                for (std::size_t u = 0; u < unknowns; ++u) p.add_term(sp.word(u), (*x)[u]);
                solved.emplace(w, p);
                CHECK(p == fam[w]);
            }
        }
    }
}

TEST_CASE("characterizations hold, and a broken family is caught") {
    test::Rng rng(65);
    for (int t = 0; t < 4; ++t) {
        const StatePair pair = test::random_pair(rng, 1 + t % 2, 5);
        AppellFamily fam = cfree_appell(pair, 5);
        const auto rep = check_characterizations(fam);
        CHECK(rep.ok());
        CHECK_FALSE(rep.first_violation().has_value());
        fam.polys.at({0, 0}) += NCPolynomial::constant(pair.d(), Scalar(1));
        const auto bad = check_characterizations(fam);
        CHECK_FALSE(bad.ok());
        REQUIRE(bad.first_violation().has_value());
        CHECK(*bad.first_violation() == Word{0, 0});
        CHECK(bad.not_centered == std::vector<Word>{{0, 0}});
    }
}

TEST_CASE("monomials expand back into the family") {
    test::Rng rng(66);
    const StatePair pair = test::random_pair(rng, 2, 5);
    const AppellFamily fam = cfree_appell(pair, 5);
    for (const Word& u : WordSpace(2, 5).words_up_to(5)) {
        NCPolynomial sum(2);
        for (const auto& [w, c] : monomial_expansion(pair, u)) sum += c * fam[w];
        CHECK(sum == NCPolynomial::monomial(2, u));
    }
}

TEST_CASE("the generating function has phi-expectation one") {
    test::Rng rng(67);
    const StatePair pair = test::random_pair(rng, 2, 6);
    const AppellFamily fam = cfree_appell(pair, 6);
    for (const auto& [w, a] : fam.polys) CHECK(pair.phi()(a) == Scalar(w.empty() ? 1 : 0));
}

TEST_CASE("simple quadratic two-state cumulants: three equivalent conditions") {
    test::Rng rng(68);
    for (int t = 0; t < 6; ++t) {
        const std::size_t d = 1 + t % 2;
        const std::size_t N = d == 1 ? 7 : 5;
        const State psi = test::random_functional(rng, d, N);
        const State phi = phi_map(psi);
        const StatePair good(phi, psi);
        CHECK(is_simple_quadratic(two_state_cumulants(good).series));
        CHECK(degree_one_orthogonal_by_inner_products(good));

        NCSeries m = phi.moments();
        m.set(Word(3, 0), m[Word(3, 0)] + Scalar(1, 5));
        const StatePair bad(State(m), psi);
        CHECK_FALSE(State(m) == phi_map(psi));
        CHECK_FALSE(is_simple_quadratic(two_state_cumulants(bad).series));
        CHECK_FALSE(degree_one_orthogonal_by_inner_products(bad));
    }
}

TEST_CASE("full orthogonality on free Meixner pairs") {
    const std::vector<std::pair<Scalar, Scalar>> bc{{0, 0}, {1, 0}, {0, -1}, {2, 3}};
    for (const auto& one : bc) {
        const StatePair pair = meixner_pair({one}, 8);
        const auto rep = orthogonality_report(pair);
        CHECK(rep.degree_one_orthogonal);
        CHECK(rep.fully_orthogonal);
        REQUIRE(rep.meixner_params.has_value());
        CHECK((*rep.meixner_params)[0] == one);
        CHECK(appell_gram(pair, 4).is_diagonal());
    }
    const StatePair two = meixner_pair({bc[1], bc[3]}, 6);
    const auto rep = orthogonality_report(two);
    CHECK(rep.fully_orthogonal);
    CHECK((*rep.meixner_params)[1] == bc[3]);
    CHECK(appell_gram(two, 3).is_diagonal());
    const auto fm = is_free_meixner(two.phi());
    REQUIRE(fm.has_value());
    CHECK(fm->c(1, 0) == Scalar(3));
    CHECK(fm->b[1](1, 1) == Scalar(2));
    CHECK(fm->b[0](1, 1).is_zero());
}

TEST_CASE("nonzero third free cumulant: degree-one orthogonality only") {
    NCSeries r(1, 8);
    r.set({0, 0}, Scalar(1));
    r.set({0, 0, 0}, Scalar(1, 2));
    const State psi = moments_from_cumulants(CumulantSeries(CumulantKind::Free, r));
    const StatePair pair(phi_map(psi), psi);
    const auto rep = orthogonality_report(pair);
    CHECK(rep.degree_one_orthogonal);
    CHECK_FALSE(rep.fully_orthogonal);
    CHECK_FALSE(appell_gram(pair, 4).is_diagonal());
}

TEST_CASE("orthogonal Appell polynomials: MOPS and second kind") {
    const StatePair pair = meixner_pair({{1, 0}, {2, 3}}, 8);
    const AppellFamily fam = cfree_appell(pair, 3);
    const auto p = mops(pair.phi(), 3);
    REQUIRE(p.has_value());
    CHECK(*p == fam.polys);
    const AppellFamily psi_fam = free_appell(pair.psi(), 3);
    for (const auto& [w, q] : second_kind(*p, pair.phi())) CHECK(q == psi_fam[w]);
    for (const auto& [w, a] : fam.polys) {
        if (w.empty()) continue;
        const auto q = apply_state_partial(Side::Right, pair.phi().moments(), diff_quotient(w.back(), a));
        CHECK(q == psi_fam[slice(w, 0, w.size() - 1)]);
    }
}

TEST_CASE("symbolic explicit formula") {
    const auto two = symbolic_cfree_appell(2);
    CHECK(two.size() == 5);
    CHECK(two[0].sign == 1);
    CHECK(two[0].factors.size() == 2);
    CHECK(symbolic_cfree_appell(0).size() == 1);
    test::Rng rng(69);
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto terms = symbolic_cfree_appell(n);
        const StatePair pair = test::random_pair(rng, 2, n);
        const AppellFamily fam = cfree_appell(pair, n);
        for (const Word& w : WordSpace(2, n).words_of_degree(n)) {
            CHECK(evaluate_symbolic(terms, w, pair) == fam[w]);
        }
    }
}
