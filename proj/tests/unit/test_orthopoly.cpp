#include "doctest.h"

#include "cfree/error.hpp"
#include "cfree/orthopoly.hpp"
#include "support.hpp"

using namespace cfree;
using test::poly;

namespace {

JacobiParams1D truncated(const JacobiParams1D& j, std::size_t nb, std::size_t ng) {
    return {{j.beta.begin(), j.beta.begin() + nb}, {j.gamma.begin(), j.gamma.begin() + ng}, std::nullopt};
}

/// Commuting independent semicircles: s[w] = m(#1) m(#2).
State commutative_product(std::size_t N) {
    const State sc = semicircle(Scalar(0), Scalar(1), N);
    NCSeries m = NCSeries::one(2, N);
    for (std::size_t idx = 1; idx < m.size(); ++idx) {
        const Word w = m.space().word(idx);
        std::size_t a = 0;
        for (Letter l : w) a += l == 0;
        m.at(idx) = sc.moment(Word(a, 0)) * sc.moment(Word(w.size() - a, 0));
    }
    return State(std::move(m));
}

}  // namespace

TEST_CASE("Jacobi parameters round-trip through moments") {
    test::Rng rng(51);
    for (std::size_t N = 1; N <= 9; ++N) {
        const JacobiParams1D j = test::random_jacobi(rng, N + 1);
        const JacobiParams1D back = jacobi_from_moments(moments_from_jacobi(j, N));
        CHECK(back == truncated(j, (N + 1) / 2, N / 2));
    }
}

TEST_CASE("semicircle and Bernoulli Jacobi data") {
    const auto j = jacobi_from_moments(semicircle(Scalar(0), Scalar(1), 8));
    CHECK(j.beta == std::vector<Scalar>(4, Scalar(0)));
    CHECK(j.gamma == std::vector<Scalar>(4, Scalar(1)));
    const auto u = polys_from_jacobi(j, 3);
    // Chebyshev U: x^3 - 2x
    CHECK(u[3] == poly(1, {{{0, 0, 0}, 1}, {{0}, -2}}));

    const auto b = jacobi_from_moments(bernoulli_pm1(8));
    REQUIRE(b.termination.has_value());
    CHECK(*b.termination == 2);
    CHECK(b.gamma == std::vector<Scalar>{Scalar(1)});
    CHECK(moments_from_jacobi(b, 8) == bernoulli_pm1(8));

    NCSeries m = NCSeries::one(1, 4);
    m.set({0, 0}, Scalar(-1));
    CHECK_THROWS_AS(jacobi_from_moments(State(m)), PreconditionError);
    CHECK_THROWS_AS(moments_from_jacobi(JacobiParams1D{{0}, {}, std::nullopt}, 3), PreconditionError);
}

TEST_CASE("strip and unstrip") {
    const JacobiParams1D j{{1, 2, 3}, {4, 5}, std::nullopt};
    CHECK(strip(j) == JacobiParams1D{{2, 3}, {5}, std::nullopt});
    CHECK(strip(unstrip(j)) == j);
    CHECK(unstrip(strip(JacobiParams1D{{0, 2, 3}, {1, 5}, 3})) == JacobiParams1D{{0, 2, 3}, {1, 5}, 3});
}

TEST_CASE("one-variable MOPS is the three-term family") {
    test::Rng rng(52);
    for (int t = 0; t < 5; ++t) {
        const State mu = test::random_measure(rng, 8);
        const auto j = jacobi_from_moments(mu);
        const auto fam = mops(mu, 4);
        REQUIRE(fam.has_value());
        const auto p = polys_from_jacobi(j, 4);
        for (std::size_t n = 0; n <= 4; ++n) CHECK(fam->at(Word(n, 0)) == p[n]);
        CHECK(jacobi_from_family(p) == truncated(j, 4, 3));
    }
}

TEST_CASE("Darboux: second-kind polynomials are the MOPS of the stripped measure") {
    test::Rng rng(53);
    for (int t = 0; t < 6; ++t) {
        const State mu = t % 2 ? test::random_measure(rng, 8) : test::random_normalized_measure(rng, 8);
        const auto j = jacobi_from_moments(mu);
        const auto p = polys_from_jacobi(j, 4);
        const auto q = second_kind(p, mu);
        REQUIRE(q.size() == 4);
        const State nu = moments_from_jacobi(strip(j), 6);
        const auto q_mops = mops(nu, 3);
        REQUIRE(q_mops.has_value());
        for (std::size_t n = 0; n < 4; ++n) CHECK(q[n] == q_mops->at(Word(n, 0)));
        // same recursion shifted by one: Q_{-1} = 0, Q_0 = 1
        CHECK(jacobi_from_family(q) == truncated(strip(j), 3, 2));
        CHECK(q[0] == NCPolynomial::one(1));
        const bool normalized = j.beta[0].is_zero() && j.gamma[0] == Scalar(1);
        CHECK(check_mgf_strip_relation(mu, nu) == normalized);
        CHECK((phi_map(nu, 8) == mu) == normalized);
        CHECK(phi_map(nu, 8) == moments_from_jacobi(unstrip(strip(j)), 8));
    }
}

TEST_CASE("MGF relation fails for a wrong pair") {
    const State mu = semicircle(Scalar(0), Scalar(1), 6);
    CHECK(check_mgf_strip_relation(mu, semicircle(Scalar(0), Scalar(1), 4)));
    CHECK_FALSE(check_mgf_strip_relation(mu, semicircle(Scalar(1), Scalar(1), 4)));
}

TEST_CASE("mops output is orthogonal") {
    test::Rng rng(54);
    for (int t = 0; t < 4; ++t) {
        const State s = test::random_mops_state(rng, 2, 6);
        const auto fam = mops(s, 3);
        REQUIRE(fam.has_value());
        for (const auto& [u, pu] : *fam) {
            CHECK(pu.coefficient(u) == Scalar(1));
            CHECK(pu.degree() == static_cast<int>(u.size()));
            for (const auto& [v, pv] : *fam) {
                if (u != v) CHECK(inner_product(s, pu, pv).is_zero());
            }
        }
    }
    CHECK_FALSE(mops(commutative_product(6), 2).has_value());
    CHECK_THROWS_AS(mops(semicircle(Scalar(0), Scalar(1), 5), 3), TruncationError);
}

TEST_CASE("free product of semicircles has trivial matricial data") {
    const State s = free_product_of_semicircles({{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(1)}}, 8);
    const auto mj = matricial_params(s, 3);
    REQUIRE(mj.delta.size() == 4);
    for (const auto& level : mj.delta) {
        for (const auto& m : level) CHECK(m.is_zero());
    }
    CHECK(mj.gamma[0].empty());
    for (std::size_t n = 1; n <= 3; ++n) CHECK(mj.gamma[n] == std::vector<Scalar>(std::size_t{1} << n, Scalar(1)));
    CHECK_THROWS_AS(matricial_params(commutative_product(8), 2), PreconditionError);
}

TEST_CASE("matricial data of a one-variable state is the Jacobi data") {
    test::Rng rng(55);
    const State mu = test::random_measure(rng, 8);
    const auto j = jacobi_from_moments(mu);
    const auto mj = matricial_params(mu, 3);
    for (std::size_t n = 0; n <= 3; ++n) {
        CHECK(mj.delta[n][0](0, 0) == j.beta[n]);
        if (n >= 1) CHECK(mj.gamma[n][0] == j.gamma[n - 1]);
    }
}

TEST_CASE("expand_in_family") {
    const auto p = polys_from_jacobi(jacobi_from_moments(semicircle(Scalar(0), Scalar(1), 8)), 4);
    PolyFamily f;
    for (std::size_t n = 0; n < p.size(); ++n) f.emplace(Word(n, 0), p[n]);
    // x^2 = U_2 + 1
    const auto e = expand_in_family(NCPolynomial::monomial(1, {0, 0}), f);
    CHECK(e.at({0, 0}) == Scalar(1));
    CHECK(e.at({}) == Scalar(1));
    CHECK(e.size() == 2);
}

TEST_CASE("OPS of the second kind: the three conditions agree") {
    test::Rng rng(56);
    for (std::size_t d = 1; d <= 2; ++d) {
        for (int t = 0; t < 3; ++t) {
            const std::size_t k = d == 1 ? 3 : 2;
            const State psi = test::random_mops_state(rng, d, 2 * k);
            const State phi = phi_map(psi, 2 * k + 2);
            const auto good = check_ops_second_kind(phi, psi, k);
            CHECK(good == OpsSecondKindReport{true, true, true});

            NCSeries m = phi.moments();
            const Word w(4, 0);
            m.set(w, m[w] + Scalar(1, 3));
            const auto bad = check_ops_second_kind(State(m), psi, k);
            CHECK(bad == OpsSecondKindReport{false, false, false});
        }
    }
    const State psi = semicircle(Scalar(0), Scalar(1), 4);
    CHECK_THROWS_AS(check_ops_second_kind(semicircle(Scalar(0), Scalar(1), 5), psi, 2), TruncationError);
    CHECK_THROWS_AS(check_ops_second_kind(semicircle(Scalar(1), Scalar(1), 6), psi, 2), PreconditionError);
}
