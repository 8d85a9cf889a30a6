#include "cfree/orthopoly.hpp"

#include <algorithm>
#include <string>

#include "cfree/error.hpp"

namespace cfree {

namespace {

void require_one_variable(const State& s, const char* what) {
    if (s.d() != 1) throw PreconditionError(std::string(what) + " needs a one-variable state");
}

// Dense coefficient vectors in the monomial basis 1, x, x², …
using Coeffs = std::vector<Scalar>;

Scalar pairing(const Coeffs& p, const Coeffs& q, const std::vector<Scalar>& m) {
    Scalar acc;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a].is_zero()) continue;
        for (std::size_t b = 0; b < q.size(); ++b) {
            if (!q[b].is_zero()) acc += p[a] * q[b] * m[a + b];
        }
    }
    return acc;
}

Coeffs times_x(const Coeffs& p) {
    Coeffs out(p.size() + 1);
    std::copy(p.begin(), p.end(), out.begin() + 1);
    return out;
}

Coeffs axpy(Coeffs y, const Scalar& a, const Coeffs& x) {
    if (y.size() < x.size()) y.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
    return y;
}

NCPolynomial to_poly(const Coeffs& c) {
    NCPolynomial p(1);
    for (std::size_t k = 0; k < c.size(); ++k) p.add_term(Word(k, 0), c[k]);
    return p;
}

}  // namespace

Scalar inner_product(const State& s, const NCPolynomial& p, const NCPolynomial& q) {
    Scalar acc;
    for (const auto& [wp, cp] : p.terms()) {
        const Word rp = reversed(wp);
        for (const auto& [wq, cq] : q.terms()) {
            if (rp.size() + wq.size() > s.trunc_degree()) {
                throw TruncationError("inner product needs moments to degree " +
                                      std::to_string(rp.size() + wq.size()));
            }
            const Scalar& m = s.moment(concat(rp, wq));
            if (!m.is_zero()) acc += cp * cq * m;
        }
    }
    return acc;
}

JacobiParams1D jacobi_from_moments(const State& s) {
    require_one_variable(s, "jacobi_from_moments");
    const std::size_t N = s.trunc_degree();
    std::vector<Scalar> m(N + 1);
    for (std::size_t n = 0; n <= N; ++n) m[n] = s.moment(Word(n, 0));

    JacobiParams1D j;
    Coeffs prev;            // P_{n-1}
    Coeffs cur{Scalar(1)};  // P_n
    Scalar norm(1);
    for (std::size_t n = 0; 2 * n + 1 <= N; ++n) {
        const Coeffs xp = times_x(cur);
        const Scalar beta = pairing(xp, cur, m) / norm;
        j.beta.push_back(beta);
        Coeffs next = axpy(xp, -beta, cur);
        if (n > 0) next = axpy(next, -j.gamma.back(), prev);
        if (2 * (n + 1) > N) break;
        const Scalar next_norm = pairing(next, next, m);
        if (next_norm.sign() < 0) {
            throw PreconditionError("state is not positive: squared norm of P_" + std::to_string(n + 1) + " is " +
                                    next_norm.to_string());
        }
        if (next_norm.is_zero()) {
            j.termination = n + 1;
            break;
        }
        j.gamma.push_back(next_norm / norm);
        prev = std::move(cur);
        cur = std::move(next);
        norm = next_norm;
    }
    return j;
}

State moments_from_jacobi(const JacobiParams1D& j, std::size_t N) {
    const std::size_t limit = j.termination.value_or(N + 1);
    if (j.termination) {
        if (j.beta.size() < limit || j.gamma.size() + 1 < limit) {
            throw PreconditionError("terminated Jacobi data must list beta_0..beta_{k-1} and gamma_1..gamma_{k-1}");
        }
    }
    auto beta_at = [&](std::size_t k) -> const Scalar& {
        if (k >= j.beta.size()) {
            throw PreconditionError("Jacobi data too short: beta_" + std::to_string(k) + " needed for degree " +
                                    std::to_string(N));
        }
        return j.beta[k];
    };
    auto gamma_at = [&](std::size_t k) -> const Scalar& {
        if (k - 1 >= j.gamma.size()) {
            throw PreconditionError("Jacobi data too short: gamma_" + std::to_string(k) + " needed for degree " +
                                    std::to_string(N));
        }
        return j.gamma[k - 1];
    };

    // Coordinates of x^s in the basis P_0, P_1, …; only those that can
    // still return to P_0 within the remaining steps are kept.
    std::map<Word, Scalar, GradedLex> moments;
    std::vector<Scalar> c{Scalar(1)};
    for (std::size_t s = 0; s < N; ++s) {
        const std::size_t keep = std::min(N - s - 1, limit - 1);
        std::vector<Scalar> next(keep + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            if (k + 1 <= keep) next[k + 1] += c[k];
            if (k <= keep) next[k] += beta_at(k) * c[k];
            if (k >= 1 && k - 1 <= keep) next[k - 1] += gamma_at(k) * c[k];
        }
        c = std::move(next);
        moments[Word(s + 1, 0)] = c[0];
    }
    return State::from_moments(1, N, moments);
}

JacobiParams1D strip(const JacobiParams1D& j) {
    if (j.beta.empty() || j.gamma.empty()) throw PreconditionError("strip needs beta_0 and gamma_1");
    JacobiParams1D out{{j.beta.begin() + 1, j.beta.end()}, {j.gamma.begin() + 1, j.gamma.end()}, std::nullopt};
    if (j.termination) out.termination = *j.termination - 1;
    return out;
}

JacobiParams1D unstrip(const JacobiParams1D& j) {
    JacobiParams1D out;
    out.beta.push_back(Scalar(0));
    out.beta.insert(out.beta.end(), j.beta.begin(), j.beta.end());
    out.gamma.push_back(Scalar(1));
    out.gamma.insert(out.gamma.end(), j.gamma.begin(), j.gamma.end());
    if (j.termination) out.termination = *j.termination + 1;
    return out;
}

std::vector<NCPolynomial> polys_from_jacobi(const JacobiParams1D& j, std::size_t n) {
    if (j.termination && n > *j.termination) {
        throw PreconditionError("Jacobi data terminates at " + std::to_string(*j.termination));
    }
    std::vector<Coeffs> ps{Coeffs{Scalar(1)}};
    for (std::size_t k = 0; k < n; ++k) {
        if (k >= j.beta.size() || (k >= 1 && k - 1 >= j.gamma.size())) {
            throw PreconditionError("Jacobi data too short for P_" + std::to_string(k + 1));
        }
        Coeffs next = axpy(times_x(ps[k]), -j.beta[k], ps[k]);
        if (k >= 1) next = axpy(next, -j.gamma[k - 1], ps[k - 1]);
        ps.push_back(std::move(next));
    }
    std::vector<NCPolynomial> out;
    for (const auto& c : ps) out.push_back(to_poly(c));
    return out;
}

namespace {

std::map<Word, Scalar, GradedLex> expand_one_variable(const NCPolynomial& p, const std::vector<NCPolynomial>& family) {
    PolyFamily f;
    for (std::size_t k = 0; k < family.size(); ++k) f.emplace(Word(k, 0), family[k]);
    return expand_in_family(p, f);
}

}  // namespace

JacobiParams1D jacobi_from_family(const std::vector<NCPolynomial>& family) {
    if (family.empty()) throw PreconditionError("empty polynomial family");
    for (std::size_t k = 0; k < family.size(); ++k) {
        if (family[k].d() != 1) throw PreconditionError("jacobi_from_family needs one-variable polynomials");
        if (family[k].degree() != static_cast<int>(k) || family[k].coefficient(Word(k, 0)) != Scalar(1)) {
            throw PreconditionError("family member " + std::to_string(k) + " is not monic of degree " +
                                    std::to_string(k));
        }
    }
    JacobiParams1D j;
    const NCPolynomial x = NCPolynomial::variable(1, 0);
    for (std::size_t k = 0; k + 1 < family.size(); ++k) {
        const auto e = expand_one_variable(x * family[k] - family[k + 1], family);
        for (const auto& [w, c] : e) {
            const std::size_t deg = w.size();
            if (deg == k) {
                j.beta.push_back(c);
            } else if (deg + 1 == k) {
                j.gamma.push_back(c);
            } else {
                throw InconsistencyError("x P_" + std::to_string(k) + " has a component along P_" +
                                         std::to_string(deg));
            }
        }
        if (j.beta.size() == k) j.beta.push_back(Scalar());
        if (k >= 1 && j.gamma.size() + 1 == k) j.gamma.push_back(Scalar());
    }
    return j;
}

PolyFamily second_kind(const PolyFamily& p, const State& s) {
    PolyFamily q;
    for (const auto& [w, poly] : p) {
        if (w.empty() || w.back() != 0) continue;
        q.emplace(slice(w, 0, w.size() - 1), apply_state_partial(Side::Right, s.moments(), diff_quotient(0, poly)));
    }
    return q;
}

std::vector<NCPolynomial> second_kind(const std::vector<NCPolynomial>& p, const State& s) {
    std::vector<NCPolynomial> q;
    for (std::size_t n = 1; n < p.size(); ++n) {
        q.push_back(apply_state_partial(Side::Right, s.moments(), diff_quotient(0, p[n])));
    }
    return q;
}

bool check_mgf_strip_relation(const State& mu, const State& nu) {
    require_one_variable(mu, "check_mgf_strip_relation");
    require_one_variable(nu, "check_mgf_strip_relation");
    const std::size_t N = std::min(mu.trunc_degree(), nu.trunc_degree() + 2);
    const NCSeries eta = boolean_cumulants(mu).series;
    for (std::size_t n = 1; n <= N; ++n) {
        const Scalar rhs = n >= 2 ? nu.moment(Word(n - 2, 0)) : Scalar();
        if (eta[Word(n, 0)] != rhs) return false;
    }
    return true;
}

std::optional<PolyFamily> mops(const State& s, std::size_t k) {
    if (2 * k > s.trunc_degree()) {
        throw TruncationError("MOPS to degree " + std::to_string(k) + " needs moments to degree " +
                              std::to_string(2 * k));
    }
    const std::size_t d = s.d();
    const WordSpace sp(d, k);
    PolyFamily family;
    std::map<Word, Scalar, GradedLex> norms;
    family.emplace(Word{}, NCPolynomial::one(d));
    norms.emplace(Word{}, Scalar(1));
    for (std::size_t n = 1; n <= k; ++n) {
        const auto words = sp.words_of_degree(n);
        std::vector<NCPolynomial> level;
        for (const Word& u : words) {
            const NCPolynomial xu = NCPolynomial::monomial(d, u);
            NCPolynomial p = xu;
            for (const auto& [v, pv] : family) {
                const Scalar ip = inner_product(s, pv, xu);
                if (ip.is_zero()) continue;
                const Scalar& nv = norms.at(v);
                if (nv.is_zero()) return std::nullopt;
                p -= (ip / nv) * pv;
            }
            level.push_back(std::move(p));
        }
        for (std::size_t a = 0; a < level.size(); ++a) {
            for (std::size_t b = a + 1; b < level.size(); ++b) {
                if (!inner_product(s, level[a], level[b]).is_zero()) return std::nullopt;
            }
        }
        for (std::size_t a = 0; a < level.size(); ++a) {
            norms.emplace(words[a], inner_product(s, level[a], level[a]));
            family.emplace(words[a], std::move(level[a]));
        }
    }
    return family;
}

std::map<Word, Scalar, GradedLex> expand_in_family(const NCPolynomial& p, const PolyFamily& family) {
    std::map<Word, Scalar, GradedLex> out;
    NCPolynomial rest = p;
    while (!rest.is_zero()) {
        const auto& [w, c] = *rest.terms().rbegin();
        const Word lead = w;
        const Scalar coeff = c;
        auto it = family.find(lead);
        if (it == family.end()) throw PreconditionError("family has no member with leading word " + to_string(lead));
        out[lead] += coeff;
        rest -= coeff * it->second;
    }
    return out;
}

MatricialJacobi matricial_params(const State& s, std::size_t k) {
    const auto fam = mops(s, k + 1);
    if (!fam) throw PreconditionError("state has no monic orthogonal polynomial system to degree " + std::to_string(k + 1));
    const std::size_t d = s.d();
    const WordSpace sp(d, k + 1);
    MatricialJacobi mj;
    mj.d = d;
    for (std::size_t n = 0; n <= k; ++n) {
        const std::size_t dim = sp.count(n);
        std::vector<Matrix> delta(d, Matrix(dim, dim));
        std::vector<Scalar> gamma(n == 0 ? 0 : dim);
        for (Letter i = 0; i < d; ++i) {
            const NCPolynomial xi = NCPolynomial::variable(d, i);
            for (std::size_t col = 0; col < dim; ++col) {
                const Word w = sp.word(sp.offset(n) + col);
                const auto e = expand_in_family(xi * fam->at(w), *fam);
                for (const auto& [v, c] : e) {
                    if (v.size() == n + 1 && v == prepend(i, w) && c == Scalar(1)) continue;
                    if (v.size() == n) {
                        delta[i](sp.index(v) - sp.offset(n), col) = c;
                        continue;
                    }
                    if (n >= 1 && v.size() == n - 1 && i == w[0] && v == slice(w, 1, n)) {
                        gamma[col] = c;
                        continue;
                    }
                    throw InconsistencyError("state recursion violates MOPS three-term structure: x_" +
                                             std::to_string(i + 1) + " P" + to_string(w) + " has coefficient " +
                                             c.to_string() + " on P" + to_string(v));
                }
            }
        }
        mj.delta.push_back(std::move(delta));
        mj.gamma.push_back(std::move(gamma));
    }
    return mj;
}

namespace {

bool shifted_params(const State& phi, const State& psi, std::size_t k) {
    const std::size_t d = phi.d();
    MatricialJacobi a;
    try {
        a = matricial_params(phi, k);
    } catch (const InconsistencyError&) {
        return false;
    }
    const Matrix id = Matrix::identity(d);
    for (Letter i = 0; i < d; ++i) {
        if (!a.delta[0][i].is_zero()) return false;
    }
    if (k == 0) return true;
    for (const auto& g : a.gamma[1]) {
        if (g != Scalar(1)) return false;
    }
    const MatricialJacobi b = matricial_params(psi, k - 1);
    for (std::size_t n = 1; n <= k; ++n) {
        for (Letter i = 0; i < d; ++i) {
            if (a.delta[n][i] != kron(b.delta[n - 1][i], id)) return false;
        }
        if (n >= 2) {
            for (std::size_t w = 0; w < a.gamma[n].size(); ++w) {
                if (a.gamma[n][w] != b.gamma[n - 1][w / d]) return false;
            }
        }
    }
    return true;
}

}  // namespace

OpsSecondKindReport check_ops_second_kind(const State& phi, const State& psi, std::size_t k) {
    if (phi.d() != psi.d()) throw DimensionMismatch("phi and psi must have the same number of variables");
    if (phi.trunc_degree() < 2 * k + 2) {
        throw TruncationError("phi needs moments to degree " + std::to_string(2 * k + 2));
    }
    if (psi.trunc_degree() < 2 * k) throw TruncationError("psi needs moments to degree " + std::to_string(2 * k));
    if (!has_mean_zero_identity_covariance(phi)) {
        throw PreconditionError("phi must have mean zero and identity covariance");
    }
    const auto q = mops(psi, k);
    if (!q) throw PreconditionError("psi has no monic orthogonal polynomial system to degree " + std::to_string(k));

    OpsSecondKindReport r;
    const std::size_t top = 2 * k + 2;
    const State phi_top(phi.moments().truncated(top));
    const State psi_low(psi.moments().truncated(2 * k));
    r.a = phi_map(psi_low, top) == phi_top;

    const auto p = mops(phi, k + 1);
    if (!p) return r;
    r.b = shifted_params(phi, psi, k);

    r.c = true;
    const std::size_t d = phi.d();
    for (const auto& [w, poly] : *p) {
        if (w.empty()) continue;
        const Word u = slice(w, 0, w.size() - 1);
        const Letter m = w.back();
        for (Letter j = 0; j < d && r.c; ++j) {
            const NCPolynomial lhs = apply_state_partial(Side::Right, phi.moments(), diff_quotient(j, poly));
            const NCPolynomial rhs = j == m ? q->at(u) : NCPolynomial(d);
            if (lhs != rhs) r.c = false;
        }
        if (!r.c) break;
    }
    return r;
}

}  // namespace cfree
