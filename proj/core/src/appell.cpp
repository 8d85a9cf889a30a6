#include "cfree/appell.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "cfree/error.hpp"
#include "cfree/partitions.hpp"

namespace cfree {

namespace {

void require_degree(std::size_t k, std::size_t N) {
    if (k > N) {
        throw TruncationError("Appell family to degree " + std::to_string(k) + " needs cumulants to degree " +
                              std::to_string(k) + ", have " + std::to_string(N));
    }
}

// Series in z with polynomial coefficients in x, dense over words of degree <= k.
using PolySeries = std::vector<NCPolynomial>;

PolySeries inverse_of_shifted(const NCSeries& r, std::size_t k) {
    const std::size_t d = r.d();
    const WordSpace sp(d, k);
    PolySeries s(sp.size(), NCPolynomial(d));
    for (std::size_t idx = 1; idx < sp.size(); ++idx) {
        const Word w = sp.word(idx);
        NCPolynomial c = NCPolynomial::constant(d, r[w]);
        if (w.size() == 1) c -= NCPolynomial::variable(d, w[0]);
        s[idx] = std::move(c);
    }
    PolySeries t(sp.size(), NCPolynomial(d));
    t[0] = NCPolynomial::one(d);
    for (std::size_t n = 1; n <= k; ++n) {
        for (std::size_t v = 0; v < sp.count(n); ++v) {
            NCPolynomial acc(d);
            for (std::size_t m = 1; m <= n; ++m) {
                const std::size_t tail = sp.count(n - m);
                const NCPolynomial& su = s[sp.offset(m) + v / tail];
                if (su.is_zero()) continue;
                const NCPolynomial& tv = t[sp.offset(n - m) + v % tail];
                if (!tv.is_zero()) acc += su * tv;
            }
            t[sp.offset(n) + v] = -acc;
        }
    }
    return t;
}

// H[w] = Σ_{w = uv} T[u] c[v] with a scalar right factor.
PolyFamily times_scalar_series(const PolySeries& t, const NCSeries& c, std::size_t k) {
    const std::size_t d = c.d();
    const WordSpace sp(d, k);
    PolyFamily out;
    for (std::size_t n = 0; n <= k; ++n) {
        for (std::size_t v = 0; v < sp.count(n); ++v) {
            NCPolynomial acc(d);
            for (std::size_t m = 0; m <= n; ++m) {
                const std::size_t tail = sp.count(n - m);
                const NCPolynomial& tu = t[sp.offset(m) + v / tail];
                if (tu.is_zero()) continue;
                const Scalar& cv = c.at(c.space().offset(n - m) + v % tail);
                if (!cv.is_zero()) acc += tu * cv;
            }
            out.emplace(sp.word(sp.offset(n) + v), std::move(acc));
        }
    }
    return out;
}

PolyFamily by_generating_function(const NCSeries& r_psi, const NCSeries& r_two, std::size_t k) {
    const PolySeries t = inverse_of_shifted(r_psi, k);
    const NCSeries c = NCSeries::one(r_psi.d(), r_psi.trunc_degree()) + r_psi - r_two;
    return times_scalar_series(t, c, k);
}

PolyFamily by_recursion(const NCSeries& r_psi, const NCSeries& r_two, std::size_t k) {
    const std::size_t d = r_psi.d();
    const WordSpace sp(d, k);
    PolyFamily a;
    a.emplace(Word{}, NCPolynomial::one(d));
    for (std::size_t idx = 1; idx < sp.size(); ++idx) {
        const Word w = sp.word(idx);
        const Letter i = w[0];
        const Word u = slice(w, 1, w.size());
        NCPolynomial p = NCPolynomial::variable(d, i) * a.at(u);
        for (std::size_t j = 0; j < u.size(); ++j) {
            const Scalar& c = r_psi[slice(w, 0, j + 1)];
            if (!c.is_zero()) p -= c * a.at(slice(u, j, u.size()));
        }
        p -= NCPolynomial::constant(d, r_two[w]);
        a.emplace(w, std::move(p));
    }
    return a;
}

// Visits every (interval partition, subset of its singletons) of {0..n-1}.
// Classes are given as [begin, end) ranges; `chosen[c]` marks the singleton
// classes put in S.
template <typename F>
void for_each_interval_term(std::size_t n, F&& visit) {
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (start == n) {
            std::vector<std::size_t> single;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                if (classes[c].second - classes[c].first == 1) single.push_back(c);
            }
            std::vector<char> chosen(classes.size(), 0);
            for (std::size_t mask = 0; mask < (std::size_t{1} << single.size()); ++mask) {
                std::fill(chosen.begin(), chosen.end(), 0);
                for (std::size_t b = 0; b < single.size(); ++b) {
                    if (mask >> b & 1) chosen[single[b]] = 1;
                }
                visit(classes, chosen);
            }
            return;
        }
        for (std::size_t end = start + 1; end <= n; ++end) {
            classes.emplace_back(start, end);
            rec(end);
            classes.pop_back();
        }
    };
    rec(0);
}

PolyFamily by_explicit_formula(const NCSeries& r_psi, const NCSeries& r_two, std::size_t k) {
    const std::size_t d = r_psi.d();
    const WordSpace sp(d, k);
    PolyFamily a;
    a.emplace(Word{}, NCPolynomial::one(d));
    for (std::size_t idx = 1; idx < sp.size(); ++idx) {
        const Word w = sp.word(idx);
        const std::size_t n = w.size();
        NCPolynomial p(d);
        for_each_interval_term(n, [&](const auto& classes, const std::vector<char>& chosen) {
            Scalar coeff(1);
            Word mono;
            std::size_t complement = 0;
            for (std::size_t c = 0; c < classes.size() && !coeff.is_zero(); ++c) {
                const auto [b, e] = classes[c];
                if (chosen[c]) {
                    mono.push_back(w[b]);
                    continue;
                }
                ++complement;
                const Word sub = slice(w, b, e);
                coeff *= e == n ? r_two[sub] : r_psi[sub];
            }
            if (coeff.is_zero()) return;
            if (complement % 2 == 1) coeff = -coeff;
            p.add_term(mono, coeff);
        });
        a.emplace(w, std::move(p));
    }
    return a;
}

}  // namespace

AppellFamily free_appell(const State& psi, std::size_t k) {
    require_degree(k, psi.trunc_degree());
    const NCSeries r = free_cumulants(psi).series;
    const PolySeries t = inverse_of_shifted(r, k);
    return {StatePair(psi, psi), k, times_scalar_series(t, NCSeries::one(psi.d(), psi.trunc_degree()), k)};
}

AppellFamily cfree_appell(const StatePair& pair, std::size_t k, AppellMethod method) {
    require_degree(k, pair.trunc_degree());
    const NCSeries r_psi = free_cumulants(pair.psi()).series;
    const NCSeries r_two = two_state_cumulants(pair).series;
    switch (method) {
        case AppellMethod::GenFun:
            return {pair, k, by_generating_function(r_psi, r_two, k)};
        case AppellMethod::Recursion:
            return {pair, k, by_recursion(r_psi, r_two, k)};
        case AppellMethod::Explicit:
            return {pair, k, by_explicit_formula(r_psi, r_two, k)};
    }
    throw PreconditionError("unknown Appell construction method");
}

AppellFamily boolean_appell(const State& phi, std::size_t k) {
    require_degree(k, phi.trunc_degree());
    const std::size_t d = phi.d();
    const WordSpace sp(d, k);
    PolySeries t(sp.size(), NCPolynomial(d));
    for (std::size_t idx = 0; idx < sp.size(); ++idx) t[idx] = NCPolynomial::monomial(d, sp.word(idx));
    const NCSeries c = NCSeries::one(d, phi.trunc_degree()) - boolean_cumulants(phi).series;
    return {StatePair(phi, delta_zero(d, phi.trunc_degree())), k, times_scalar_series(t, c, k)};
}

std::map<Word, Scalar, GradedLex> monomial_expansion(const StatePair& pair, const Word& u) {
    const std::size_t n = u.size();
    if (n > pair.trunc_degree()) throw TruncationError("monomial degree exceeds the truncation of the pair");
    if (n >= 8 * sizeof(std::size_t)) throw PreconditionError("monomial too long for subset enumeration");
    std::map<Word, Scalar, GradedLex> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Scalar coeff(1);
        Word sub;
        std::size_t gap_start = 0;
        for (std::size_t p = 0; p < n && !coeff.is_zero(); ++p) {
            if (!(mask >> p & 1)) continue;
            coeff *= pair.psi().moment(slice(u, gap_start, p));
            sub.push_back(u[p]);
            gap_start = p + 1;
        }
        if (coeff.is_zero()) continue;
        coeff *= pair.phi().moment(slice(u, gap_start, n));
        if (!coeff.is_zero()) out[sub] += coeff;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

bool AppellCheckReport::ok() const {
    return not_monic.empty() && not_centered.empty() && left_law.empty() && right_law.empty() && coproduct_law.empty();
}

std::optional<Word> AppellCheckReport::first_violation() const {
    std::optional<Word> best;
    GradedLex lt;
    for (const auto* list : {&not_monic, &not_centered, &left_law, &right_law, &coproduct_law}) {
        for (const Word& w : *list) {
            if (!best || lt(w, *best)) best = w;
        }
    }
    return best;
}

AppellCheckReport check_characterizations(const AppellFamily& fam) {
    const StatePair& pair = fam.pair;
    const std::size_t d = pair.d();
    const AppellFamily psi_fam = free_appell(pair.psi(), fam.degree);
    AppellCheckReport rep;
    for (const auto& [w, a] : fam.polys) {
        bool monic = a.coefficient(w) == Scalar(1);
        for (const auto& [v, c] : a.terms()) {
            if (v != w && v.size() >= w.size()) monic = false;
        }
        if (!monic) rep.not_monic.push_back(w);
        if (w.empty()) continue;
        if (!pair.phi()(a).is_zero()) rep.not_centered.push_back(w);

        const std::size_t n = w.size();
        bool left_ok = true;
        bool right_ok = true;
        bool coproduct_ok = true;
        for (Letter i = 0; i < d; ++i) {
            const TensorPolynomial da = diff_quotient(i, a);
            const NCPolynomial left = apply_state_partial(Side::Left, pair.psi().moments(), da);
            const NCPolynomial left_expected = i == w[0] ? fam[slice(w, 1, n)] : NCPolynomial(d);
            if (left != left_expected) left_ok = false;
            const NCPolynomial right = apply_state_partial(Side::Right, pair.phi().moments(), da);
            const NCPolynomial right_expected = i == w[n - 1] ? psi_fam[slice(w, 0, n - 1)] : NCPolynomial(d);
            if (right != right_expected) right_ok = false;
            TensorPolynomial expected(d);
            for (std::size_t p = 0; p < n; ++p) {
                if (w[p] == i) expected += TensorPolynomial::tensor(psi_fam[slice(w, 0, p)], fam[slice(w, p + 1, n)]);
            }
            if (da != expected) coproduct_ok = false;
        }
        if (!left_ok) rep.left_law.push_back(w);
        if (!right_ok) rep.right_law.push_back(w);
        if (!coproduct_ok) rep.coproduct_law.push_back(w);
    }
    return rep;
}

OrthogonalityReport orthogonality_report(const StatePair& pair) {
    if (!has_mean_zero_identity_covariance(pair.phi())) {
        throw PreconditionError("orthogonality report needs phi with mean zero and identity covariance");
    }
    const std::size_t d = pair.d();
    OrthogonalityReport rep;
    rep.degree_one_orthogonal = is_simple_quadratic(two_state_cumulants(pair).series);
    if (!rep.degree_one_orthogonal) return rep;

    const NCSeries r = free_cumulants(pair.psi()).series;
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        const Word w = r.space().word(idx);
        const bool allowed = w.size() == 1 || (w.size() == 2 && w[0] == w[1]);
        if (!allowed && !r.at(idx).is_zero()) return rep;
    }
    rep.fully_orthogonal = true;
    std::vector<std::pair<Scalar, Scalar>> params;
    for (Letter i = 0; i < d; ++i) params.emplace_back(r[{i}], r[{i, i}] - Scalar(1));
    rep.meixner_params = params;

    if (pair.trunc_degree() >= 4) {
        const auto fm = is_free_meixner(pair.phi());
        if (!fm) throw InconsistencyError("fully orthogonal Appell family but phi fails the free Meixner equation");
        for (Letter i = 0; i < d; ++i) {
            for (Letter j = 0; j < d; ++j) {
                if (fm->c(i, j) != params[i].second) {
                    throw InconsistencyError("free Meixner parameter C does not match the free cumulants of psi");
                }
                for (Letter k = 0; k < d; ++k) {
                    if (fm->b[k](i, j) != (j == k ? params[i].first : Scalar())) {
                        throw InconsistencyError("free Meixner parameter B does not match the free cumulants of psi");
                    }
                }
            }
        }
    }
    return rep;
}

Matrix appell_gram(const StatePair& pair, std::size_t k) {
    if (2 * k > pair.trunc_degree()) {
        throw TruncationError("Appell Gram matrix to degree " + std::to_string(k) + " needs moments to degree " +
                              std::to_string(2 * k));
    }
    const AppellFamily fam = cfree_appell(pair, k);
    std::vector<const NCPolynomial*> polys;
    for (const auto& [w, p] : fam.polys) polys.push_back(&p);
    Matrix g(polys.size(), polys.size());
    for (std::size_t a = 0; a < polys.size(); ++a) {
        for (std::size_t b = 0; b < polys.size(); ++b) g(a, b) = inner_product(pair.phi(), *polys[a], *polys[b]);
    }
    return g;
}

std::vector<SymbolicTerm> symbolic_cfree_appell(std::size_t n) {
    if (n == 0) return {SymbolicTerm{1, {}}};
    std::vector<SymbolicTerm> out;
    for_each_interval_term(n, [&](const auto& classes, const std::vector<char>& chosen) {
        SymbolicTerm t{1, {}};
        std::size_t complement = 0;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const auto [b, e] = classes[c];
            if (chosen[c]) {
                t.factors.push_back({SymbolicFactor::Kind::Variable, {b + 1}});
                continue;
            }
            ++complement;
            SymbolicFactor f{e == n ? SymbolicFactor::Kind::TwoStateCumulant : SymbolicFactor::Kind::FreeCumulant, {}};
            for (std::size_t p = b; p < e; ++p) f.positions.push_back(p + 1);
            t.factors.push_back(std::move(f));
        }
        t.sign = complement % 2 == 1 ? -1 : 1;
        out.push_back(std::move(t));
    });
    // Highest number of variables first, then by the positions used.
    std::stable_sort(out.begin(), out.end(), [](const SymbolicTerm& a, const SymbolicTerm& b) {
        auto vars = [](const SymbolicTerm& t) {
            return std::count_if(t.factors.begin(), t.factors.end(),
                                 [](const SymbolicFactor& f) { return f.kind == SymbolicFactor::Kind::Variable; });
        };
        return vars(a) > vars(b);
    });
    return out;
}

}  // namespace cfree
