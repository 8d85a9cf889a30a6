#include "cfree/states.hpp"

#include <string>

#include "cfree/error.hpp"
#include "cfree/orthopoly.hpp"
#include "cfree/partitions.hpp"

namespace cfree {

namespace {

void require_same_algebra(const State& a, const State& b, const char* what) {
    if (a.d() != b.d()) {
        throw DimensionMismatch(std::string(what) + ": variable counts differ (" + std::to_string(a.d()) + " vs " +
                                std::to_string(b.d()) + ")");
    }
    if (a.trunc_degree() != b.trunc_degree()) {
        throw DimensionMismatch(std::string(what) + ": truncation degrees differ (" +
                                std::to_string(a.trunc_degree()) + " vs " + std::to_string(b.trunc_degree()) + ")");
    }
}

NCSeries one_plus(NCSeries s) {
    s.at(0) += Scalar(1);
    return s;
}

State from_boolean(const NCSeries& eta) {
    return State(inverse(NCSeries::one(eta.d(), eta.trunc_degree()) - eta));
}

}  // namespace

State::State(NCSeries moments) : moments_(std::move(moments)) {
    if (moments_.constant_term() != Scalar(1)) throw PreconditionError("a state must satisfy s[1] = 1");
    const WordSpace& sp = moments_.space();
    for (std::size_t idx = 1; idx < sp.size(); ++idx) {
        const Word w = sp.word(idx);
        const Word r = reversed(w);
        if (moments_[r] != moments_.at(idx)) {
            throw PreconditionError("moments must be invariant under word reversal: s" + to_string(w) + " = " +
                                    moments_.at(idx).to_string() + " but s" + to_string(r) + " = " +
                                    moments_[r].to_string());
        }
    }
}

State State::from_moments(std::size_t d, std::size_t N, const std::map<Word, Scalar, GradedLex>& moments) {
    auto terms = moments;
    auto it = terms.find(Word{});
    if (it == terms.end()) terms.emplace(Word{}, Scalar(1));
    return State(NCSeries::from_terms(d, N, terms));
}

State State::from_mgf(const NCSeries& mgf) {
    if (!mgf.constant_term().is_zero()) throw PreconditionError("moment generating function must have zero constant term");
    return State(one_plus(mgf));
}

NCSeries State::mgf() const {
    NCSeries m = moments_;
    m.at(0) = Scalar();
    return m;
}

StatePair::StatePair(State phi, State psi) : phi_(std::move(phi)), psi_(std::move(psi)) {
    require_same_algebra(phi_, psi_, "state pair");
}

CumulantSeries::CumulantSeries(CumulantKind k, NCSeries s) : kind(k), series(std::move(s)) {
    if (!series.constant_term().is_zero()) throw PreconditionError("cumulant series must have zero constant term");
}

CumulantSeries boolean_cumulants(const State& s) {
    return {CumulantKind::Boolean, NCSeries::one(s.d(), s.trunc_degree()) - inverse(s.moments())};
}

CumulantSeries free_cumulants(const State& s, FixedPointVariant variant) {
    return {CumulantKind::Free, solve_free_cumulant_series(s.mgf(), variant)};
}

namespace {

struct ClassData {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> outer;
};

// Non-crossing partitions of {0..n-1} other than the one-class partition.
std::vector<ClassData> proper_noncrossing(std::size_t n) {
    std::vector<ClassData> out;
    for_each_partition(PartitionKind::NonCrossing, n, [&](const SetPartition& p) {
        if (p.size() == 1) return;
        const auto roles = classify_classes(p);
        ClassData c;
        c.classes = p.classes();
        for (auto r : roles) c.outer.push_back(r == ClassRole::Outer);
        out.push_back(std::move(c));
    });
    return out;
}

}  // namespace

CumulantSeries two_state_cumulants(const StatePair& pair) {
    const std::size_t d = pair.d();
    const std::size_t N = pair.trunc_degree();
    const NCSeries r_psi = free_cumulants(pair.psi()).series;
    const NCSeries& phi = pair.phi().moments();
    NCSeries r(d, N);
    const WordSpace& sp = r.space();
    std::vector<Letter> letters;
    for (std::size_t n = 1; n <= N; ++n) {
        const auto parts = proper_noncrossing(n);
        for (std::size_t v = 0; v < sp.count(n); ++v) {
            const std::size_t idx = sp.offset(n) + v;
            letters = sp.word(idx);
            Scalar acc;
            for (const auto& p : parts) {
                Scalar term(1);
                for (std::size_t b = 0; b < p.classes.size() && !term.is_zero(); ++b) {
                    const auto& cls = p.classes[b];
                    std::size_t sub = 0;
                    for (std::size_t e : cls) sub = sub * d + letters[e];
                    sub += sp.offset(cls.size());
                    term *= p.outer[b] ? r.at(sub) : r_psi.at(sub);
                }
                if (!term.is_zero()) acc += term;
            }
            r.at(idx) = phi.at(idx) - acc;
        }
    }
    return {CumulantKind::TwoState, std::move(r)};
}

CumulantSeries two_state_cumulants_via_generating_function(const StatePair& pair) {
    const NCSeries one_plus_m_psi = pair.psi().moments();
    const NCSeries eta_phi = boolean_cumulants(pair.phi()).series;
    const NCSeries f = one_plus_m_psi * eta_phi;
    const NCSeries r_psi = free_cumulants(pair.psi()).series;
    // z = (1 + M^ψ(w)) w inverts to w = (1 + R^ψ(z))^{-1} z.
    return {CumulantKind::TwoState, substitute_sided(f, inverse(one_plus(r_psi)), Side::Left)};
}

State moments_from_cumulants(const CumulantSeries& c, const State* aux) {
    switch (c.kind) {
        case CumulantKind::Boolean:
            return from_boolean(c.series);
        case CumulantKind::Free:
            return State::from_mgf(solve_moment_series(c.series, FixedPointVariant::RwM));
        case CumulantKind::TwoState: {
            if (aux == nullptr) throw PreconditionError("two-state cumulants need the state psi to recover moments");
            if (aux->d() != c.series.d() || aux->trunc_degree() != c.series.trunc_degree()) {
                throw DimensionMismatch("psi does not match the cumulant series in d or truncation");
            }
            const NCSeries& t = aux->moments();
            const NCSeries eta = inverse(t) * substitute_sided(c.series, t, Side::Left);
            return from_boolean(eta);
        }
    }
    throw PreconditionError("unknown cumulant kind");
}

State convolve(ConvolutionKind kind, const State& a, const State& b) {
    require_same_algebra(a, b, "convolution");
    if (kind == ConvolutionKind::Free) {
        return moments_from_cumulants({CumulantKind::Free, free_cumulants(a).series + free_cumulants(b).series});
    }
    return from_boolean(boolean_cumulants(a).series + boolean_cumulants(b).series);
}

State boolean_power(const State& a, const Scalar& lambda) {
    if (lambda.sign() < 0) throw PreconditionError("Boolean convolution power needs lambda >= 0");
    return from_boolean(lambda * boolean_cumulants(a).series);
}

State phi_map(const State& psi) { return phi_map(psi, psi.trunc_degree()); }

State phi_map(const State& psi, std::size_t N) {
    if (N > psi.trunc_degree() + 2) {
        throw TruncationError("Phi[psi] to degree " + std::to_string(N) + " needs psi to degree " + std::to_string(N - 2));
    }
    const std::size_t d = psi.d();
    NCSeries eta(d, N);
    const WordSpace& sp = eta.space();
    for (std::size_t n = 2; n <= N; ++n) {
        for (Letter i = 0; i < d; ++i) {
            for (const Word& u : sp.words_of_degree(n - 2)) {
                const Scalar& m = psi.moment(u);
                if (m.is_zero()) continue;
                Word w = prepend(i, u);
                w.push_back(i);
                eta.set(w, m);
            }
        }
    }
    return from_boolean(eta);
}

StatePair cfree_product(const std::vector<StatePair>& pairs) {
    if (pairs.empty()) throw PreconditionError("c-free product of an empty list");
    const std::size_t N = pairs.front().trunc_degree();
    std::size_t d = 0;
    for (const auto& p : pairs) {
        if (p.trunc_degree() != N) throw DimensionMismatch("c-free product factors must share the truncation degree");
        d += p.d();
    }
    NCSeries r_psi(d, N);
    NCSeries r_two(d, N);
    Letter shift = 0;
    for (const auto& p : pairs) {
        const NCSeries a = free_cumulants(p.psi()).series;
        const NCSeries b = two_state_cumulants(p).series;
        for (std::size_t idx = 1; idx < a.size(); ++idx) {
            if (a.at(idx).is_zero() && b.at(idx).is_zero()) continue;
            Word w = a.space().word(idx);
            for (auto& l : w) l += shift;
            r_psi.set(w, a.at(idx));
            r_two.set(w, b.at(idx));
        }
        shift += static_cast<Letter>(p.d());
    }
    State psi = moments_from_cumulants({CumulantKind::Free, r_psi});
    State phi = moments_from_cumulants({CumulantKind::TwoState, r_two}, &psi);
    return {std::move(phi), std::move(psi)};
}

Matrix gram_matrix(const State& s, std::size_t k) {
    if (2 * k > s.trunc_degree()) {
        throw TruncationError("Gram matrix to degree " + std::to_string(k) + " needs moments to degree " +
                              std::to_string(2 * k) + ", have " + std::to_string(s.trunc_degree()));
    }
    const auto words = s.moments().space().words_up_to(k);
    Matrix g(words.size(), words.size());
    for (std::size_t a = 0; a < words.size(); ++a) {
        const Word ra = reversed(words[a]);
        for (std::size_t b = a; b < words.size(); ++b) {
            g(a, b) = s.moment(concat(ra, words[b]));
            g(b, a) = g(a, b);
        }
    }
    return g;
}

bool is_positive(const State& s, std::size_t k) { return is_positive_semidefinite(gram_matrix(s, k)); }

bool has_mean_zero_identity_covariance(const State& s) {
    if (s.trunc_degree() < 2) return false;
    for (Letter i = 0; i < s.d(); ++i) {
        if (!s.moment({i}).is_zero()) return false;
        for (Letter j = 0; j < s.d(); ++j) {
            if (s.moment({i, j}) != Scalar(i == j ? 1 : 0)) return false;
        }
    }
    return true;
}

State center_and_rescale(const State& s) {
    if (s.d() != 1) throw PreconditionError("center_and_rescale handles one variable only");
    const std::size_t N = s.trunc_degree();
    if (N < 2) throw TruncationError("center_and_rescale needs moments to degree 2");
    std::vector<Scalar> m(N + 1);
    for (std::size_t n = 0; n <= N; ++n) m[n] = s.moment(Word(n, 0));
    const Scalar mean = m[1];
    const Scalar var = m[2] - mean * mean;
    if (var.sign() <= 0) throw PreconditionError("variance must be positive");
    Scalar sigma;
    if (!exact_sqrt(var, sigma)) throw PreconditionError("variance " + var.to_string() + " is not a rational square");
    std::map<Word, Scalar, GradedLex> out;
    for (std::size_t n = 1; n <= N; ++n) {
        // E[(x - mean)^n] = Σ_k C(n,k) m_k (-mean)^{n-k}
        Scalar acc;
        Scalar binom(1);
        for (std::size_t k = 0; k <= n; ++k) {
            acc += binom * m[k] * pow(-mean, static_cast<unsigned>(n - k));
            binom = binom * Scalar(static_cast<long>(n - k)) / Scalar(static_cast<long>(k + 1));
        }
        out[Word(n, 0)] = acc / pow(sigma, static_cast<unsigned>(n));
    }
    return State::from_moments(1, N, out);
}

std::optional<FreeMeixnerParams> is_free_meixner(const State& s) {
    if (!has_mean_zero_identity_covariance(s)) {
        throw PreconditionError("free Meixner test needs mean zero and identity covariance");
    }
    const std::size_t N = s.trunc_degree();
    if (N < 4) throw TruncationError("free Meixner test needs moments to degree 4");
    const std::size_t d = s.d();
    const NCSeries eta = boolean_cumulants(s).series;
    const WordSpace& sp = eta.space();

    FreeMeixnerParams params{std::vector<Matrix>(d, Matrix(d, d)), Matrix(d, d)};
    Matrix one_plus_c(d, d);
    for (Letter i = 0; i < d; ++i) {
        for (Letter j = 0; j < d; ++j) {
            for (Letter k = 0; k < d; ++k) params.b[k](i, j) = eta[{j, i, k}];
            Scalar v = eta[{j, i, i, j}];
            for (Letter m = 0; m < d; ++m) v -= params.b[m](i, j) * eta[{m, i, j}];
            one_plus_c(i, j) = v;
            params.c(i, j) = v - Scalar(1);
        }
    }

    // (D_i D_j η)[v] = η[(j,i,v)], (D_k η)[v] = η[(k,v)].
    for (Letter i = 0; i < d; ++i) {
        for (Letter j = 0; j < d; ++j) {
            for (std::size_t idx = 0; idx < sp.size(); ++idx) {
                const std::size_t n = sp.degree(idx);
                if (n + 2 > N) break;
                const Word v = sp.word(idx);
                Scalar rhs(n == 0 && i == j ? 1 : 0);
                for (Letter k = 0; k < d; ++k) {
                    if (!params.b[k](i, j).is_zero()) rhs += params.b[k](i, j) * eta[prepend(k, v)];
                }
                if (!one_plus_c(i, j).is_zero()) {
                    Scalar conv;
                    for (std::size_t cut = 0; cut <= n; ++cut) {
                        const Scalar& a = eta[prepend(i, slice(v, 0, cut))];
                        if (a.is_zero()) continue;
                        conv += a * eta[prepend(j, slice(v, cut, n))];
                    }
                    rhs += one_plus_c(i, j) * conv;
                }
                Word lhs_word{j, i};
                lhs_word.insert(lhs_word.end(), v.begin(), v.end());
                if (eta[lhs_word] != rhs) return std::nullopt;
            }
        }
    }
    return params;
}

bool is_simple_quadratic(const NCSeries& r, const Scalar& lambda) {
    for (std::size_t idx = 0; idx < r.size(); ++idx) {
        const Word w = r.space().word(idx);
        const bool square = w.size() == 2 && w[0] == w[1];
        if (r.at(idx) != (square ? lambda : Scalar())) return false;
    }
    return true;
}

std::optional<Scalar> fisher_equality_scale(const StatePair& pair) {
    if (pair.trunc_degree() < 2) return std::nullopt;
    const NCSeries r = two_state_cumulants(pair).series;
    const Scalar lambda = r[{0, 0}];
    if (is_simple_quadratic(r, lambda)) return lambda;
    return std::nullopt;
}

bool check_c_cumulant_identity(const StatePair& pair) {
    const std::size_t d = pair.d();
    const std::size_t N = pair.trunc_degree();
    const NCSeries r_psi = free_cumulants(pair.psi()).series;
    const NCSeries r_two = two_state_cumulants(pair).series;
    const NCSeries lhs_z = NCSeries::one(d, N) + r_psi - r_two;
    const NCSeries lhs = substitute_sided(lhs_z, pair.psi().moments(), Side::Left);
    const NCSeries rhs = pair.psi().moments() * inverse(pair.phi().moments());
    return lhs == rhs;
}

State semicircle(const Scalar& alpha, const Scalar& beta, std::size_t N) {
    if (beta.sign() < 0) throw PreconditionError("semicircle variance must be >= 0");
    JacobiParams1D j;
    if (beta.is_zero()) {
        j.beta = {alpha};
        j.termination = 1;
    } else {
        j.beta.assign(N + 1, alpha);
        j.gamma.assign(N + 1, beta);
    }
    return moments_from_jacobi(j, N);
}

State free_meixner_1d(const Scalar& b, const Scalar& c, std::size_t N) {
    const Scalar g = Scalar(1) + c;
    if (g.sign() < 0) throw PreconditionError("free Meixner law needs 1 + c >= 0");
    JacobiParams1D j;
    if (g.is_zero()) {
        j.beta = {Scalar(0), b};
        j.gamma = {Scalar(1)};
        j.termination = 2;
    } else {
        j.beta.assign(N + 1, b);
        j.beta[0] = Scalar(0);
        j.gamma.assign(N + 1, g);
        j.gamma[0] = Scalar(1);
    }
    return moments_from_jacobi(j, N);
}

State free_product_of_semicircles(const std::vector<std::pair<Scalar, Scalar>>& mean_variance, std::size_t N) {
    if (mean_variance.empty()) throw PreconditionError("free product of an empty list");
    const std::size_t d = mean_variance.size();
    NCSeries r(d, N);
    for (Letter i = 0; i < d; ++i) {
        const auto& [mean, var] = mean_variance[i];
        if (var.sign() < 0) throw PreconditionError("semicircle variance must be >= 0");
        if (N >= 1) r.set({i}, mean);
        if (N >= 2) r.set({i, i}, var);
    }
    return moments_from_cumulants({CumulantKind::Free, r});
}

State delta_zero(std::size_t d, std::size_t N) { return State(NCSeries::one(d, N)); }

State bernoulli_pm1(std::size_t N) { return moments_from_jacobi({{Scalar(0), Scalar(0)}, {Scalar(1)}, 2}, N); }

State point_mass(const Scalar& a, std::size_t N) {
    std::map<Word, Scalar, GradedLex> m;
    for (std::size_t n = 1; n <= N; ++n) m[Word(n, 0)] = pow(a, static_cast<unsigned>(n));
    return State::from_moments(1, N, m);
}

}  // namespace cfree
