#pragma once

// Shared helpers for the test binaries: seeded random inputs and oracles
// that recompute library results by brute force, independently of the
// library's own enumerators and transforms.

#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "cfree/fock.hpp"
#include "cfree/ncseries.hpp"
#include "cfree/orthopoly.hpp"
#include "cfree/states.hpp"

namespace cfree::test {

using Rng = std::mt19937_64;

inline Scalar random_rational(Rng& rng, long lo, long hi, long max_den = 4) {
    std::uniform_int_distribution<long> num(lo * max_den, hi * max_den);
    std::uniform_int_distribution<long> den(1, max_den);
    return Scalar(num(rng), den(rng));
}

inline Scalar random_positive(Rng& rng, long hi = 3, long max_den = 4) {
    std::uniform_int_distribution<long> num(1, hi * max_den);
    std::uniform_int_distribution<long> den(1, max_den);
    return Scalar(num(rng), den(rng));
}

/// Arbitrary unital, reversal-symmetric moment functional (no positivity).
inline State random_functional(Rng& rng, std::size_t d, std::size_t N) {
    NCSeries s = NCSeries::one(d, N);
    const WordSpace& sp = s.space();
    for (std::size_t idx = 1; idx < sp.size(); ++idx) {
        const Word w = sp.word(idx);
        const Word r = reversed(w);
        if (r < w) {
            s.at(idx) = s[r];
        } else {
            s.at(idx) = random_rational(rng, -2, 2, 3);
        }
    }
    return State(std::move(s));
}

/// Random Jacobi data with γ_n > 0 (an honest positive measure).
inline JacobiParams1D random_jacobi(Rng& rng, std::size_t len) {
    JacobiParams1D j;
    for (std::size_t n = 0; n < len; ++n) j.beta.push_back(random_rational(rng, -1, 1, 3));
    for (std::size_t n = 0; n < len; ++n) j.gamma.push_back(random_positive(rng, 2, 3));
    return j;
}

inline State random_measure(Rng& rng, std::size_t N) {
    return moments_from_jacobi(random_jacobi(rng, N + 1), N);
}

/// Mean zero, variance one.
inline State random_normalized_measure(Rng& rng, std::size_t N) {
    JacobiParams1D j = random_jacobi(rng, N + 1);
    j.beta[0] = Scalar(0);
    j.gamma[0] = Scalar(1);
    return moments_from_jacobi(j, N);
}

/// Free product of one-variable states: the d-variable state with
/// R(z) = Σ_i R_i(z_i).
inline State free_product(const std::vector<State>& factors) {
    std::vector<StatePair> pairs;
    for (const auto& f : factors) pairs.emplace_back(f, f);
    return cfree_product(pairs).psi();
}

/// Free product of random positive one-variable measures; it has a MOPS.
inline State random_mops_state(Rng& rng, std::size_t d, std::size_t N) {
    std::vector<State> fs;
    for (std::size_t i = 0; i < d; ++i) fs.push_back(random_measure(rng, N));
    return d == 1 ? fs[0] : free_product(fs);
}

inline StatePair random_pair(Rng& rng, std::size_t d, std::size_t N) {
    return {random_functional(rng, d, N), random_functional(rng, d, N)};
}

inline TestAlgebra random_algebra(Rng& rng, std::size_t m) {
    std::vector<Scalar> mu, nu;
    for (std::size_t p = 0; p < m; ++p) {
        mu.push_back(random_rational(rng, 0, 2, 3));
        nu.push_back(random_rational(rng, 0, 2, 3));
    }
    return {mu, nu};
}

inline AlgebraElement random_element(Rng& rng, std::size_t m) {
    AlgebraElement f;
    for (std::size_t p = 0; p < m; ++p) f.push_back(random_rational(rng, -2, 2, 2));
    return f;
}

// ---- independent partition enumeration -------------------------------------

using Partition = std::vector<std::vector<std::size_t>>;

/// All set partitions of {0..n-1} by inserting each element into an
/// existing block or a new one.
inline std::vector<Partition> all_partitions(std::size_t n) {
    std::vector<Partition> out{{}};
    for (std::size_t e = 0; e < n; ++e) {
        std::vector<Partition> next;
        for (const auto& p : out) {
            for (std::size_t b = 0; b <= p.size(); ++b) {
                Partition q = p;
                if (b == q.size()) {
                    q.push_back({e});
                } else {
                    q[b].push_back(e);
                }
                next.push_back(std::move(q));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::size_t> block_labels(const Partition& p, std::size_t n) {
    std::vector<std::size_t> lab(n);
    for (std::size_t b = 0; b < p.size(); ++b) {
        for (std::size_t e : p[b]) lab[e] = b;
    }
    return lab;
}

inline bool crossing(const Partition& p, std::size_t n) {
    const auto lab = block_labels(p, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t e = c + 1; e < n; ++e)
                    if (lab[a] == lab[c] && lab[b] == lab[e] && lab[a] != lab[b]) return true;
    return false;
}

inline bool interval(const Partition& p) {
    for (const auto& b : p) {
        if (b.back() - b.front() + 1 != b.size()) return false;
    }
    return true;
}

/// Some other block has elements strictly before and after the block.
inline bool inner_block(const Partition& p, std::size_t b) {
    const std::size_t lo = p[b].front();
    const std::size_t hi = p[b].back();
    for (std::size_t o = 0; o < p.size(); ++o) {
        if (o == b) continue;
        bool before = false, after = false;
        for (std::size_t e : p[o]) {
            before = before || e < lo;
            after = after || e > hi;
        }
        if (before && after) return true;
    }
    return false;
}

inline std::vector<Partition> nc_partitions(std::size_t n) {
    std::vector<Partition> out;
    for (auto& p : all_partitions(n)) {
        if (!crossing(p, n)) out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<Partition> interval_partitions(std::size_t n) {
    std::vector<Partition> out;
    for (auto& p : all_partitions(n)) {
        if (interval(p)) out.push_back(std::move(p));
    }
    return out;
}

inline Word restrict_word(const Word& w, const std::vector<std::size_t>& block) {
    Word out;
    for (std::size_t e : block) out.push_back(w[e]);
    return out;
}

// ---- brute-force cumulants --------------------------------------------------

/// Free cumulants by Möbius-style inversion of M[w] = Σ_{π∈NC} ∏ R[w|B].
inline NCSeries free_cumulants_oracle(const State& s) {
    const std::size_t d = s.d(), N = s.trunc_degree();
    NCSeries r(d, N);
    for (std::size_t n = 1; n <= N; ++n) {
        const auto parts = nc_partitions(n);
        for (const Word& w : r.space().words_of_degree(n)) {
            Scalar acc = s.moment(w);
            for (const auto& p : parts) {
                if (p.size() == 1) continue;
                Scalar term(1);
                for (const auto& b : p) term *= r[restrict_word(w, b)];
                acc -= term;
            }
            r.set(w, acc);
        }
    }
    return r;
}

/// Boolean cumulants from M[w] = Σ_{π∈Int} ∏ η[w|B].
inline NCSeries boolean_cumulants_oracle(const State& s) {
    const std::size_t d = s.d(), N = s.trunc_degree();
    NCSeries eta(d, N);
    for (std::size_t n = 1; n <= N; ++n) {
        const auto parts = interval_partitions(n);
        for (const Word& w : eta.space().words_of_degree(n)) {
            Scalar acc = s.moment(w);
            for (const auto& p : parts) {
                if (p.size() == 1) continue;
                Scalar term(1);
                for (const auto& b : p) term *= eta[restrict_word(w, b)];
                acc -= term;
            }
            eta.set(w, acc);
        }
    }
    return eta;
}

/// φ[w] = Σ_{π∈NC} ∏_{outer} R^{φψ}[w|B] ∏_{inner} R^ψ[w|C].
inline NCSeries two_state_cumulants_oracle(const StatePair& pair) {
    const std::size_t d = pair.d(), N = pair.trunc_degree();
    const NCSeries rpsi = free_cumulants_oracle(pair.psi());
    NCSeries r(d, N);
    for (std::size_t n = 1; n <= N; ++n) {
        const auto parts = nc_partitions(n);
        for (const Word& w : r.space().words_of_degree(n)) {
            Scalar acc = pair.phi().moment(w);
            for (const auto& p : parts) {
                if (p.size() == 1) continue;
                Scalar term(1);
                for (std::size_t b = 0; b < p.size(); ++b) {
                    const Word sub = restrict_word(w, p[b]);
                    term *= inner_block(p, b) ? rpsi[sub] : r[sub];
                }
                acc -= term;
            }
            r.set(w, acc);
        }
    }
    return r;
}

/// Moments from two-state and free cumulants by the same partition sum.
inline NCSeries two_state_moments_oracle(const NCSeries& r, const NCSeries& rpsi) {
    NCSeries m = NCSeries::one(r.d(), r.trunc_degree());
    for (std::size_t n = 1; n <= r.trunc_degree(); ++n) {
        const auto parts = nc_partitions(n);
        for (const Word& w : r.space().words_of_degree(n)) {
            Scalar acc;
            for (const auto& p : parts) {
                Scalar term(1);
                for (std::size_t b = 0; b < p.size(); ++b) {
                    const Word sub = restrict_word(w, p[b]);
                    term *= inner_block(p, b) ? rpsi[sub] : r[sub];
                }
                acc += term;
            }
            m.set(w, acc);
        }
    }
    return m;
}

// ---- misc -------------------------------------------------------------------

inline Scalar catalan(std::size_t n) {
    Scalar c(1);
    for (std::size_t k = 0; k < n; ++k) {
        c = c * Scalar(static_cast<long>(2 * (2 * k + 1))) / Scalar(static_cast<long>(k + 2));
    }
    return c;
}

inline std::size_t bell(std::size_t n) {
    // Bell triangle
    std::vector<std::size_t> row{1};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::size_t> next{row.back()};
        for (std::size_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

/// Determinants of all leading principal minors, fraction-free enough for
/// small matrices; used as an independent positivity oracle for definite
/// Gram matrices.
inline std::vector<Scalar> leading_minors(const Matrix& a) {
    std::vector<Scalar> out;
    for (std::size_t k = 1; k <= a.rows(); ++k) {
        Matrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = a(i, j);
        Scalar det(1);
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = c;
            while (piv < k && m(piv, c).is_zero()) ++piv;
            if (piv == k) {
                det = Scalar(0);
                break;
            }
            if (piv != c) {
                for (std::size_t j = 0; j < k; ++j) std::swap(m(piv, j), m(c, j));
                det = -det;
            }
            det *= m(c, c);
            for (std::size_t r = c + 1; r < k; ++r) {
                const Scalar f = m(r, c) / m(c, c);
                for (std::size_t j = c; j < k; ++j) m(r, j) -= f * m(c, j);
            }
        }
        out.push_back(det);
    }
    return out;
}

inline NCPolynomial poly(std::size_t d, std::initializer_list<std::pair<Word, Scalar>> terms) {
    NCPolynomial p(d);
    for (const auto& [w, c] : terms) p.add_term(w, c);
    return p;
}

inline NCPolynomial random_poly(Rng& rng, std::size_t d, std::size_t deg, std::size_t nterms) {
    NCPolynomial p(d);
    std::uniform_int_distribution<std::size_t> len(0, deg);
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(d - 1));
    for (std::size_t t = 0; t < nterms; ++t) {
        Word w(len(rng));
        for (auto& l : w) l = letter(rng);
        p.add_term(w, random_rational(rng, -3, 3, 3));
    }
    return p;
}

}  // namespace cfree::test
