#include "cfree/ncseries.hpp"

#include <functional>

#include "cfree/error.hpp"

namespace cfree {

namespace {

void require_compatible(const NCSeries& a, const NCSeries& b, const char* what) {
    if (a.d() != b.d()) {
        throw DimensionMismatch(std::string(what) + ": variable counts differ (" + std::to_string(a.d()) + " vs " +
                                std::to_string(b.d()) + ")");
    }
    if (a.trunc_degree() != b.trunc_degree()) {
        throw TruncationError(std::string(what) + ": truncation degrees differ (" +
                              std::to_string(a.trunc_degree()) + " vs " + std::to_string(b.trunc_degree()) + ")");
    }
}

}  // namespace

NCSeries::NCSeries(std::size_t d, std::size_t N, std::size_t max_size) : space_(d, N, max_size), coeffs_(space_.size()) {}

NCSeries NCSeries::constant(std::size_t d, std::size_t N, const Scalar& c) {
    NCSeries s(d, N);
    s.coeffs_[0] = c;
    return s;
}

NCSeries NCSeries::variable(std::size_t d, std::size_t N, Letter i) {
    NCSeries s(d, N);
    if (N >= 1) s.set(Word{i}, Scalar(1));
    return s;
}

NCSeries NCSeries::from_terms(std::size_t d, std::size_t N, const std::map<Word, Scalar, GradedLex>& terms) {
    NCSeries s(d, N);
    for (const auto& [w, c] : terms) s.set(w, c);
    return s;
}

bool NCSeries::is_zero() const {
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) return false;
    }
    return true;
}

bool NCSeries::is_constant() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        if (!coeffs_[k].is_zero()) return false;
    }
    return true;
}

NCSeries NCSeries::truncated(std::size_t n) const {
    if (n > trunc_degree()) throw TruncationError("cannot truncate to a higher degree; use extended()");
    NCSeries out(d(), n);
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
}

NCSeries NCSeries::extended(std::size_t n) const {
    if (n < trunc_degree()) throw TruncationError("cannot extend to a lower degree; use truncated()");
    NCSeries out(d(), n);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
}

NCSeries NCSeries::homogeneous_part(std::size_t n) const {
    NCSeries out(d(), trunc_degree());
    if (n > trunc_degree()) return out;
    for (std::size_t k = space_.offset(n); k < space_.offset(n) + space_.count(n); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
}

NCSeries NCSeries::reversed() const {
    NCSeries out(d(), trunc_degree());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        out.coeffs_[space_.index(cfree::reversed(space_.word(k)))] = coeffs_[k];
    }
    return out;
}

NCSeries NCSeries::left_derivative(Letter i) const {
    if (i >= d()) throw IndexOutOfRange("left derivative index " + std::to_string(i + 1) + " outside 1.." + std::to_string(d()));
    if (trunc_degree() == 0) throw TruncationError("left derivative of a degree-0 truncation is undefined");
    NCSeries out(d(), trunc_degree() - 1);
    // D_i z_u = δ_{i,u(1)} z_{u(2)…}: coefficient of v is the coefficient of (i, v).
    for (std::size_t n = 0; n + 1 <= trunc_degree(); ++n) {
        const std::size_t cnt = space_.count(n);
        for (std::size_t v = 0; v < cnt; ++v) {
            out.coeffs_[space_.offset(n) + v] = coeffs_[space_.offset(n + 1) + i * cnt + v];
        }
    }
    return out;
}

std::vector<std::pair<Word, Scalar>> NCSeries::nonzero_terms() const {
    std::vector<std::pair<Word, Scalar>> out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!coeffs_[k].is_zero()) out.emplace_back(space_.word(k), coeffs_[k]);
    }
    return out;
}

NCSeries& NCSeries::operator+=(const NCSeries& o) {
    require_compatible(*this, o, "series sum");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!o.coeffs_[k].is_zero()) coeffs_[k] += o.coeffs_[k];
    }
    return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& o) {
    require_compatible(*this, o, "series difference");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!o.coeffs_[k].is_zero()) coeffs_[k] -= o.coeffs_[k];
    }
    return *this;
}

NCSeries& NCSeries::operator*=(const Scalar& s) {
    for (auto& c : coeffs_) {
        if (!c.is_zero()) c *= s;
    }
    return *this;
}

NCSeries operator*(const NCSeries& a, const NCSeries& b) {
    require_compatible(a, b, "series product");
    const WordSpace& sp = a.space_;
    const std::size_t N = sp.trunc_degree();
    NCSeries c(a.d(), N);
    for (std::size_t ka = 0; ka <= N; ++ka) {
        for (std::size_t va = 0; va < sp.count(ka); ++va) {
            const Scalar& x = a.coeffs_[sp.offset(ka) + va];
            if (x.is_zero()) continue;
            for (std::size_t kb = 0; ka + kb <= N; ++kb) {
                const std::size_t cnt = sp.count(kb);
                const std::size_t base = sp.offset(ka + kb) + va * cnt;
                for (std::size_t vb = 0; vb < cnt; ++vb) {
                    const Scalar& y = b.coeffs_[sp.offset(kb) + vb];
                    if (!y.is_zero()) c.coeffs_[base + vb] += x * y;
                }
            }
        }
    }
    return c;
}

bool operator==(const NCSeries& a, const NCSeries& b) {
    return a.d() == b.d() && a.trunc_degree() == b.trunc_degree() && a.coeffs_ == b.coeffs_;
}

NCSeries inverse(const NCSeries& s) {
    const Scalar& c0 = s.constant_term();
    if (c0.is_zero()) throw PreconditionError("series inverse requires a nonzero constant term");
    const WordSpace& sp = s.space();
    const std::size_t N = s.trunc_degree();
    NCSeries t(s.d(), N);
    const Scalar inv0 = Scalar(1) / c0;
    t.at(0) = inv0;
    // (S T)[w] = 0 for w ≠ ∅ gives T[w] = -S0^{-1} Σ_{w = uv, u ≠ ∅} S[u] T[v].
    for (std::size_t n = 1; n <= N; ++n) {
        for (std::size_t v = 0; v < sp.count(n); ++v) {
            Scalar acc;
            for (std::size_t k = 1; k <= n; ++k) {
                const std::size_t tail = sp.count(n - k);
                const Scalar& su = s.at(sp.offset(k) + v / tail);
                if (su.is_zero()) continue;
                const Scalar& tv = t.at(sp.offset(n - k) + v % tail);
                if (!tv.is_zero()) acc += su * tv;
            }
            if (!acc.is_zero()) t.at(sp.offset(n) + v) = -(inv0 * acc);
        }
    }
    return t;
}

namespace {

// w_i · F, where F has truncation r-1 and the result truncation r.
NCSeries shift_left(const NCSeries& f, Letter i, std::size_t r, std::size_t d) {
    NCSeries g(d, r);
    const WordSpace& fs = f.space();
    const WordSpace& gs = g.space();
    for (std::size_t n = 0; n + 1 <= r; ++n) {
        const std::size_t cnt = fs.count(n);
        for (std::size_t v = 0; v < cnt; ++v) {
            const Scalar& c = f.at(fs.offset(n) + v);
            if (!c.is_zero()) g.at(gs.offset(n + 1) + i * cnt + v) = c;
        }
    }
    return g;
}

NCSeries substitute_left(const NCSeries& s, const NCSeries& t) {
    const std::size_t d = s.d();
    const std::size_t N = s.trunc_degree();
    const WordSpace& sp = s.space();

    // subtree_nonzero[v]: some coefficient of a word with prefix v is nonzero.
    std::vector<char> subtree_nonzero(sp.size(), 0);
    for (std::size_t idx = sp.size(); idx-- > 0;) {
        if (!s.at(idx).is_zero()) subtree_nonzero[idx] = 1;
        if (!subtree_nonzero[idx]) continue;
        // propagate to parent (drop the last letter)
        const std::size_t n = sp.degree(idx);
        if (n == 0) continue;
        const std::size_t parent = sp.offset(n - 1) + (idx - sp.offset(n)) / d;
        subtree_nonzero[parent] = 1;
    }

    std::vector<NCSeries> t_trunc;
    t_trunc.reserve(N + 1);
    for (std::size_t r = 0; r <= N; ++r) t_trunc.push_back(t.truncated(r));

    // F_v = S[v] + Σ_i T·w_i·F_{(v,i)}, with F_v needed to degree r = N - |v|.
    std::function<NCSeries(std::size_t, std::size_t, std::size_t)> eval =
        [&](std::size_t n, std::size_t val, std::size_t r) -> NCSeries {
        NCSeries f = NCSeries::constant(d, r, s.at(sp.offset(n) + val));
        if (r == 0) return f;
        for (Letter i = 0; i < d; ++i) {
            const std::size_t child_val = val * d + i;
            if (!subtree_nonzero[sp.offset(n + 1) + child_val]) continue;
            NCSeries child = eval(n + 1, child_val, r - 1);
            f += t_trunc[r] * shift_left(child, i, r, d);
        }
        return f;
    };
    if (!subtree_nonzero[0]) return NCSeries(d, N);
    return eval(0, 0, N);
}

}  // namespace

NCSeries substitute_sided(const NCSeries& s, const NCSeries& t, Side side) {
    require_compatible(s, t, "substitution");
    if (side == Side::Left) return substitute_left(s, t);
    // S(w T) = rev( rev(S)(rev(T) w) ) since reversal is an anti-automorphism.
    return substitute_left(s.reversed(), t.reversed()).reversed();
}

namespace {

Side side_of(FixedPointVariant v) { return v == FixedPointVariant::RwM ? Side::Right : Side::Left; }

void copy_degree(const NCSeries& from, NCSeries& to, std::size_t n) {
    const WordSpace& fs = from.space();
    const WordSpace& ts = to.space();
    for (std::size_t v = 0; v < fs.count(n); ++v) to.at(ts.offset(n) + v) = from.at(fs.offset(n) + v);
}

}  // namespace

NCSeries solve_moment_series(const NCSeries& r, FixedPointVariant variant) {
    if (!r.constant_term().is_zero()) throw PreconditionError("cumulant series must have zero constant term");
    const std::size_t N = r.trunc_degree();
    NCSeries m(r.d(), N);
    for (std::size_t n = 1; n <= N; ++n) {
        NCSeries one_plus_m = m.truncated(n);
        one_plus_m.at(0) += Scalar(1);
        const NCSeries sub = substitute_sided(r.truncated(n), one_plus_m, side_of(variant));
        copy_degree(sub, m, n);
    }
    return m;
}

NCSeries solve_free_cumulant_series(const NCSeries& m, FixedPointVariant variant) {
    if (!m.constant_term().is_zero()) throw PreconditionError("moment series must have zero constant term");
    const std::size_t N = m.trunc_degree();
    NCSeries one_plus_m = m;
    one_plus_m.at(0) += Scalar(1);
    NCSeries r(m.d(), N);
    const WordSpace& sp = r.space();
    for (std::size_t n = 1; n <= N; ++n) {
        // R_n = M_n - [R_{<n}(substituted)]_n
        const NCSeries sub = substitute_sided(r.truncated(n), one_plus_m.truncated(n), side_of(variant));
        for (std::size_t v = 0; v < sp.count(n); ++v) {
            const std::size_t idx = sp.offset(n) + v;
            r.at(idx) = m.at(idx) - sub.at(idx);
        }
    }
    return r;
}

}  // namespace cfree
