#include "cfree/fock.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "cfree/error.hpp"

namespace cfree {

TestAlgebra::TestAlgebra(std::vector<Scalar> mu_weights, std::vector<Scalar> nu_weights)
    : mu_(std::move(mu_weights)), nu_(std::move(nu_weights)) {
    if (mu_.size() != nu_.size()) throw DimensionMismatch("mu and nu weights must have one entry per point");
    if (mu_.empty()) throw PreconditionError("test algebra needs at least one point");
    for (std::size_t p = 0; p < mu_.size(); ++p) {
        if (mu_[p].sign() < 0 || nu_[p].sign() < 0) {
            throw PreconditionError("weights must be nonnegative (point " + std::to_string(p + 1) + ")");
        }
    }
}

void TestAlgebra::check(const AlgebraElement& f) const {
    if (f.size() != size()) {
        throw DimensionMismatch("algebra element has " + std::to_string(f.size()) + " values, algebra has " +
                                std::to_string(size()) + " points");
    }
}

Scalar TestAlgebra::mu(const AlgebraElement& f) const {
    check(f);
    Scalar acc;
    for (std::size_t p = 0; p < f.size(); ++p) acc += mu_[p] * f[p];
    return acc;
}

Scalar TestAlgebra::nu(const AlgebraElement& f) const {
    check(f);
    Scalar acc;
    for (std::size_t p = 0; p < f.size(); ++p) acc += nu_[p] * f[p];
    return acc;
}

AlgebraElement TestAlgebra::point(std::size_t p) const {
    if (p >= size()) throw IndexOutOfRange("point index outside the algebra");
    AlgebraElement e(size());
    e[p] = Scalar(1);
    return e;
}

AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.size() != b.size()) throw DimensionMismatch("algebra elements of different sizes");
    AlgebraElement out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) out[p] = a[p] * b[p];
    return out;
}

AlgebraElement product(const std::vector<AlgebraElement>& fs, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw PreconditionError("empty product in a non-unital algebra");
    AlgebraElement out = fs.at(indices[0]);
    for (std::size_t k = 1; k < indices.size(); ++k) out = product(out, fs.at(indices[k]));
    return out;
}

bool disjoint_support(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.size() != b.size()) throw DimensionMismatch("algebra elements of different sizes");
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (!a[p].is_zero() && !b[p].is_zero()) return false;
    }
    return true;
}

FockVector FockVector::vacuum(std::size_t depth_limit) {
    FockVector v(depth_limit);
    v.add({}, Scalar(1));
    return v;
}

FockVector FockVector::tensor(const std::vector<AlgebraElement>& fs, std::size_t depth_limit) {
    if (fs.size() > depth_limit) throw TruncationError("tensor of depth " + std::to_string(fs.size()) + " exceeds the limit");
    std::map<Tuple, Scalar> cur{{Tuple{}, Scalar(1)}};
    for (const auto& f : fs) {
        std::map<Tuple, Scalar> next;
        for (const auto& [t, c] : cur) {
            for (std::size_t p = 0; p < f.size(); ++p) {
                if (f[p].is_zero()) continue;
                Tuple u = t;
                u.push_back(p);
                next[u] = c * f[p];
            }
        }
        cur = std::move(next);
    }
    FockVector v(depth_limit);
    for (const auto& [t, c] : cur) v.add(t, c);
    return v;
}

Scalar FockVector::amplitude(const Tuple& t) const {
    auto it = amps_.find(t);
    return it == amps_.end() ? Scalar() : it->second;
}

void FockVector::add(const Tuple& t, const Scalar& c) {
    if (c.is_zero()) return;
    if (t.size() > limit_) {
        throw TruncationError("Fock vector depth " + std::to_string(t.size()) + " exceeds the limit " +
                              std::to_string(limit_));
    }
    auto [it, inserted] = amps_.try_emplace(t, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) amps_.erase(it);
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (const auto& [t, c] : o.amps_) add(t, c);
    return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
    for (const auto& [t, c] : o.amps_) add(t, -c);
    return *this;
}

FockVector operator*(const Scalar& s, const FockVector& v) {
    FockVector out(v.limit_);
    for (const auto& [t, c] : v.amps_) out.add(t, s * c);
    return out;
}

FockVector ks_apply(const TestAlgebra& alg, const AlgebraElement& f, const FockVector& v) {
    alg.check(f);
    const Scalar nu_f = alg.nu(f);
    FockVector out(v.depth_limit());
    for (const auto& [t, a] : v.amplitudes()) {
        // creation f ⊗ t
        for (std::size_t q = 0; q < f.size(); ++q) {
            if (f[q].is_zero()) continue;
            FockVector::Tuple u{q};
            u.insert(u.end(), t.begin(), t.end());
            out.add(u, a * f[q]);
        }
        if (t.empty()) {
            out.add(t, a * alg.mu(f));
            continue;
        }
        const std::size_t p = t[0];
        const Scalar& fp = f[p];
        // (f f_1) ⊗ rest and ν[f] f_1 ⊗ rest
        out.add(t, a * (fp + nu_f));
        if (fp.is_zero()) continue;
        const FockVector::Tuple rest(t.begin() + 1, t.end());
        out.add(rest, a * fp * (t.size() == 1 ? alg.mu_weights()[p] : alg.nu_weights()[p]));
    }
    return out;
}

Scalar fock_inner(const TestAlgebra& alg, const FockVector& a, const FockVector& b) {
    Scalar acc;
    for (const auto& [t, c] : a.amplitudes()) {
        const Scalar other = b.amplitude(t);
        if (other.is_zero()) continue;
        Scalar w(1);
        for (std::size_t k = 0; k < t.size(); ++k) {
            w *= k + 1 == t.size() ? alg.mu_weights()[t[k]] : alg.nu_weights()[t[k]];
        }
        acc += c * other * w;
    }
    return acc;
}

namespace {

IndexSet merged(const IndexSet& a, const IndexSet& b) {
    IndexSet out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

void add_to(KSPoly& p, const std::vector<IndexSet>& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = p.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

void add_scaled(KSPoly& p, const KSPoly& q, const Scalar& s) {
    if (s.is_zero()) return;
    for (const auto& [k, c] : q) add_to(p, k, s * c);
}

KSPoly ks_recursive(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, const std::vector<IndexSet>& args) {
    KSPoly out;
    if (args.empty()) {
        out[{}] = Scalar(1);
        return out;
    }
    const IndexSet& first = args[0];
    if (args.size() == 1) {
        out[{first}] = Scalar(1);
        add_to(out, {}, -alg.mu(product(fs, first)));
        return out;
    }
    const std::vector<IndexSet> rest(args.begin() + 1, args.end());
    const KSPoly w_rest = ks_recursive(alg, fs, rest);
    // X(Λ_1) W(Λ_2, …)
    for (const auto& [k, c] : w_rest) {
        std::vector<IndexSet> key{first};
        key.insert(key.end(), k.begin(), k.end());
        add_to(out, key, c);
    }
    std::vector<IndexSet> joined{merged(first, args[1])};
    joined.insert(joined.end(), args.begin() + 2, args.end());
    add_scaled(out, ks_recursive(alg, fs, joined), Scalar(-1));
    const std::vector<IndexSet> tail(args.begin() + 2, args.end());
    const AlgebraElement f12 = product(fs, joined[0]);
    const Scalar c12 = tail.empty() ? alg.mu(f12) : alg.nu(f12);
    add_scaled(out, ks_recursive(alg, fs, tail), -c12);
    add_scaled(out, w_rest, -alg.nu(product(fs, first)));
    return out;
}

KSPoly ks_explicit(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs) {
    const std::size_t n = fs.size();
    KSPoly out;
    for_each_partition(PartitionKind::Interval, n, [&](const SetPartition& pi) {
        const auto& cls = pi.classes();
        std::vector<std::size_t> single;
        for (std::size_t c = 0; c < cls.size(); ++c) {
            if (cls[c].size() == 1) single.push_back(c);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << single.size()); ++mask) {
            std::vector<char> in_s(cls.size(), 0);
            for (std::size_t b = 0; b < single.size(); ++b) {
                if (mask >> b & 1) in_s[single[b]] = 1;
            }
            Scalar coeff(1);
            std::vector<IndexSet> key;
            std::size_t complement = 0;
            for (std::size_t c = 0; c < cls.size(); ++c) {
                if (in_s[c]) {
                    const std::size_t i = cls[c][0];
                    coeff *= i + 1 == n ? alg.mu(fs[i]) : alg.nu(fs[i]);
                } else {
                    ++complement;
                    key.push_back(cls[c]);
                }
            }
            if ((n - complement) % 2 == 1) coeff = -coeff;
            add_to(out, key, coeff);
        }
    });
    return out;
}

}  // namespace

KSPoly ks_poly(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, KSMethod method) {
    if (fs.empty()) throw PreconditionError("Kailath-Segall polynomial needs n >= 1");
    for (const auto& f : fs) alg.check(f);
    if (method == KSMethod::Explicit) return ks_explicit(alg, fs);
    std::vector<IndexSet> args;
    for (std::size_t i = 0; i < fs.size(); ++i) args.push_back({i});
    return ks_recursive(alg, fs, args);
}

FockVector apply(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, const KSPoly& p, const FockVector& v) {
    FockVector out(v.depth_limit());
    for (const auto& [key, c] : p) {
        FockVector w = v;
        for (std::size_t j = key.size(); j-- > 0;) w = ks_apply(alg, product(fs, key[j]), w);
        out += c * w;
    }
    return out;
}

namespace {

Scalar expansion_coefficient(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, const SetPartition& pi,
                             const std::vector<OuterTag>& tags) {
    Scalar coeff(1);
    const auto& cls = pi.classes();
    for (std::size_t c = 0; c < cls.size() && !coeff.is_zero(); ++c) {
        switch (tags[c]) {
            case OuterTag::InS:
                break;
            case OuterTag::Inner:
            case OuterTag::BelowS:
                coeff *= alg.nu(product(fs, cls[c]));
                break;
            case OuterTag::AboveS:
                coeff *= alg.mu(product(fs, cls[c]));
                break;
        }
    }
    return coeff;
}

}  // namespace

Scalar ks_expansion_coefficient(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs, const SetPartition& pi,
                                const std::vector<std::size_t>& s) {
    if (pi.n() != fs.size()) throw DimensionMismatch("partition size does not match the number of elements");
    for (const auto& f : fs) alg.check(f);
    return expansion_coefficient(alg, fs, pi, outer_order_relations(pi, s));
}

std::vector<KSExpansionTerm> ks_monomial_expansion(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs) {
    const std::size_t n = fs.size();
    if (n < 1 || n > 10) throw PreconditionError("monomial expansion supports 1 <= n <= 10");
    for (const auto& f : fs) alg.check(f);
    std::vector<KSExpansionTerm> out;
    for_each_partition(PartitionKind::NonCrossing, n, [&](const SetPartition& pi) {
        const auto roles = classify_classes(pi);
        std::vector<std::size_t> outer;
        for (std::size_t c = 0; c < roles.size(); ++c) {
            if (roles[c] == ClassRole::Outer) outer.push_back(c);
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << outer.size()); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t b = 0; b < outer.size(); ++b) {
                if (mask >> b & 1) s.push_back(outer[b]);
            }
            const auto tags = outer_order_relations(pi, s);
            KSExpansionTerm term{pi, s, expansion_coefficient(alg, fs, pi, tags), {}};
            for (std::size_t c : s) term.w_args.push_back(pi.classes()[c]);
            out.push_back(std::move(term));
        }
    });
    return out;
}

FockVector evaluate_on_vacuum(const std::vector<KSExpansionTerm>& terms, const std::vector<AlgebraElement>& fs,
                              std::size_t depth_limit) {
    FockVector out(depth_limit);
    for (const auto& t : terms) {
        if (t.coefficient.is_zero()) continue;
        std::vector<AlgebraElement> factors;
        for (const auto& b : t.w_args) factors.push_back(product(fs, b));
        out += t.coefficient * FockVector::tensor(factors, depth_limit);
    }
    return out;
}

Scalar vacuum_expectation(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs) {
    FockVector v = FockVector::vacuum(fs.size());
    for (std::size_t j = fs.size(); j-- > 0;) v = ks_apply(alg, fs[j], v);
    return v.vacuum_amplitude();
}

Scalar vacuum_expectation_by_partitions(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs) {
    if (fs.empty()) return Scalar(1);
    Scalar acc;
    for_each_partition(PartitionKind::NonCrossing, fs.size(), [&](const SetPartition& pi) {
        const auto roles = classify_classes(pi);
        Scalar term(1);
        for (std::size_t c = 0; c < pi.size() && !term.is_zero(); ++c) {
            const AlgebraElement f = product(fs, pi.classes()[c]);
            term *= roles[c] == ClassRole::Inner ? alg.nu(f) : alg.mu(f);
        }
        acc += term;
    });
    return acc;
}

StatePair joint_pair_from_fock(const TestAlgebra& alg, const std::vector<AlgebraElement>& elems, std::size_t N) {
    if (elems.empty()) throw PreconditionError("joint distribution of an empty family");
    for (const auto& e : elems) alg.check(e);
    const std::size_t d = elems.size();
    NCSeries phi = NCSeries::one(d, N);
    NCSeries psi = NCSeries::one(d, N);
    const WordSpace& sp = phi.space();

    std::vector<FockVector> prev{FockVector::vacuum(N)};
    for (std::size_t n = 1; n <= N; ++n) {
        std::vector<FockVector> cur;
        cur.reserve(sp.count(n));
        const std::size_t tail = sp.count(n - 1);
        for (std::size_t v = 0; v < sp.count(n); ++v) {
            // word (i, u) with u = v mod tail
            cur.push_back(ks_apply(alg, elems[v / tail], prev[v % tail]));
            phi.at(sp.offset(n) + v) = cur.back().vacuum_amplitude();
        }
        prev = std::move(cur);

        std::vector<std::vector<IndexSet>> parts;
        for_each_partition(PartitionKind::NonCrossing, n, [&](const SetPartition& pi) { parts.push_back(pi.classes()); });
        for (std::size_t v = 0; v < sp.count(n); ++v) {
            const Word w = sp.word(sp.offset(n) + v);
            Scalar acc;
            for (const auto& cls : parts) {
                Scalar term(1);
                for (const auto& c : cls) {
                    AlgebraElement f = elems[w[c[0]]];
                    for (std::size_t k = 1; k < c.size(); ++k) f = product(f, elems[w[c[k]]]);
                    term *= alg.nu(f);
                    if (term.is_zero()) break;
                }
                acc += term;
            }
            psi.at(sp.offset(n) + v) = acc;
        }
    }
    return {State(std::move(phi)), State(std::move(psi))};
}

FockVector apply_polynomial(const TestAlgebra& alg, const std::vector<AlgebraElement>& elems, const NCPolynomial& p,
                            const FockVector& v) {
    if (p.d() != elems.size()) throw DimensionMismatch("polynomial variables do not match the operator list");
    FockVector out(v.depth_limit());
    for (const auto& [w, c] : p.terms()) {
        FockVector x = v;
        for (std::size_t j = w.size(); j-- > 0;) x = ks_apply(alg, elems[w[j]], x);
        out += c * x;
    }
    return out;
}

namespace {

Word identity_word(std::size_t n) {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<Letter>(i);
    return w;
}

}  // namespace

AppellFromKSReport appell_from_ks(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs) {
    const std::size_t n = fs.size();
    if (n == 0) throw PreconditionError("appell_from_ks needs n >= 1");
    const StatePair pair = joint_pair_from_fock(alg, fs, n);
    const AppellFamily fam = cfree_appell(pair, n);
    FockVector lhs = apply_polynomial(alg, fs, fam[identity_word(n)], FockVector::vacuum(n));
    FockVector rhs(n);
    for_each_partition(PartitionKind::Interval, n, [&](const SetPartition& pi) {
        std::vector<AlgebraElement> factors;
        for (const auto& b : pi.classes()) factors.push_back(product(fs, b));
        rhs += FockVector::tensor(factors, n);
    });
    const bool equal = lhs == rhs;
    return {equal, std::move(lhs), std::move(rhs)};
}

namespace {

std::vector<FockVector> test_vectors(const TestAlgebra& alg, std::size_t depth_limit) {
    std::vector<FockVector> out{FockVector::vacuum(depth_limit)};
    for (std::size_t p = 0; p < alg.size(); ++p) {
        FockVector v(depth_limit);
        v.add({p}, Scalar(1));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

bool factorization_check(const TestAlgebra& alg, const std::vector<AlgebraElement>& fs,
                         const std::vector<std::size_t>& block_sizes) {
    const std::size_t n = fs.size();
    std::size_t total = 0;
    for (std::size_t b : block_sizes) {
        if (b == 0) throw PreconditionError("blocks must be nonempty");
        total += b;
    }
    if (total != n || n == 0) throw PreconditionError("block sizes must add up to the number of elements");
    const StatePair pair = joint_pair_from_fock(alg, fs, n);
    const AppellFamily two = cfree_appell(pair, n);
    const AppellFamily free = free_appell(pair.psi(), n);

    NCPolynomial rhs = NCPolynomial::one(n);
    std::size_t start = 0;
    for (std::size_t k = 0; k < block_sizes.size(); ++k) {
        Word w;
        for (std::size_t j = start; j < start + block_sizes[k]; ++j) w.push_back(static_cast<Letter>(j));
        rhs = rhs * (k + 1 == block_sizes.size() ? two[w] : free[w]);
        start += block_sizes[k];
    }
    const NCPolynomial& lhs = two[identity_word(n)];
    for (const auto& v : test_vectors(alg, n + 1)) {
        if (apply_polynomial(alg, fs, lhs, v) != apply_polynomial(alg, fs, rhs, v)) return false;
    }
    return true;
}

namespace {

NCPolynomial embed_variable(const NCPolynomial& p, std::size_t d, Letter i) {
    if (p.d() != 1) throw PreconditionError("factor polynomials must be in one variable");
    NCPolynomial out(d);
    for (const auto& [w, c] : p.terms()) out.add_term(Word(w.size(), i), c);
    return out;
}

}  // namespace

bool endpoint_check(const TestAlgebra& alg, const std::vector<AlgebraElement>& elems,
                    const std::vector<std::pair<std::size_t, NCPolynomial>>& factors) {
    const std::size_t d = elems.size();
    const std::size_t n = factors.size();
    if (n == 0) throw PreconditionError("endpoint check needs at least one factor");
    for (std::size_t j = 0; j < n; ++j) {
        if (factors[j].first >= d) throw IndexOutOfRange("factor refers to a missing element");
        if (j + 1 < n) {
            const std::size_t a = factors[j].first;
            const std::size_t b = factors[j + 1].first;
            if (a == b) throw PreconditionError("consecutive factors must come from different elements");
            if (!disjoint_support(elems[a], elems[b])) {
                throw PreconditionError("consecutive factors must come from disjointly supported elements");
            }
        }
    }
    std::vector<NCPolynomial> a;
    std::size_t depth = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& [g, p] = factors[j];
        const std::size_t deg = static_cast<std::size_t>(std::max(p.degree(), 0));
        depth += deg;
        NCPolynomial q = embed_variable(p, d, static_cast<Letter>(g));
        if (j > 0 && j + 1 < n) {
            const Scalar mean = deg > 0 ? joint_pair_from_fock(alg, {elems[g]}, deg).psi()(p) : p.coefficient({});
            q -= NCPolynomial::constant(d, mean);
        }
        a.push_back(std::move(q));
    }
    auto phi = [&](const NCPolynomial& p, std::size_t depth_limit) {
        return apply_polynomial(alg, elems, p, FockVector::vacuum(depth_limit)).vacuum_amplitude();
    };
    NCPolynomial prod = NCPolynomial::one(d);
    Scalar factored(1);
    for (const auto& q : a) {
        prod = prod * q;
        factored *= phi(q, std::max(q.degree(), 0));
    }
    return phi(prod, depth) == factored;
}

bool martingale_check(const TestAlgebra& alg, const std::vector<AlgebraElement>& b,
                      const std::vector<AlgebraElement>& y, std::size_t x_degree) {
    const std::size_t n = b.size();
    if (n == 0 || y.size() != n) throw PreconditionError("martingale check needs equally many b and y elements");
    for (const auto& yi : y) {
        for (const auto& bj : b) {
            if (!disjoint_support(yi, bj)) throw PreconditionError("y elements must be disjoint in support from b elements");
        }
    }
    std::vector<AlgebraElement> z;
    for (std::size_t i = 0; i < n; ++i) {
        AlgebraElement zi = b[i];
        for (std::size_t p = 0; p < zi.size(); ++p) zi[p] += y[i][p];
        z.push_back(std::move(zi));
    }
    const Word w = identity_word(n);
    const std::size_t depth = n + x_degree;
    const FockVector vz =
        apply_polynomial(alg, z, cfree_appell(joint_pair_from_fock(alg, z, n), n)[w], FockVector::vacuum(depth));
    const FockVector vb =
        apply_polynomial(alg, b, cfree_appell(joint_pair_from_fock(alg, b, n), n)[w], FockVector::vacuum(depth));
    for (const Word& x : WordSpace(n, x_degree).words_up_to(x_degree)) {
        const NCPolynomial mono = NCPolynomial::monomial(n, x);
        if (apply_polynomial(alg, b, mono, vz).vacuum_amplitude() != apply_polynomial(alg, b, mono, vb).vacuum_amplitude()) {
            return false;
        }
    }
    return true;
}

namespace {

TestAlgebra grid_algebra(const TestAlgebra& base, std::size_t cells) {
    if (cells == 0) throw PreconditionError("time grid needs at least one cell");
    std::vector<Scalar> mu;
    std::vector<Scalar> nu;
    const Scalar w = Scalar(1) / Scalar(static_cast<long>(cells));
    for (std::size_t p = 0; p < base.size(); ++p) {
        for (std::size_t c = 0; c < cells; ++c) {
            mu.push_back(base.mu_weights()[p] * w);
            nu.push_back(base.nu_weights()[p] * w);
        }
    }
    return {std::move(mu), std::move(nu)};
}

}  // namespace

TimeGrid::TimeGrid(TestAlgebra base, std::size_t cells)
    : base_(std::move(base)), cells_(cells), alg_(grid_algebra(base_, cells)) {}

std::size_t TimeGrid::cell_count(const Scalar& t) const {
    const Scalar scaled = t * Scalar(static_cast<long>(cells_));
    if (!scaled.is_integer() || scaled.sign() < 0 || scaled > Scalar(static_cast<long>(cells_))) {
        throw PreconditionError("time " + t.to_string() + " is not a grid point");
    }
    return static_cast<std::size_t>(scaled.raw().get_num().get_ui());
}

AlgebraElement TimeGrid::embed(const AlgebraElement& f, const Scalar& t) const {
    base_.check(f);
    const std::size_t upto = cell_count(t);
    AlgebraElement out(alg_.size());
    for (std::size_t p = 0; p < f.size(); ++p) {
        for (std::size_t c = 0; c < upto; ++c) out[p * cells_ + c] = f[p];
    }
    return out;
}

FockVector conditional_expectation(const TimeGrid& grid, const FockVector& v, const Scalar& t) {
    const std::size_t upto = grid.cell_count(t);
    FockVector out(v.depth_limit());
    for (const auto& [tuple, c] : v.amplitudes()) {
        const bool inside =
            std::all_of(tuple.begin(), tuple.end(), [&](std::size_t idx) { return idx % grid.cells() < upto; });
        if (inside) out.add(tuple, c);
    }
    return out;
}

bool process_martingale_check(const TimeGrid& grid, const std::vector<AlgebraElement>& fs, const Word& u,
                              const Scalar& s, const Scalar& t) {
    if (s > t) throw PreconditionError("process martingale check needs s <= t");
    const std::size_t n = u.size();
    const std::size_t d = fs.size();
    for (Letter l : u) {
        if (l >= d) throw IndexOutOfRange("word letter outside the element list");
    }
    const TestAlgebra& alg = grid.algebra();
    auto appell_vector = [&](const Scalar& time) {
        std::vector<AlgebraElement> x;
        for (const auto& f : fs) x.push_back(grid.embed(f, time));
        const StatePair pair = joint_pair_from_fock(alg, x, std::max<std::size_t>(n, 1));
        return apply_polynomial(alg, x, cfree_appell(pair, n)[u], FockVector::vacuum(n));
    };
    const FockVector at_t = appell_vector(t);
    const FockVector at_s = appell_vector(s);
    if (conditional_expectation(grid, at_t, s) != at_s) return false;

    const std::size_t upto = grid.cell_count(s);
    for (std::size_t p = 0; p < alg.size(); ++p) {
        if (p % grid.cells() >= upto) continue;
        FockVector e(n);
        if (n == 0) break;
        e.add({p}, Scalar(1));
        if (fock_inner(alg, e, at_t) != fock_inner(alg, e, at_s)) return false;
    }
    return fock_inner(alg, FockVector::vacuum(n), at_t) == fock_inner(alg, FockVector::vacuum(n), at_s);
}

std::vector<NCPolynomial> limit_example_recursions(LimitKind kind, const Scalar& a, const Scalar& b, std::size_t k) {
    const NCPolynomial x = NCPolynomial::variable(1, 0);
    const NCPolynomial one = NCPolynomial::one(1);
    std::vector<NCPolynomial> w{one};
    if (k == 0) return w;
    if (kind == LimitKind::Gaussian) {
        w.push_back(x);
        if (k >= 2) w.push_back(x * w[1] - a * one);
        for (std::size_t n = 2; n < k; ++n) w.push_back(x * w[n] - b * w[n - 1]);
    } else {
        const Scalar shift = Scalar(1) + b;
        w.push_back(x - a * one);
        if (k >= 2) w.push_back(x * w[1] - shift * w[1] - a * one);
        for (std::size_t n = 2; n < k; ++n) w.push_back(x * w[n] - shift * w[n] - b * w[n - 1]);
    }
    return w;
}

JacobiParams1D limit_example_jacobi(LimitKind kind, const Scalar& a, const Scalar& b, std::size_t k) {
    JacobiParams1D j;
    for (std::size_t n = 0; n < k; ++n) {
        if (kind == LimitKind::Gaussian) {
            j.beta.push_back(Scalar());
        } else {
            j.beta.push_back(n == 0 ? a : Scalar(1) + b);
        }
        const Scalar g = n == 0 ? a : b;
        if (g.is_zero()) {
            j.termination = n + 1;
            break;
        }
        if (n + 1 < k) j.gamma.push_back(g);
    }
    return j;
}

}  // namespace cfree
