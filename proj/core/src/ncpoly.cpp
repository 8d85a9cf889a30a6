#include "cfree/ncpoly.hpp"

#include "cfree/error.hpp"

namespace cfree {

namespace {

void check_letters(std::size_t d, const Word& w) {
    for (Letter l : w) {
        if (l >= d) throw IndexOutOfRange("letter " + std::to_string(l + 1) + " outside 1.." + std::to_string(d));
    }
}

void require_same_d(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": variable counts differ (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
    }
}

void require_index(Letter i, std::size_t d) {
    if (i >= d) throw IndexOutOfRange("variable index " + std::to_string(i + 1) + " outside 1.." + std::to_string(d));
}

}  // namespace

NCPolynomial::NCPolynomial(std::size_t d, TermMap terms) : d_(d) {
    for (auto& [w, c] : terms) add_term(w, c);
}

NCPolynomial NCPolynomial::constant(std::size_t d, const Scalar& c) {
    NCPolynomial p(d);
    p.add_term(Word{}, c);
    return p;
}

NCPolynomial NCPolynomial::variable(std::size_t d, Letter i) {
    require_index(i, d);
    return monomial(d, Word{i});
}

NCPolynomial NCPolynomial::monomial(std::size_t d, const Word& w, const Scalar& c) {
    NCPolynomial p(d);
    p.add_term(w, c);
    return p;
}

int NCPolynomial::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.size());
}

Scalar NCPolynomial::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
}

void NCPolynomial::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    check_letters(d_, w);
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

NCPolynomial NCPolynomial::adjoint() const {
    NCPolynomial out(d_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(reversed(w), c);
    return out;
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
    require_same_d(d_, o.d_, "polynomial sum");
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
    require_same_d(d_, o.d_, "polynomial difference");
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
    require_same_d(a.d_, b.d_, "polynomial product");
    NCPolynomial out(a.d_);
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) out.add_term(concat(wa, wb), ca * cb);
    }
    return out;
}

TensorPolynomial TensorPolynomial::tensor(const NCPolynomial& p, const NCPolynomial& q) {
    require_same_d(p.d(), q.d(), "tensor product");
    TensorPolynomial t(p.d());
    for (const auto& [wp, cp] : p.terms()) {
        for (const auto& [wq, cq] : q.terms()) t.add_term(wp, wq, cp * cq);
    }
    return t;
}

void TensorPolynomial::add_term(const Word& left, const Word& right, const Scalar& c) {
    if (c.is_zero()) return;
    check_letters(d_, left);
    check_letters(d_, right);
    auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TensorPolynomial& TensorPolynomial::operator+=(const TensorPolynomial& o) {
    require_same_d(d_, o.d_, "tensor sum");
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

TensorPolynomial& TensorPolynomial::operator-=(const TensorPolynomial& o) {
    require_same_d(d_, o.d_, "tensor difference");
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
}

TensorPolynomial operator*(const TensorPolynomial& a, const TensorPolynomial& b) {
    require_same_d(a.d_, b.d_, "tensor product");
    TensorPolynomial out(a.d_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            out.add_term(concat(ka.first, kb.first), concat(ka.second, kb.second), ca * cb);
        }
    }
    return out;
}

TensorPolynomial diff_quotient(Letter i, const NCPolynomial& p) {
    require_index(i, p.d());
    TensorPolynomial out(p.d());
    for (const auto& [w, c] : p.terms()) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] == i) out.add_term(slice(w, 0, j), slice(w, j + 1, w.size()), c);
        }
    }
    return out;
}

NCPolynomial left_derivative(Letter i, const NCPolynomial& p) {
    require_index(i, p.d());
    NCPolynomial out(p.d());
    for (const auto& [w, c] : p.terms()) {
        if (!w.empty() && w[0] == i) out.add_term(slice(w, 1, w.size()), c);
    }
    return out;
}

NCPolynomial apply_state_partial(Side side, const NCSeries& moments, const TensorPolynomial& t) {
    require_same_d(moments.d(), t.d(), "partial state application");
    NCPolynomial out(t.d());
    for (const auto& [key, c] : t.terms()) {
        const Word& evaluated = side == Side::Left ? key.first : key.second;
        const Word& kept = side == Side::Left ? key.second : key.first;
        if (evaluated.size() > moments.trunc_degree()) {
            throw TruncationError("state truncation " + std::to_string(moments.trunc_degree()) +
                                  " exceeded by tensor factor of degree " + std::to_string(evaluated.size()));
        }
        const Scalar& m = moments[evaluated];
        if (!m.is_zero()) out.add_term(kept, c * m);
    }
    return out;
}

Scalar apply_functional(const NCSeries& moments, const NCPolynomial& p) {
    require_same_d(moments.d(), p.d(), "functional application");
    Scalar out;
    for (const auto& [w, c] : p.terms()) {
        if (w.size() > moments.trunc_degree()) {
            throw TruncationError("state truncation " + std::to_string(moments.trunc_degree()) +
                                  " exceeded by monomial of degree " + std::to_string(w.size()));
        }
        const Scalar& m = moments[w];
        if (!m.is_zero()) out += c * m;
    }
    return out;
}

Matrix evaluate(const NCPolynomial& p, std::span<const Matrix> ops) {
    if (ops.size() != p.d()) {
        throw DimensionMismatch("evaluate: expected " + std::to_string(p.d()) + " operators, got " +
                                std::to_string(ops.size()));
    }
    if (ops.empty()) throw DimensionMismatch("evaluate: no operators");
    const std::size_t n = ops[0].rows();
    for (const auto& m : ops) {
        if (m.rows() != n || m.cols() != n) throw DimensionMismatch("evaluate: operators must share one square shape");
    }
    Matrix out(n, n);
    for (const auto& [w, c] : p.terms()) {
        Matrix prod = Matrix::identity(n);
        for (Letter l : w) prod = prod * ops[l];
        out = out + c * prod;
    }
    return out;
}

}  // namespace cfree
