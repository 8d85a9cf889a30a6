#include "cfree/rational.hpp"

#include <ostream>

#include "cfree/error.hpp"

namespace cfree {

namespace {

mpz_class parse_integer(std::string_view text) {
    if (text.empty()) throw ParseError("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw ParseError("malformed integer literal '" + std::string(text) + "'");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw ParseError("malformed integer literal '" + std::string(text) + "'");
        }
    }
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return mpz_class(s, 10);
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::from_parts(std::string_view num, std::string_view den) {
    mpz_class n = parse_integer(num);
    mpz_class d = parse_integer(den);
    if (d == 0) throw ParseError("zero denominator in rational literal");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_parts(text, "1");
    return from_parts(text.substr(0, slash), text.substr(slash + 1));
}

bool Rational::is_integer() const { return v_.get_den() == 1; }

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

bool exact_sqrt(const Rational& r, Rational& root) {
    if (r.sign() < 0) return false;
    const mpz_class& num = r.raw().get_num();
    const mpz_class& den = r.raw().get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    root = Rational(mpq_class(sn, sd));
    return true;
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational out(1);
    for (unsigned i = 0; i < exponent; ++i) out *= base;
    return out;
}

}  // namespace cfree
