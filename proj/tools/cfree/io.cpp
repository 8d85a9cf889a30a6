#include "io.hpp"

#include <algorithm>
#include <sstream>

#include "cfree/error.hpp"

namespace cfree::io {

namespace {

std::size_t g_limit = WordSpace::kDefaultMaxSize;

[[noreturn]] void fail(std::string_view where, std::string_view what) {
    throw ParseError(std::string(where) + ": " + std::string(what));
}

const Json& field(const Json& j, const char* key, std::string_view where) {
    if (!j.is_object()) fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

const Json& array_field(const Json& j, const char* key, std::string_view where) {
    const Json& a = field(j, key, where);
    if (!a.is_array()) fail(where, std::string("field \"") + key + "\" must be an array");
    return a;
}

std::size_t size_field(const Json& j, const char* key, std::string_view where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_unsigned()) fail(where, std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::string text(const Json& v, std::string_view where) {
    if (!v.is_string()) fail(where, "rational parts must be decimal strings");
    return v.get<std::string>();
}

Json scalar_json(const Scalar& s) {
    Json o = Json::object();
    put_scalar(o, s);
    return o;
}

Json scalar_list(const std::vector<Scalar>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(scalar_json(s));
    return a;
}

std::vector<Scalar> scalars_from(const Json& a, std::string_view where) {
    if (!a.is_array()) fail(where, "expected an array of rationals");
    std::vector<Scalar> out;
    for (const auto& x : a) out.push_back(get_scalar(x, where));
    return out;
}

Json index_sets(const std::vector<IndexSet>& sets) {
    Json a = Json::array();
    for (const auto& s : sets) {
        Json b = Json::array();
        for (std::size_t i : s) b.push_back(i + 1);
        a.push_back(std::move(b));
    }
    return a;
}

const char* kind_name(CumulantKind k) {
    switch (k) {
        case CumulantKind::Boolean: return "boolean";
        case CumulantKind::Free: return "free";
        case CumulantKind::TwoState: return "two_state";
    }
    return "";
}

std::string monomial_latex(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += ' ';
        out += "x_{" + std::to_string(w[i] + 1) + "}";
        if (j - i > 1) out += "^{" + std::to_string(j - i) + "}";
        i = j;
    }
    return out;
}

/// Joins signed terms as "a - b + c"; each entry is (coefficient, body).
std::string signed_sum(const std::vector<std::pair<Scalar, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& [c, body] = terms[t];
        const bool neg = c.sign() < 0;
        const Scalar mag = neg ? -c : c;
        if (t == 0) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (body.empty()) {
            out += latex(mag);
        } else {
            if (mag != Scalar(1)) out += latex(mag) + " ";
            out += body;
        }
    }
    return out;
}

std::string word_label(const Word& w) {
    if (w.empty()) return "\\emptyset";
    std::string out = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(w[i] + 1);
    }
    return out + ")";
}

}  // namespace

Json parse(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(source) + ": malformed JSON: " + e.what());
    }
}

void set_coefficient_limit(std::size_t limit) { g_limit = limit; }
std::size_t coefficient_limit() { return g_limit; }

void check_budget(std::size_t d, std::size_t N) {
    if (d == 0) throw PreconditionError("number of variables must be positive");
    if (WordSpace::total_words(d, N) > g_limit) {
        throw PreconditionError("sum_{k<=" + std::to_string(N) + "} " + std::to_string(d) +
                                "^k coefficients exceeds CFREE_MAX_COEFFS = " + std::to_string(g_limit));
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void put_scalar(Json& obj, const Scalar& s) {
    obj["num"] = s.numerator_string();
    obj["den"] = s.denominator_string();
}

Scalar get_scalar(const Json& obj, std::string_view where) {
    const std::string num = text(field(obj, "num", where), where);
    const auto den = obj.find("den");
    return Rational::from_parts(num, den == obj.end() ? std::string("1") : text(*den, where));
}

Json word_json(const Word& w) {
    Json a = Json::array();
    for (Letter l : w) a.push_back(l + 1);
    return a;
}

Word get_word(const Json& j, std::size_t d, std::string_view where) {
    if (!j.is_array()) fail(where, "a word must be an array of 1-based letters");
    Word w;
    for (const auto& l : j) {
        if (!l.is_number_unsigned() || l.get<std::size_t>() == 0 || l.get<std::size_t>() > d) {
            throw IndexOutOfRange(std::string(where) + ": letters must lie in 1.." + std::to_string(d));
        }
        w.push_back(static_cast<Letter>(l.get<std::size_t>() - 1));
    }
    return w;
}

Json to_json(const NCPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [w, c] : p.terms()) {
        Json t{{"word", word_json(w)}};
        put_scalar(t, c);
        terms.push_back(std::move(t));
    }
    return Json{{"d", p.d()}, {"terms", std::move(terms)}};
}

NCPolynomial polynomial_from_json(const Json& j) {
    const std::size_t d = size_field(j, "d", "polynomial");
    if (d == 0) throw PreconditionError("number of variables must be positive");
    NCPolynomial p(d);
    for (const auto& t : array_field(j, "terms", "polynomial")) {
        p.add_term(get_word(field(t, "word", "polynomial term"), d, "polynomial term"), get_scalar(t, "polynomial term"));
    }
    return p;
}

Json to_json(const NCSeries& s) {
    Json terms = Json::array();
    for (const auto& [w, c] : s.nonzero_terms()) {
        Json t{{"word", word_json(w)}};
        put_scalar(t, c);
        terms.push_back(std::move(t));
    }
    return Json{{"d", s.d()}, {"trunc_degree", s.trunc_degree()}, {"terms", std::move(terms)}};
}

namespace {

NCSeries read_series(const Json& j, const char* list, std::string_view where) {
    const std::size_t d = size_field(j, "d", where);
    const std::size_t N = size_field(j, "trunc_degree", where);
    check_budget(d, N);
    NCSeries s(d, N, g_limit);
    for (const auto& t : array_field(j, list, where)) {
        const Word w = get_word(field(t, "word", where), d, where);
        if (w.size() > N) {
            throw TruncationError(std::string(where) + ": word " + to_string(w) + " is longer than trunc_degree " +
                                  std::to_string(N));
        }
        s.set(w, get_scalar(t, where));
    }
    return s;
}

}  // namespace

NCSeries series_from_json(const Json& j) { return read_series(j, "terms", "series"); }

Json to_json(const State& s) {
    Json j = to_json(s.moments());
    Json out{{"d", j["d"]}, {"trunc_degree", j["trunc_degree"]}, {"moments", std::move(j["terms"])}};
    return out;
}

State state_from_json(const Json& j) {
    NCSeries m = read_series(j, "moments", "state");
    bool has_unit = false;
    for (const auto& t : j["moments"]) has_unit = has_unit || (t.contains("word") && t["word"].empty());
    if (!has_unit) m.set(Word{}, Scalar(1));
    return State(std::move(m));
}

Json to_json(const StatePair& p) { return Json{{"phi", to_json(p.phi())}, {"psi", to_json(p.psi())}}; }

StatePair pair_from_json(const Json& j) {
    return {state_from_json(field(j, "phi", "pair")), state_from_json(field(j, "psi", "pair"))};
}

Json to_json(const CumulantSeries& c) {
    Json j = to_json(c.series);
    Json out{{"kind", kind_name(c.kind)}};
    for (auto& [k, v] : j.items()) out[k] = v;
    return out;
}

CumulantSeries cumulants_from_json(const Json& j) {
    const std::string k = text(field(j, "kind", "cumulants"), "cumulants kind");
    CumulantKind kind;
    if (k == "boolean") {
        kind = CumulantKind::Boolean;
    } else if (k == "free") {
        kind = CumulantKind::Free;
    } else if (k == "two_state") {
        kind = CumulantKind::TwoState;
    } else {
        fail("cumulants", "kind must be boolean, free or two_state");
    }
    return {kind, series_from_json(j)};
}

Json to_json(const JacobiParams1D& j) {
    Json out{{"beta", scalar_list(j.beta)}, {"gamma", scalar_list(j.gamma)}};
    out["termination"] = j.termination ? Json(*j.termination) : Json(nullptr);
    return out;
}

JacobiParams1D jacobi_from_json(const Json& j) {
    JacobiParams1D out;
    out.beta = scalars_from(field(j, "beta", "jacobi"), "jacobi beta");
    out.gamma = scalars_from(field(j, "gamma", "jacobi"), "jacobi gamma");
    if (j.contains("termination") && !j["termination"].is_null()) {
        out.termination = size_field(j, "termination", "jacobi");
    }
    return out;
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const MatricialJacobi& m) {
    Json delta = Json::array();
    for (const auto& level : m.delta) {
        Json l = Json::array();
        for (const auto& mat : level) l.push_back(to_json(mat));
        delta.push_back(std::move(l));
    }
    Json gamma = Json::array();
    for (const auto& level : m.gamma) gamma.push_back(scalar_list(level));
    return Json{{"d", m.d}, {"delta", std::move(delta)}, {"gamma", std::move(gamma)}};
}

Json family_json(const PolyFamily& f, std::size_t d, std::size_t degree) {
    Json polys = Json::array();
    for (const auto& [w, p] : f) {
        polys.push_back(Json{{"word", word_json(w)}, {"terms", to_json(p)["terms"]}});
    }
    return Json{{"d", d}, {"degree", degree}, {"polys", std::move(polys)}};
}

PolyFamily family_from_json(const Json& j, std::size_t& d, std::size_t& degree) {
    d = size_field(j, "d", "family");
    degree = size_field(j, "degree", "family");
    check_budget(d, degree);
    PolyFamily f;
    for (const auto& entry : array_field(j, "polys", "family")) {
        const Word w = get_word(field(entry, "word", "family"), d, "family word");
        Json p{{"d", d}, {"terms", array_field(entry, "terms", "family")}};
        if (!f.emplace(w, polynomial_from_json(p)).second) fail("family", "duplicate word " + to_string(w));
    }
    return f;
}

Json to_json(const TestAlgebra& a) {
    return Json{{"points", a.size()}, {"mu_weights", scalar_list(a.mu_weights())}, {"nu_weights", scalar_list(a.nu_weights())}};
}

TestAlgebra algebra_from_json(const Json& j) {
    auto mu = scalars_from(field(j, "mu_weights", "algebra"), "algebra mu_weights");
    auto nu = scalars_from(field(j, "nu_weights", "algebra"), "algebra nu_weights");
    if (j.contains("points") && size_field(j, "points", "algebra") != mu.size()) {
        throw DimensionMismatch("algebra: points does not match the number of weights");
    }
    return {std::move(mu), std::move(nu)};
}

std::vector<AlgebraElement> elements_from_json(const Json& j, std::size_t points) {
    if (!j.is_array()) fail("elements", "expected an array of elements");
    std::vector<AlgebraElement> out;
    for (const auto& e : j) {
        auto f = scalars_from(e, "element");
        if (f.size() != points) {
            throw DimensionMismatch("element has " + std::to_string(f.size()) + " entries, algebra has " +
                                    std::to_string(points) + " points");
        }
        out.push_back(std::move(f));
    }
    return out;
}

Json to_json(const FockVector& v) {
    Json amps = Json::array();
    for (const auto& [t, c] : v.amplitudes()) {
        Json a = Json::array();
        for (std::size_t p : t) a.push_back(p + 1);
        Json e{{"tuple", std::move(a)}};
        put_scalar(e, c);
        amps.push_back(std::move(e));
    }
    return Json{{"depth_limit", v.depth_limit()}, {"amplitudes", std::move(amps)}};
}

Json ks_json(const KSPoly& p, std::size_t n) {
    Json terms = Json::array();
    for (const auto& [key, c] : p) {
        Json t{{"factors", index_sets(key)}};
        put_scalar(t, c);
        terms.push_back(std::move(t));
    }
    return Json{{"n", n}, {"terms", std::move(terms)}};
}

Json to_json(const std::vector<KSExpansionTerm>& terms, std::size_t n) {
    Json out = Json::array();
    for (const auto& t : terms) {
        if (t.coefficient.is_zero()) continue;
        Json s = Json::array();
        for (std::size_t c : t.s) s.push_back(c + 1);
        Json e{{"partition", index_sets(t.pi.classes())}, {"s", std::move(s)}, {"w_args", index_sets(t.w_args)}};
        put_scalar(e, t.coefficient);
        out.push_back(std::move(e));
    }
    return Json{{"n", n}, {"terms", std::move(out)}};
}

Json to_json(const std::vector<SymbolicTerm>& terms, std::size_t n) {
    Json out = Json::array();
    for (const auto& t : terms) {
        Json factors = Json::array();
        for (const auto& f : t.factors) {
            const char* kind = f.kind == SymbolicFactor::Kind::Variable       ? "x"
                               : f.kind == SymbolicFactor::Kind::FreeCumulant ? "free"
                                                                              : "two_state";
            factors.push_back(Json{{"kind", kind}, {"positions", f.positions}});
        }
        out.push_back(Json{{"sign", t.sign}, {"factors", std::move(factors)}});
    }
    return Json{{"n", n}, {"terms", std::move(out)}};
}

std::string latex(const Scalar& s) {
    const bool neg = s.sign() < 0;
    const Scalar mag = neg ? -s : s;
    std::string body = mag.is_integer() ? mag.numerator_string()
                                        : "\\frac{" + mag.numerator_string() + "}{" + mag.denominator_string() + "}";
    return neg ? "-" + body : body;
}

std::string latex(const NCPolynomial& p) {
    std::vector<std::pair<Scalar, std::string>> terms;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) terms.emplace_back(it->second, monomial_latex(it->first));
    return signed_sum(terms);
}

std::string latex(const PolyFamily& f, std::string_view symbol) {
    std::ostringstream os;
    os << "\\begin{aligned}\n";
    for (const auto& [w, p] : f) os << symbol << "_{" << word_label(w) << "} &= " << latex(p) << " \\\\\n";
    os << "\\end{aligned}\n";
    return os.str();
}

std::string latex(const KSPoly& p, std::size_t n) {
    std::vector<std::pair<const std::vector<IndexSet>*, Scalar>> order;
    for (const auto& [key, c] : p) order.emplace_back(&key, c);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first->size() > b.first->size(); });
    std::vector<std::pair<Scalar, std::string>> terms;
    for (const auto& [key, c] : order) {
        std::string body;
        for (const auto& set : *key) {
            if (!body.empty()) body += ' ';
            body += "X(";
            for (std::size_t i = 0; i < set.size(); ++i) body += (i ? " f_{" : "f_{") + std::to_string(set[i] + 1) + "}";
            body += ")";
        }
        terms.emplace_back(c, body);
    }
    std::string args;
    for (std::size_t i = 0; i < n; ++i) args += (i ? ", f_{" : "f_{") + std::to_string(i + 1) + "}";
    return "W(" + args + ") = " + signed_sum(terms) + "\n";
}

std::string latex(const std::vector<SymbolicTerm>& terms, std::size_t n) {
    auto indices = [](const std::vector<std::size_t>& pos) {
        std::string s;
        for (std::size_t p : pos) s += "i_{" + std::to_string(p) + "}";
        return s;
    };
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i + 1;
    std::string out = "A_{" + indices(all) + "} = ";
    for (std::size_t t = 0; t < terms.size(); ++t) {
        out += terms[t].sign < 0 ? (t ? " - " : "-") : (t ? " + " : "");
        std::string body;
        for (const auto& f : terms[t].factors) {
            if (!body.empty()) body += ' ';
            switch (f.kind) {
                case SymbolicFactor::Kind::Variable: body += "x_{" + indices(f.positions) + "}"; break;
                case SymbolicFactor::Kind::FreeCumulant: body += "R^{\\psi}_{" + indices(f.positions) + "}"; break;
                case SymbolicFactor::Kind::TwoStateCumulant:
                    body += "R^{\\varphi,\\psi}_{" + indices(f.positions) + "}";
                    break;
            }
        }
        out += body.empty() ? "1" : body;
    }
    return out + "\n";
}

}  // namespace cfree::io
