#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "cfree/error.hpp"
#include "io.hpp"

using namespace cfree;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input, output, pair, phi, psi, mu, nu, family, params, algebra, elements, a, b;
    std::string kind, method, format = "json", mode, variant = "rwm", check;
    std::optional<std::size_t> degree, vars;
    std::optional<std::string> power;
    std::vector<std::size_t> blocks;
    bool symbolic = false, expansion = false, strip_params = false, unstrip_params = false;
};

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json load(const std::string& path, const char* flag) {
    if (path.empty() && std::string(flag) != "--input") throw UsageError(std::string(flag) + " is required");
    return io::parse(slurp(path), path.empty() ? "stdin" : path);
}

std::size_t need_degree(const Options& o) {
    if (!o.degree) throw UsageError("--degree is required");
    return *o.degree;
}

void check_vars(const Options& o, std::size_t d) {
    if (o.vars && *o.vars != d) {
        throw DimensionMismatch("input has " + std::to_string(d) + " variables, --vars says " + std::to_string(*o.vars));
    }
}

State load_state(const Options& o, const std::string& path, const char* flag) {
    State s = io::state_from_json(load(path, flag));
    check_vars(o, s.d());
    return s;
}

StatePair load_pair(const Options& o) {
    StatePair p = io::pair_from_json(load(o.pair.empty() ? o.input : o.pair, "--pair"));
    check_vars(o, p.d());
    return p;
}

std::string emit(const Json& j) { return io::dump(j); }

// ---- subcommands -----------------------------------------------------------

std::string run_cumulants(const Options& o) {
    const Json in = load(o.input, "--input");
    if (o.kind == "two-state") {
        const StatePair pair = io::pair_from_json(in);
        check_vars(o, pair.d());
        return emit(io::to_json(o.method == "genfun" ? two_state_cumulants_via_generating_function(pair)
                                                     : two_state_cumulants(pair)));
    }
    const State s = io::state_from_json(in);
    check_vars(o, s.d());
    if (o.kind == "boolean") return emit(io::to_json(boolean_cumulants(s)));
    return emit(io::to_json(free_cumulants(s, o.variant == "rmw" ? FixedPointVariant::RMw : FixedPointVariant::RwM)));
}

std::string run_moments(const Options& o) {
    const CumulantSeries c = io::cumulants_from_json(load(o.input, "--input"));
    check_vars(o, c.series.d());
    if (c.kind == CumulantKind::TwoState) {
        const State psi = load_state(o, o.psi, "--psi");
        return emit(io::to_json(moments_from_cumulants(c, &psi)));
    }
    return emit(io::to_json(moments_from_cumulants(c)));
}

std::string run_convolve(const Options& o) {
    if (o.kind == "cfree") {
        std::vector<StatePair> pairs{io::pair_from_json(load(o.a, "--a")), io::pair_from_json(load(o.b, "--b"))};
        return emit(io::to_json(cfree_product(pairs)));
    }
    const State a = load_state(o, o.a, "--a");
    if (o.power) {
        if (o.kind != "boolean") throw UsageError("--power is only defined for --kind boolean");
        return emit(io::to_json(boolean_power(a, Rational::parse(*o.power))));
    }
    const State b = load_state(o, o.b, "--b");
    return emit(io::to_json(convolve(o.kind == "boolean" ? ConvolutionKind::Boolean : ConvolutionKind::Free, a, b)));
}

std::string run_phi(const Options& o) {
    const State psi = load_state(o, o.input, "--input");
    if (!o.degree) return emit(io::to_json(phi_map(psi)));
    io::check_budget(psi.d(), *o.degree);
    return emit(io::to_json(phi_map(psi, *o.degree)));
}

std::string run_jacobi(const Options& o) {
    if (!o.params.empty()) {
        JacobiParams1D j = io::jacobi_from_json(load(o.params, "--params"));
        if (o.strip_params) return emit(io::to_json(strip(j)));
        if (o.unstrip_params) return emit(io::to_json(unstrip(j)));
        const std::size_t N = need_degree(o);
        io::check_budget(1, N);
        return emit(io::to_json(moments_from_jacobi(j, N)));
    }
    const State s = load_state(o, o.input, "--input");
    if (s.d() == 1) {
        const JacobiParams1D j = jacobi_from_moments(s);
        return emit(io::to_json(o.strip_params ? strip(j) : j));
    }
    const std::size_t k = o.degree ? *o.degree : (s.trunc_degree() >= 2 ? s.trunc_degree() / 2 - 1 : 0);
    return emit(io::to_json(matricial_params(s, k)));
}

std::string family_out(const Options& o, const PolyFamily& f, std::size_t d, std::size_t k, const char* symbol) {
    if (o.format == "latex") return io::latex(f, symbol);
    return emit(io::family_json(f, d, k));
}

std::string run_mops(const Options& o) {
    const State s = load_state(o, o.input, "--input");
    const std::size_t k = need_degree(o);
    const auto fam = mops(s, k);
    if (!fam) {
        throw PreconditionError("the state has no monic orthogonal polynomial system up to degree " + std::to_string(k));
    }
    return family_out(o, *fam, s.d(), k, "P");
}

std::string run_second_kind(const Options& o) {
    const State s = load_state(o, o.input, "--input");
    PolyFamily p;
    std::size_t k = 0;
    if (!o.family.empty()) {
        std::size_t d = 0;
        p = io::family_from_json(load(o.family, "--family"), d, k);
        if (d != s.d()) throw DimensionMismatch("family and state have different numbers of variables");
    } else {
        k = need_degree(o);
        auto fam = mops(s, k);
        if (!fam) throw PreconditionError("the state has no monic orthogonal polynomial system up to degree " + std::to_string(k));
        p = std::move(*fam);
    }
    return family_out(o, second_kind(p, s), s.d(), k == 0 ? 0 : k - 1, "Q");
}

std::string run_appell(const Options& o) {
    const std::size_t k = need_degree(o);
    if (o.symbolic) {
        const auto terms = symbolic_cfree_appell(k);
        return o.format == "latex" ? io::latex(terms, k) : emit(io::to_json(terms, k));
    }
    AppellFamily fam = [&] {
        if (o.kind == "free" || o.kind == "boolean") {
            const State s = load_state(o, o.input, "--input");
            io::check_budget(s.d(), k);
            return o.kind == "free" ? free_appell(s, k) : boolean_appell(s, k);
        }
        const StatePair pair = load_pair(o);
        io::check_budget(pair.d(), k);
        const AppellMethod m = o.method == "recursion" ? AppellMethod::Recursion
                               : o.method == "explicit" ? AppellMethod::Explicit
                                                        : AppellMethod::GenFun;
        return cfree_appell(pair, k, m);
    }();
    return family_out(o, fam.polys, fam.pair.d(), k, "A");
}

TestAlgebra load_algebra(const Options& o) { return io::algebra_from_json(load(o.algebra, "--algebra")); }

std::string run_ks(const Options& o) {
    const TestAlgebra alg = load_algebra(o);
    const auto fs = io::elements_from_json(load(o.elements, "--elements"), alg.size());
    if (o.expansion) return emit(io::to_json(ks_monomial_expansion(alg, fs), fs.size()));
    const KSPoly p = ks_poly(alg, fs, o.method == "explicit" ? KSMethod::Explicit : KSMethod::Recursion);
    return o.format == "latex" ? io::latex(p, fs.size()) : emit(io::ks_json(p, fs.size()));
}

std::string run_fock(const Options& o) {
    const TestAlgebra alg = load_algebra(o);
    const auto fs = io::elements_from_json(load(o.elements, "--elements"), alg.size());
    if (o.mode == "pair") {
        const std::size_t N = need_degree(o);
        io::check_budget(fs.size(), N);
        return emit(io::to_json(joint_pair_from_fock(alg, fs, N)));
    }
    if (o.mode == "expectation") {
        Json out = Json::object();
        io::put_scalar(out, vacuum_expectation(alg, fs));
        return emit(out);
    }
    if (o.mode == "appell") {
        const auto rep = appell_from_ks(alg, fs);
        return emit(Json{{"equal", rep.equal}, {"lhs", io::to_json(rep.lhs)}, {"rhs", io::to_json(rep.rhs)}});
    }
    FockVector v = FockVector::vacuum(fs.size());
    for (std::size_t j = fs.size(); j-- > 0;) v = ks_apply(alg, fs[j], v);
    return emit(io::to_json(v));
}

std::string run_check(const Options& o) {
    const std::string& c = o.check;
    if (c == "ops-second-kind") {
        const State phi = load_state(o, o.phi, "--phi");
        const State psi = load_state(o, o.psi, "--psi");
        std::size_t k = o.degree.value_or(0);
        if (!o.degree) {
            if (phi.trunc_degree() < 2) throw TruncationError("phi needs trunc_degree >= 2");
            k = std::min((phi.trunc_degree() - 2) / 2, psi.trunc_degree() / 2);
        }
        const auto r = check_ops_second_kind(phi, psi, k);
        return emit(Json{{"a", r.a}, {"b", r.b}, {"c", r.c}});
    }
    if (c == "c-cumulant-identity") return emit(Json{{"holds", check_c_cumulant_identity(load_pair(o))}});
    if (c == "orthogonality") {
        const auto r = orthogonality_report(load_pair(o));
        Json out{{"degree_one_orthogonal", r.degree_one_orthogonal}, {"fully_orthogonal", r.fully_orthogonal}};
        if (r.meixner_params) {
            Json params = Json::array();
            for (const auto& [b, cc] : *r.meixner_params) {
                Json bj = Json::object(), cj = Json::object();
                io::put_scalar(bj, b);
                io::put_scalar(cj, cc);
                params.push_back(Json{{"b", bj}, {"c", cj}});
            }
            out["meixner_params"] = std::move(params);
        } else {
            out["meixner_params"] = nullptr;
        }
        return emit(out);
    }
    if (c == "free-meixner") {
        const auto fm = is_free_meixner(load_state(o, o.input, "--input"));
        if (!fm) return emit(Json{{"free_meixner", false}});
        Json b = Json::array();
        for (const auto& m : fm->b) b.push_back(io::to_json(m));
        return emit(Json{{"free_meixner", true}, {"b", std::move(b)}, {"c", io::to_json(fm->c)}});
    }
    if (c == "positive") {
        const State s = load_state(o, o.input, "--input");
        return emit(Json{{"positive", is_positive(s, o.degree.value_or(s.trunc_degree() / 2))}});
    }
    if (c == "mgf-strip") {
        return emit(Json{{"holds", check_mgf_strip_relation(load_state(o, o.mu, "--mu"), load_state(o, o.nu, "--nu"))}});
    }
    if (c == "appell") {
        const StatePair pair = load_pair(o);
        const auto rep = check_characterizations(cfree_appell(pair, o.degree.value_or(pair.trunc_degree())));
        Json out{{"ok", rep.ok()}};
        out["first_violation"] = rep.first_violation() ? io::word_json(*rep.first_violation()) : Json(nullptr);
        return emit(out);
    }
    if (c == "factorization") {
        const TestAlgebra alg = load_algebra(o);
        const auto fs = io::elements_from_json(load(o.elements, "--elements"), alg.size());
        if (o.blocks.empty()) throw UsageError("--blocks is required");
        return emit(Json{{"holds", factorization_check(alg, fs, o.blocks)}});
    }
    throw UsageError("unknown check " + c);
}

std::size_t coefficient_limit_from_env() {
    const char* env = std::getenv("CFREE_MAX_COEFFS");
    if (env == nullptr || *env == '\0') return 10'000'000;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(env, &pos);
        if (pos != std::string(env).size() || v == 0) throw std::invalid_argument(env);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw UsageError(std::string("CFREE_MAX_COEFFS must be a positive integer, got ") + env);
    }
}

void add_io(CLI::App* sub, Options& o) {
    sub->add_option("--input", o.input, "input JSON file (default stdin)");
    sub->add_option("--output", o.output, "output file (default stdout)");
    sub->add_option("--vars", o.vars, "expected number of variables");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact two-state (c-free) probability transforms", "cfree"};
    app.require_subcommand(1);
    Options o;

    auto* cum = app.add_subcommand("cumulants", "Boolean, free or two-state cumulants of a state or pair");
    add_io(cum, o);
    cum->add_option("--kind", o.kind)->check(CLI::IsMember({"free", "boolean", "two-state"}))->default_str("free");
    cum->add_option("--method", o.method, "two-state: recursion (partitions) or genfun")
        ->check(CLI::IsMember({"genfun", "recursion"}));
    cum->add_option("--variant", o.variant, "free: fixed point rwm or rmw")->check(CLI::IsMember({"rwm", "rmw"}));

    auto* mom = app.add_subcommand("moments", "moments from a cumulant series");
    add_io(mom, o);
    mom->add_option("--psi", o.psi, "psi state, for two-state cumulants");

    auto* conv = app.add_subcommand("convolve", "free or Boolean convolution, Boolean powers, c-free products");
    add_io(conv, o);
    conv->add_option("--kind", o.kind)->check(CLI::IsMember({"free", "boolean", "cfree"}))->required();
    conv->add_option("--a", o.a, "first state (pair for cfree)");
    conv->add_option("--b", o.b, "second state (pair for cfree)");
    conv->add_option("--power", o.power, "Boolean power t, e.g. 3/2");

    auto* phi = app.add_subcommand("phi", "the map psi -> Phi[psi]");
    add_io(phi, o);
    phi->add_option("--degree", o.degree, "output truncation degree");

    auto* jac = app.add_subcommand("jacobi", "Jacobi parameters (matricial for d > 1), or moments from parameters");
    add_io(jac, o);
    jac->add_option("--params", o.params, "Jacobi parameter JSON");
    jac->add_option("--degree", o.degree);
    jac->add_flag("--strip", o.strip_params);
    jac->add_flag("--unstrip", o.unstrip_params);

    auto* mo = app.add_subcommand("mops", "monic orthogonal polynomial system");
    add_io(mo, o);
    mo->add_option("--degree", o.degree)->required();
    mo->add_option("--format", o.format)->check(CLI::IsMember({"json", "latex"}));

    auto* sk = app.add_subcommand("second-kind", "polynomials of the second kind");
    add_io(sk, o);
    sk->add_option("--family", o.family, "family JSON (default: MOPS of the state)");
    sk->add_option("--degree", o.degree);
    sk->add_option("--format", o.format)->check(CLI::IsMember({"json", "latex"}));

    auto* ap = app.add_subcommand("appell", "c-free, free or Boolean Appell polynomials");
    add_io(ap, o);
    ap->add_option("--pair", o.pair);
    ap->add_option("--degree", o.degree)->required();
    ap->add_option("--kind", o.kind)->check(CLI::IsMember({"cfree", "free", "boolean"}));
    ap->add_option("--method", o.method)->check(CLI::IsMember({"genfun", "recursion", "explicit"}));
    ap->add_option("--format", o.format)->check(CLI::IsMember({"json", "latex"}));
    ap->add_flag("--symbolic", o.symbolic, "explicit formula in terms of cumulants");

    auto* ks = app.add_subcommand("ks", "Kailath-Segall polynomial W(f_1, ..., f_n)");
    add_io(ks, o);
    ks->add_option("--algebra", o.algebra)->required();
    ks->add_option("--elements", o.elements)->required();
    ks->add_option("--method", o.method)->check(CLI::IsMember({"recursion", "explicit"}));
    ks->add_option("--format", o.format)->check(CLI::IsMember({"json", "latex"}));
    ks->add_flag("--expansion", o.expansion, "expand X(f_1)...X(f_n) in the W polynomials");

    auto* fk = app.add_subcommand("fock", "Fock space representation");
    add_io(fk, o);
    fk->add_option("--algebra", o.algebra)->required();
    fk->add_option("--elements", o.elements)->required();
    fk->add_option("--mode", o.mode)->check(CLI::IsMember({"vector", "expectation", "pair", "appell"}))->required();
    fk->add_option("--degree", o.degree, "truncation degree for --mode pair");

    auto* ck = app.add_subcommand("check", "predicates and structural checks");
    add_io(ck, o);
    ck->add_option("name", o.check)
        ->check(CLI::IsMember({"ops-second-kind", "c-cumulant-identity", "orthogonality", "free-meixner", "positive",
                               "mgf-strip", "appell", "factorization"}))
        ->required();
    for (auto [flag, target] : {std::pair{"--pair", &o.pair}, {"--phi", &o.phi}, {"--psi", &o.psi}, {"--mu", &o.mu},
                                {"--nu", &o.nu}, {"--algebra", &o.algebra}, {"--elements", &o.elements}}) {
        ck->add_option(flag, *target);
    }
    ck->add_option("--degree", o.degree);
    ck->add_option("--blocks", o.blocks, "block sizes for factorization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string out;
    try {
        io::set_coefficient_limit(coefficient_limit_from_env());
        if (cum->parsed()) {
            out = run_cumulants(o);
        } else if (mom->parsed()) {
            out = run_moments(o);
        } else if (conv->parsed()) {
            out = run_convolve(o);
        } else if (phi->parsed()) {
            out = run_phi(o);
        } else if (jac->parsed()) {
            out = run_jacobi(o);
        } else if (mo->parsed()) {
            out = run_mops(o);
        } else if (sk->parsed()) {
            out = run_second_kind(o);
        } else if (ap->parsed()) {
            out = run_appell(o);
        } else if (ks->parsed()) {
            out = run_ks(o);
        } else if (fk->parsed()) {
            out = run_fock(o);
        } else {
            out = run_check(o);
        }
    } catch (const UsageError& e) {
        std::cerr << "cfree: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cout << io::dump(Json{{"error", e.what()}, {"kind", e.kind()}});
        return 1;
    }

    if (o.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) {
            std::cerr << "cfree: cannot write " << o.output << "\n";
            return 2;
        }
        f << out;
    }
    return 0;
}
