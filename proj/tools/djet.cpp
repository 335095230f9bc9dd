#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <djet/error.hpp>
#include <djet/jets.hpp>
#include <djet/laplacian.hpp>
#include <djet/periods.hpp>
#include <djet/text.hpp>
#include <djet/verify.hpp>
#include <djet/witt.hpp>

using namespace djet;

namespace {

PrimeSet parse_primes(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos = 0;
            long p = std::stol(tok, &pos);
            if (pos != tok.size()) fail_usage("bad prime list: " + s);
            out.push_back(p);
        } catch (const std::logic_error&) {
            fail_usage("bad prime list: " + s);
        }
    }
    if (out.empty()) fail_usage("empty prime list");
    return PrimeSet(out); // validates primality and ordering
}

MultiIndex parse_order(const std::string& s, int dim) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v < 0) fail_usage("bad order: " + s);
            out.push_back(v);
        } catch (const std::logic_error&) {
            fail_usage("bad order: " + s);
        }
    }
    if (static_cast<int>(out.size()) == 1 && dim > 1)
        out.resize(dim, out[0]);
    if (static_cast<int>(out.size()) != dim)
        fail_usage("order dimension does not match the prime list");
    return MultiIndex(out);
}

mpz_class parse_int(const std::string& s) {
    try {
        return mpz_class(s, 10);
    } catch (const std::invalid_argument&) {
        fail_usage("bad integer: " + s);
    }
}

void check_threads_env() {
    const char* t = std::getenv("DJET_THREADS");
    if (t == nullptr) return;
    char* end = nullptr;
    long v = std::strtol(t, &end, 10);
    if (end == t || *end != '\0' || v < 1)
        fail_usage("DJET_THREADS must be a positive integer");
    // execution is sequential; the variable only caps parallelism
}

void emit(const nlohmann::json& j, const std::string& out,
          const std::string& text) {
    if (out == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

std::string report_line(const IdentityReport& r) {
    std::ostringstream os;
    os << r.identity << " p=" << r.prime << " prec=" << r.precision
       << " deg=" << r.degree << " " << r.status << " defect_valuation=";
    if (r.defect_valuation == VAL_INF)
        os << "inf";
    else
        os << r.defect_valuation;
    return os.str();
}

int cmd_delta(const std::string& primes, long prime, const std::string& expr,
              bool phi, const std::string& out) {
    PrimeSet P = parse_primes(primes);
    int k = P.index_of(prime);
    if (k < 0) fail_usage("--prime must be a member of --primes");
    DeltaRing R(P);
    JetPoly f = parse_poly(expr);
    for (const auto& v : f.variables())
        if (v.idx.dim() != 0 && v.idx.dim() != P.dim())
            fail_usage("jet variable " + v.str() +
                       " does not match the prime list dimension");
    JetPoly g = phi ? R.phi(k, f) : R.delta(k, f);
    std::string text = canonical_text(g);
    emit({{"op", phi ? "phi" : "delta"},
          {"prime", prime},
          {"result", text}},
         out, text);
    return 0;
}

int cmd_jet_ring(const std::string& primes, const std::string& order,
                 const std::string& vars, const std::vector<std::string>& rels,
                 const std::string& localizer, const std::string& out) {
    PrimeSet P = parse_primes(primes);
    MultiIndex r = parse_order(order, P.dim());
    AffinePresentation X;
    std::stringstream ss(vars);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) fail_usage("bad variable list: " + vars);
        X.vars.push_back(tok);
    }
    if (X.vars.empty()) fail_usage("empty variable list");
    for (const auto& rel : rels) X.relations.push_back(parse_poly(rel));
    if (!localizer.empty()) X.localizer = parse_poly(localizer);
    auto pres = jet_presentation(X, P, r);
    std::ostringstream os;
    os << "generators:";
    for (const auto& g : pres.generators) os << " " << g.str();
    os << "\nrelations: " << pres.relations.size();
    for (const auto& f : pres.relations) os << "\n  " << canonical_text(f);
    if (pres.localizer_r)
        os << "\nlocalizer_r: " << canonical_text(*pres.localizer_r);
    emit(to_json(pres), out, os.str());
    return 0;
}

int cmd_witt(long prime, const std::string& order, const std::string& out) {
    if (!is_prime(prime)) fail_usage("--prime must be prime");
    MultiIndex n1 = parse_order(order, 1);
    int n = n1[0];
    if (n < 1 || n > 4) fail_usage("witt length must be between 1 and 4");
    const auto& law = witt_law(prime, n);
    const auto& dpolys = witt_delta_polys(prime, n);
    nlohmann::json j{{"p", prime}, {"n", n}};
    std::ostringstream os;
    os << "p=" << prime << " n=" << n;
    for (int i = 0; i <= n; ++i) {
        j["sum"].push_back(canonical_text(law.sum[i]));
        j["prod"].push_back(canonical_text(law.prod[i]));
        os << "\nS_" << i << " = " << canonical_text(law.sum[i]);
        os << "\nP_" << i << " = " << canonical_text(law.prod[i]);
    }
    for (int i = 0; i < n; ++i) {
        j["delta"].push_back(canonical_text(dpolys[i]));
        os << "\nD_" << i << " = " << canonical_text(dpolys[i]);
    }
    emit(j, out, os.str());
    return 0;
}

int cmd_laplacian_gm(const std::string& primes, int prec, int deg,
                     const std::string& out) {
    auto L = gm_laplacian(parse_primes(primes), prec, deg);
    nlohmann::json j{{"kind", "gm"},
                    {"primes", L.P.primes()},
                    {"precision", L.N},
                    {"degree", L.D}};
    std::ostringstream os;
    for (int k = 0; k < L.P.dim(); ++k) {
        std::string num = canonical_text(L.f[k].num());
        j["f_num"].push_back(num);
        j["f_den"].push_back(canonical_text(L.f[k].den_poly()));
        os << "f_" << L.P.prime(k) << " numerator: " << num << "\n";
    }
    j["omega_e"] = L.omega_e.to_json();
    bool ok = true;
    for (const auto& r : L.reports) {
        j["reports"].push_back(to_json(r));
        os << report_line(r) << "\n";
        ok = ok && r.ok();
    }
    std::string text = os.str();
    if (!text.empty()) text.pop_back();
    emit(j, out, text);
    if (!ok) fail_verify("a Laplacian identity failed");
    return 0;
}

int cmd_laplacian_ec(const std::string& primes, const std::string& a,
                     const std::string& b, int prec, int deg,
                     const std::string& out) {
    auto L = ec_laplacian(parse_int(a), parse_int(b), parse_primes(primes),
                          prec, deg);
    nlohmann::json j{{"kind", "ec"},
                    {"primes", L.P.primes()},
                    {"precision", L.N},
                    {"degree", L.D},
                    {"a", a},
                    {"b", b}};
    std::ostringstream os;
    for (int k = 0; k < L.P.dim(); ++k) {
        j["trace"].push_back(L.traces[k]);
        os << "a_" << L.P.prime(k) << " = " << L.traces[k] << "\n";
        j["f"].push_back(canonical_text(L.f[k]));
    }
    bool ok = true;
    for (const auto& r : L.reports) {
        j["reports"].push_back(to_json(r));
        os << report_line(r) << "\n";
        ok = ok && r.ok();
    }
    std::string text = os.str();
    if (!text.empty()) text.pop_back();
    emit(j, out, text);
    if (!ok) fail_verify("a Laplacian identity failed");
    return 0;
}

int cmd_verify(unsigned long long seed, const std::string& only,
               const std::string& out) {
    auto results = run_verify(seed, only);
    bool all = true;
    std::ostringstream os;
    for (const auto& r : results) {
        all = all && r.passed();
        os << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << " ("
           << r.checks << " checks, " << r.failures << " failures)\n";
    }
    std::string text = os.str();
    if (!text.empty()) text.pop_back();
    emit(to_json(results, seed), out, text);
    if (!all) fail_verify("verification suite failed");
    return 0;
}

int cmd_period(const std::string& chain_path, int prec, int deg, int height,
               const std::string& out) {
    nlohmann::json cj;
    try {
        if (chain_path == "-") {
            cj = nlohmann::json::parse(std::cin);
        } else {
            std::ifstream in(chain_path);
            if (!in) fail_usage("cannot open chain file: " + chain_path);
            cj = nlohmann::json::parse(in);
        }
    } catch (const nlohmann::json::parse_error& e) {
        fail_usage(std::string("chain JSON: ") + e.what());
    }
    Chain gamma = chain_from_json(cj);
    std::set<long> ps;
    for (const auto& pt : gamma.points) ps.insert(pt.prime);
    PrimeSet P(std::vector<long>(ps.begin(), ps.end()));
    auto L = gm_laplacian(P, prec, deg);
    if (!L.all_verified()) fail_verify("Laplacian identities failed");
    auto v = integrate(L, gamma);
    std::string reduced = period_reduce(v, height);
    std::ostringstream os;
    for (const auto& c : v.components)
        os << "p=" << c.prime << " value=" << c.value.get_str()
           << " precision=" << c.precision << "\n";
    os << "reduced: " << reduced;
    emit(to_json(v, reduced), out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic on jet spaces: delta operators, Witt "
                 "vectors, differential forms, Laplacians and periods"};
    app.require_subcommand(1);

    std::string primes = "2,3", order = "1", outfmt = "text";
    std::string expr, vars = "x", localizer, chain_path, a = "1", b = "1", only;
    std::vector<std::string> rels;
    long prime = 2;
    int prec = 8, deg = 12, height = 10;
    unsigned long long seed = 42;
    bool phi = false;

    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", outfmt, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* cdelta = app.add_subcommand("delta", "apply a delta operator");
    cdelta->add_option("--primes", primes, "comma separated prime set");
    cdelta->add_option("--prime", prime, "prime whose operator is applied");
    cdelta->add_option("--expr", expr, "polynomial expression")->required();
    cdelta->add_flag("--phi", phi, "apply the Frobenius lift instead");
    add_out(cdelta);

    auto* cjet = app.add_subcommand("jet-ring", "jet ring presentation");
    cjet->add_option("--primes", primes, "comma separated prime set");
    cjet->add_option("--order", order, "jet order multi-index");
    cjet->add_option("--vars", vars, "comma separated variable names");
    cjet->add_option("--rel", rels, "relation (repeatable)");
    cjet->add_option("--localizer", localizer, "localizing element");
    add_out(cjet);

    auto* cwitt = app.add_subcommand("witt", "Witt vector laws");
    cwitt->add_option("--prime", prime, "the prime");
    cwitt->add_option("--order", order, "coordinate length n");
    add_out(cwitt);

    auto* clap = app.add_subcommand("laplacian", "arithmetic Laplacians");
    clap->require_subcommand(1);
    auto* cgm = clap->add_subcommand("gm", "multiplicative group");
    cgm->add_option("--primes", primes, "comma separated prime set");
    cgm->add_option("--prec", prec, "p-adic precision window");
    cgm->add_option("--deg", deg, "degree window");
    add_out(cgm);
    auto* cec = clap->add_subcommand("ec", "elliptic curve y^2=x^3+ax+b");
    cec->add_option("--primes", primes, "comma separated prime set");
    cec->add_option("--a", a, "curve coefficient a");
    cec->add_option("--b", b, "curve coefficient b");
    cec->add_option("--prec", prec, "p-adic precision window");
    cec->add_option("--deg", deg, "degree window");
    add_out(cec);

    auto* cver = app.add_subcommand("verify", "run the invariant suites");
    cver->add_option("--seed", seed, "seed for randomized suites");
    cver->add_option("--only", only, "run a single suite");
    add_out(cver);

    auto* cper = app.add_subcommand("period", "integrate a chain");
    cper->add_option("--chain", chain_path, "chain JSON file, - for stdin")
        ->required();
    cper->add_option("--prec", prec, "p-adic precision window");
    cper->add_option("--deg", deg, "degree window");
    cper->add_option("--height", height, "reduction search height bound");
    add_out(cper);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        check_threads_env();
        if (prec < 1 || deg < 1) fail_usage("--prec and --deg must be >= 1");
        if (cdelta->parsed())
            return cmd_delta(primes, prime, expr, phi, outfmt);
        if (cjet->parsed())
            return cmd_jet_ring(primes, order, vars, rels, localizer, outfmt);
        if (cwitt->parsed()) return cmd_witt(prime, order, outfmt);
        if (cgm->parsed()) return cmd_laplacian_gm(primes, prec, deg, outfmt);
        if (cec->parsed())
            return cmd_laplacian_ec(primes, a, b, prec, deg, outfmt);
        if (cver->parsed()) return cmd_verify(seed, only, outfmt);
        if (cper->parsed())
            return cmd_period(chain_path, prec, deg, height, outfmt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::Usage: return 2;
        case ErrorKind::Arithmetic: return 3;
        case ErrorKind::Verification: return 4;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
