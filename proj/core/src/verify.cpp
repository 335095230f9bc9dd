#include "djet/verify.hpp"

#include <random>

#include "djet/error.hpp"
#include "djet/forms.hpp"
#include "djet/group.hpp"
#include "djet/jets.hpp"
#include "djet/laplacian.hpp"
#include "djet/periods.hpp"
#include "djet/witt.hpp"

namespace djet {

namespace {

// rng() % n directly: the standard distributions are not guaranteed to
// produce the same stream across library implementations, and suite
// output must be byte-stable
long ri(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

JetPoly random_poly(std::mt19937_64& rng, const std::vector<JetVar>& vars,
                    int max_terms, int max_exp, long max_coeff) {
    JetPoly out;
    int n = static_cast<int>(ri(rng, 1, max_terms));
    for (int t = 0; t < n; ++t) {
        Monomial m;
        for (const auto& v : vars)
            m = m.times(Monomial::var(v, static_cast<int>(ri(rng, 0, max_exp))));
        long c = ri(rng, -max_coeff, max_coeff);
        if (c != 0) out += JetPoly::monomial(m, c);
    }
    return out;
}

struct Checker {
    SuiteResult r;
    explicit Checker(std::string name) { r.suite = std::move(name); }
    void check(bool ok, const std::string& what) {
        ++r.checks;
        if (!ok) {
            ++r.failures;
            if (r.failed.size() < 8) r.failed.push_back(what);
        }
    }
};

std::vector<JetVar> gm_vars() {
    return {JetVar("x", MultiIndex({0, 0, 0})), JetVar("x", MultiIndex({1, 0, 0})),
            JetVar("y", MultiIndex({0, 0, 0}))};
}

SuiteResult suite_delta(std::mt19937_64& rng) {
    Checker c("delta");
    DeltaRing R(PrimeSet({2, 3, 5}));
    auto vars = gm_vars();
    for (int i = 0; i < 40; ++i) {
        JetPoly f = random_poly(rng, vars, 3, 2, 5);
        JetPoly g = random_poly(rng, vars, 3, 2, 5);
        for (int k = 0; k < 3; ++k) {
            long p = R.primes().prime(k);
            c.check(R.delta(k, f + g) ==
                        R.delta(k, f) + R.delta(k, g) + cp_of(p, f, g),
                    "sum axiom");
            c.check(R.delta(k, f * g) ==
                        f.pow(static_cast<int>(p)) * R.delta(k, g) +
                            g.pow(static_cast<int>(p)) * R.delta(k, f) +
                            R.delta(k, f).scaled(p) * R.delta(k, g),
                    "product axiom");
            c.check(R.phi(k, f + g) == R.phi(k, f) + R.phi(k, g),
                    "phi additivity");
            c.check(R.phi(k, f * g) == R.phi(k, f) * R.phi(k, g),
                    "phi multiplicativity");
        }
    }
    for (int k = 0; k < 3; ++k) {
        long p = R.primes().prime(k);
        c.check(R.delta(k, JetPoly::constant(1)).is_zero(), "delta(1)=0");
        mpq_class a = ri(rng, -50, 50);
        c.check(R.delta(k, JetPoly::constant(a)) ==
                    JetPoly::constant(delta_int(p, a)),
                "delta on constants");
    }
    return c.r;
}

SuiteResult suite_commutator(std::mt19937_64& rng) {
    Checker c("commutator");
    DeltaRing R(PrimeSet({2, 3, 5}));
    auto vars = gm_vars();
    std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {1, 2}};
    for (int i = 0; i < 10; ++i) {
        JetPoly g = random_poly(rng, vars, 2, 1, 4);
        for (auto [k1, k2] : pairs) {
            long p = R.primes().prime(k1), q = R.primes().prime(k2);
            JetPoly lhs = R.delta(k1, R.delta(k2, g)) - R.delta(k2, R.delta(k1, g));
            c.check(lhs == commutator_of(p, q, g, R.delta(k1, g), R.delta(k2, g)),
                    "commutator identity");
        }
    }
    return c.r;
}

SuiteResult suite_witt(std::mt19937_64& rng) {
    Checker c("witt");
    for (long p : {2L, 3L, 5L})
        for (int n = 1; n <= 2; ++n) {
            auto& law = witt_law(p, n);
            for (auto& f : law.sum) c.check(f.is_integral(), "S integral");
            for (auto& f : law.prod) c.check(f.is_integral(), "P integral");
            auto w = ghost_polys(p, n, "X");
            auto wy = ghost_polys(p, n, "Y");
            std::map<JetVar, JetPoly> sub;
            for (int j = 0; j <= n; ++j)
                sub.emplace(JetVar("X" + std::to_string(j)), law.sum[j]);
            for (int i = 0; i <= n; ++i)
                c.check(w[i].substituted(sub) == w[i] + wy[i],
                        "ghost additivity");
        }
    for (long p : {2L, 3L}) {
        long m = p == 2 ? 4 : 9;
        for (int trial = 0; trial < 10; ++trial) {
            auto rand_w = [&] {
                return WittVectorMod(p, m,
                                     {ri(rng, 0, m - 1), ri(rng, 0, m - 1)});
            };
            auto a = rand_w(), b = rand_w(), d = rand_w();
            c.check(a.add(b) == b.add(a), "witt add commutes");
            c.check(a.mul(b.add(d)) == a.mul(b).add(a.mul(d)),
                    "witt distributivity");
        }
    }
    AffinePresentation A1{{"x"}, {}, {}};
    auto rep = adjunction_check(A1, 4, 2, 1);
    c.check(rep.jet_points == rep.witt_points && rep.bijection_ok,
            "adjunction A1 Z/4");
    return c.r;
}

SuiteResult suite_duality(std::mt19937_64& rng) {
    Checker c("duality");
    JetPoly x = JetPoly::variable(JetVar("x"));
    for (auto& [P, n] :
         std::vector<std::pair<PrimeSet, MultiIndex>>{
             {PrimeSet({3}), MultiIndex({2})},
             {PrimeSet({2, 3}), MultiIndex({1, 1})}}) {
        auto ctx = gm_chart(P);
        auto& R = ctx->ring();
        auto del = conjugate_derivations(R, {{"x", x}}, n);
        auto idx = indices_below(n);
        // defining relation on the coghost generators
        for (auto& r : idx)
            for (auto& s : idx) {
                JetPoly got = del.at(r).apply_poly(R.phi_multi(s, x));
                JetPoly want = r == s
                                   ? R.phi_multi(s, x).scaled(mpq_class(P.power(r)))
                                   : JetPoly::zero();
                c.check(got == want, "defining relation");
            }
        // commutation with the Frobenius lifts
        for (int k = 0; k < P.dim(); ++k) {
            long p = P.prime(k);
            for (auto& r : idx) {
                if (r[k] == 0) continue;
                JetPoly f = random_poly(rng, {JetVar("x")}, 3, 3, 5);
                JetPoly lhs = del.at(r).apply_poly(R.phi(k, f));
                JetPoly rhs =
                    R.phi(k, del.at(r.minus(MultiIndex::unit(P.dim(), k)))
                                 .apply_poly(f))
                        .scaled(p);
                c.check(lhs == rhs, "phi commutation");
            }
        }
        // scaling the base derivation scales the conjugates by phi^r
        auto scaled = conjugate_derivations(R, {{"x", x * x}}, n);
        for (auto& r : idx)
            for (auto& [v, val] : del.at(r).values)
                c.check(scaled.at(r).values.at(v) == R.phi_multi(r, x) * val,
                        "conjugate scaling");
        // identity Gram matrix
        auto basis = dual_basis(ctx, {"x"}, {gm_base_form(ctx)},
                                {{{"x", x}}}, n);
        for (auto& r : idx)
            for (auto& s : idx) {
                auto pr = pairing(basis.omega.at({0, r}), basis.del.at({0, s}));
                c.check(pr.equals(LocalizedJetElem(
                            ctx, JetPoly::constant(r == s ? 1 : 0))),
                        "gram identity");
            }
    }
    return c.r;
}

SuiteResult suite_df_expansion(std::mt19937_64& rng) {
    Checker c("df_expansion");
    PrimeSet P({2, 3});
    MultiIndex n({1, 1});
    auto ctx = gm_chart(P);
    JetPoly x = JetPoly::variable(JetVar("x"));
    auto basis = dual_basis(ctx, {"x"}, {gm_base_form(ctx)}, {{{"x", x}}}, n);
    std::vector<JetVar> vars{JetVar("x", MultiIndex({0, 0})),
                             JetVar("x", MultiIndex({1, 0})),
                             JetVar("x", MultiIndex({0, 1})),
                             JetVar("x", MultiIndex({1, 1}))};
    for (int i = 0; i < 20; ++i) {
        JetPoly num = random_poly(rng, vars, 3, 2, 5);
        std::map<MultiIndex, int> den;
        if (ri(rng, 0, 1)) den.emplace(MultiIndex::zero(2), 1);
        LocalizedJetElem f(ctx, num, den);
        try {
            auto coeffs = df_expansion(f, basis); // asserts reconstruction
            c.check(coeffs.size() <= 4, "df expansion");
        } catch (const Error&) {
            c.check(false, "df expansion");
        }
    }
    return c.r;
}

JetPoly subst2(const JetPoly& f, const JetPoly& a, const JetPoly& b, int cap) {
    return f.substituted_capped({{JetVar("T1"), a}, {JetVar("T2"), b}}, cap);
}

void check_group_law(Checker& c, const FormalGroupLaw& G, const std::string& tag) {
    int cap = G.cap;
    JetPoly t1 = JetPoly::variable(JetVar("T1"));
    JetPoly t2 = JetPoly::variable(JetVar("T2"));
    JetPoly t3 = JetPoly::variable(JetVar("T3"));
    c.check(subst2(G.F, t2, t1, cap) == G.F, tag + " commutativity");
    c.check(subst2(G.F, t1, JetPoly::zero(), cap) == t1, tag + " unit");
    JetPoly lhs = subst2(G.F, subst2(G.F, t1, t2, cap), t3, cap);
    JetPoly rhs = subst2(G.F, t1, subst2(G.F, t2, t3, cap), cap);
    c.check(lhs == rhs, tag + " associativity");
    JetPoly logF =
        G.log.substituted_capped({{JetVar("T"), G.F}}, cap);
    JetPoly sum = G.log.substituted_capped({{JetVar("T"), t1}}, cap) +
                  G.log.substituted_capped({{JetVar("T"), t2}}, cap);
    c.check(logF == sum, tag + " log additivity");
    c.check(G.log_coeff(1) == 1, tag + " log normalization");
    c.check(G.dlog == G.log.partial(JetVar("T")), tag + " dlog");
}

SuiteResult suite_formal_group(std::mt19937_64&) {
    Checker c("formal_group");
    check_group_law(c, gm_formal_group(9), "gm");
    check_group_law(c, ec_formal_group(1, 1, 7), "ec(1,1)");
    check_group_law(c, ec_formal_group(-1, 1, 7), "ec(-1,1)");
    return c.r;
}

SuiteResult suite_volume(std::mt19937_64&) {
    Checker c("volume");
    JetPoly x = JetPoly::variable(JetVar("x"));
    for (auto& [P, n] :
         std::vector<std::pair<PrimeSet, MultiIndex>>{
             {PrimeSet({3}), MultiIndex({1})},
             {PrimeSet({2, 3}), MultiIndex({1, 1})}}) {
        auto ctx = gm_chart(P);
        auto basis = dual_basis(ctx, {"x"}, {gm_base_form(ctx)}, {{{"x", x}}}, n);
        try {
            auto vol = volume_form(basis, ctx, n); // certifies a unit
            c.check(!vol.is_zero(), "volume form");
        } catch (const Error&) {
            c.check(false, "volume form");
        }
        c.check(gm_wedge_absorption(P, n).ok(), "wedge absorption");
    }
    return c.r;
}

SuiteResult suite_invariance(std::mt19937_64&) {
    Checker c("invariance");
    {
        PrimeSet P({3});
        DeltaRing R(P);
        int D = 6;
        auto w0 = gm_omega_r_chart(R, MultiIndex({0}), D);
        auto w1 = gm_omega_r_chart(R, MultiIndex({1}), D);
        c.check(gm_invariance_defect(P, w0, D).is_zero(), "omega_0 invariant");
        c.check(gm_invariance_defect(P, w1, D).is_zero(), "omega_1 invariant");
        c.check(gm_invariance_defect(P, w0.scaled(3).sub(w1.scaled(7)), D).is_zero(),
                "combination invariant");
        ChartForm xdx;
        xdx.c.emplace(JetVar("T"),
                      JetPoly::constant(1) + JetPoly::variable(JetVar("T")));
        c.check(!gm_invariance_defect(P, xdx, D).is_zero(), "x dx not invariant");
    }
    {
        PrimeSet P({2, 3});
        DeltaRing R(P);
        int D = 6;
        auto w = gm_omega_r_chart(R, MultiIndex({1, 1}), D);
        c.check(gm_invariance_defect(P, w, D).is_zero(), "omega_(1,1) invariant");
    }
    return c.r;
}

SuiteResult suite_laplacian(std::mt19937_64&) {
    Checker c("laplacian");
    c.check(gm_laplacian(PrimeSet({3}), 4, 6).all_verified(), "gm single prime");
    c.check(gm_laplacian(PrimeSet({2, 3}), 4, 6).all_verified(), "gm two primes");
    auto ec = ec_laplacian(1, 1, PrimeSet({5}), 4, 6);
    c.check(ec.all_verified(), "ec single prime");
    c.check(ec.traces[0] == -3, "ec trace at 5");
    return c.r;
}

SuiteResult suite_period(std::mt19937_64&) {
    Checker c("period");
    auto L = gm_laplacian(PrimeSet({3, 5}), 4, 8);
    c.check(L.all_verified(), "gm laplacian for periods");
    auto cycle = [&](const mpq_class& x14) {
        Chain g;
        g.points = {{3, x14}, {3, 1}, {5, 1}, {5, x14}, {3, x14}};
        return g;
    };
    auto torsion = integrate(L, cycle(-1));
    c.check(torsion.components[0].value == 0 && torsion.components[1].value == 0,
            "torsion cycle vanishes");
    c.check(period_reduce(torsion, 4) == "zero_within_bound", "torsion reduces");
    auto two = integrate(L, cycle(2));
    c.check(two.components[0].value != 0 || two.components[1].value != 0,
            "x=2 cycle nonzero");
    c.check(period_reduce(two, 6) == "nonzero_at_precision", "x=2 not reducible");
    Chain h;
    h.points = {{3, 2}, {5, 2}};
    auto hv = integrate(L, h);
    c.check(hv.components[0].value == 0 && hv.components[1].value == 0,
            "horizontal zero");
    Chain g1, g2;
    g1.points = {{3, 2}, {3, 4}};
    g2.points = {{3, 4}, {3, 7}};
    auto v1 = integrate(L, g1), v2 = integrate(L, g2),
         v12 = integrate(L, g1.then(g2));
    mpz_class M = 81;
    c.check(v12.components[0].value ==
                (v1.components[0].value + v2.components[0].value) % M,
            "additivity");
    return c.r;
}

using SuiteFn = SuiteResult (*)(std::mt19937_64&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> table{
        {"delta", suite_delta},         {"commutator", suite_commutator},
        {"witt", suite_witt},           {"duality", suite_duality},
        {"df_expansion", suite_df_expansion},
        {"formal_group", suite_formal_group},
        {"volume", suite_volume},       {"invariance", suite_invariance},
        {"laplacian", suite_laplacian}, {"period", suite_period},
    };
    return table;
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (auto& [name, fn] : suites()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<SuiteResult> run_verify(unsigned long long seed,
                                    const std::string& only) {
    if (!only.empty()) {
        bool known = false;
        for (auto& [name, fn] : suites()) known = known || name == only;
        if (!known) fail_usage("unknown suite: " + only);
    }
    std::vector<SuiteResult> out;
    unsigned long long salt = 0;
    for (auto& [name, fn] : suites()) {
        ++salt;
        if (!only.empty() && name != only) continue;
        std::mt19937_64 rng(seed * 1000003ULL + salt);
        try {
            out.push_back(fn(rng));
        } catch (const Error& e) {
            SuiteResult r;
            r.suite = name;
            r.checks = 1;
            r.failures = 1;
            r.failed = {std::string("exception: ") + e.what()};
            out.push_back(std::move(r));
        }
    }
    return out;
}

nlohmann::json to_json(const std::vector<SuiteResult>& results,
                       unsigned long long seed) {
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed();
        arr.push_back({{"suite", r.suite},
                       {"checks", r.checks},
                       {"failures", r.failures},
                       {"failed", r.failed},
                       {"status", r.passed() ? "pass" : "fail"}});
    }
    return {{"seed", seed}, {"suites", arr}, {"status", all ? "pass" : "fail"}};
}

} // namespace djet
