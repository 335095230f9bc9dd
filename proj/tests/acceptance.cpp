// Acceptance checks, one per criterion; each prints a single PASS/FAIL
// line and the binary exits nonzero when any of them fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <djet/error.hpp>
#include <djet/forms.hpp>
#include <djet/group.hpp>
#include <djet/jets.hpp>
#include <djet/laplacian.hpp>
#include <djet/periods.hpp>
#include <djet/verify.hpp>
#include <djet/witt.hpp>

using namespace djet;

namespace {

int failures = 0;

class Criterion {
  public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)),
          start_(std::chrono::steady_clock::now()) {}

    void check(bool c) { ok_ = ok_ && c; }

    ~Criterion() {
        double dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
        if (!ok_) ++failures;
        std::printf("criterion %2d: %s - %s (%.1fs)\n", number_,
                    ok_ ? "PASS" : "FAIL", title_.c_str(), dt);
        std::fflush(stdout);
    }

  private:
    int number_;
    std::string title_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

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

void criterion_1() {
    Criterion c(1, "delta ring axioms on 500 random polynomials over {2,3,5}");
    DeltaRing R(PrimeSet({2, 3, 5}));
    std::mt19937_64 rng(42);
    std::vector<JetVar> vars{JetVar("x", MultiIndex({0, 0, 0})),
                             JetVar("x", MultiIndex({1, 0, 0})),
                             JetVar("y", MultiIndex({0, 0, 0}))};
    for (int i = 0; i < 250; ++i) {
        JetPoly f = random_poly(rng, vars, 3, 2, 5);
        JetPoly g = random_poly(rng, vars, 3, 2, 5);
        int k = i % 3;
        long p = R.primes().prime(k);
        c.check(R.delta(k, f + g) ==
                R.delta(k, f) + R.delta(k, g) + cp_of(p, f, g));
        c.check(R.delta(k, f * g) ==
                f.pow(static_cast<int>(p)) * R.delta(k, g) +
                    g.pow(static_cast<int>(p)) * R.delta(k, f) +
                    R.delta(k, f).scaled(p) * R.delta(k, g));
        c.check(R.phi(k, f + g) == R.phi(k, f) + R.phi(k, g));
        c.check(R.phi(k, f * g) == R.phi(k, f) * R.phi(k, g));
    }
    for (int k = 0; k < 3; ++k)
        c.check(R.delta(k, JetPoly::constant(1)).is_zero());
}

void criterion_2() {
    Criterion c(2, "commutator identity for 100 random g, all pairs of {2,3,5}");
    DeltaRing R(PrimeSet({2, 3, 5}));
    std::mt19937_64 rng(43);
    std::vector<JetVar> base{JetVar("x", MultiIndex({0, 0, 0})),
                             JetVar("y", MultiIndex({0, 0, 0}))};
    std::vector<JetVar> jet{JetVar("x", MultiIndex({0, 0, 0})),
                            JetVar("x", MultiIndex({1, 0, 0})),
                            JetVar("y", MultiIndex({0, 0, 0}))};
    std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {1, 2}};
    for (int i = 0; i < 100; ++i) {
        JetPoly g = i < 90 ? random_poly(rng, base, 2, 2, 5)
                           : random_poly(rng, jet, 2, 1, 4);
        for (auto [k1, k2] : pairs) {
            long p = R.primes().prime(k1), q = R.primes().prime(k2);
            JetPoly lhs =
                R.delta(k1, R.delta(k2, g)) - R.delta(k2, R.delta(k1, g));
            c.check(lhs ==
                    commutator_of(p, q, g, R.delta(k1, g), R.delta(k2, g)));
        }
    }
}

void criterion_3() {
    Criterion c(3, "Witt suite: integrality, ghost identities, adjunction");
    for (long p : {2L, 3L, 5L})
        for (int n = 1; n <= 3; ++n) {
            auto& law = witt_law(p, n);
            for (auto& f : law.sum) c.check(f.is_integral());
            for (auto& f : law.prod) c.check(f.is_integral());
        }
    // ghost map is a ring homomorphism, symbolically
    for (long p : {2L, 3L, 5L}) {
        int nmax = p == 5 ? 1 : 2;
        for (int n = 1; n <= nmax; ++n) {
            auto& law = witt_law(p, n);
            auto w = ghost_polys(p, n, "X");
            auto wy = ghost_polys(p, n, "Y");
            std::map<JetVar, JetPoly> subs, subp;
            for (int j = 0; j <= n; ++j) {
                subs.emplace(JetVar("X" + std::to_string(j)), law.sum[j]);
                subp.emplace(JetVar("X" + std::to_string(j)), law.prod[j]);
            }
            for (int i = 0; i <= n; ++i) {
                c.check(w[i].substituted(subs) == w[i] + wy[i]);
                c.check(w[i].substituted(subp) == w[i] * wy[i]);
            }
        }
    }
    // the delta coordinates against the ghost characterization
    for (long p : {2L, 3L, 5L}) {
        int n = 2;
        auto& D = witt_delta_polys(p, n);
        auto w = ghost_polys(p, n, "X");
        auto wd = ghost_polys(p, n - 1, "D");
        for (int i = 0; i < n; ++i) {
            std::map<JetVar, JetPoly> sub;
            for (int j = 0; j < n; ++j)
                sub.emplace(JetVar("D" + std::to_string(j)), D[j]);
            JetPoly lhs = wd[i].substituted(sub);
            JetPoly rhs = (w[i + 1] - w[i].pow(static_cast<int>(p)))
                              .divided_exact(mpz_class(p));
            c.check(lhs == rhs);
        }
    }
    AffinePresentation a1{{"x"}, {}, {}};
    JetPoly x = JetPoly::variable(JetVar("x"));
    JetPoly y = JetPoly::variable(JetVar("y"));
    AffinePresentation xy1{{"x", "y"}, {x * y - JetPoly::constant(1)}, {}};
    for (auto& [X, m, p] :
         std::vector<std::tuple<AffinePresentation, long, long>>{
             {a1, 4, 2}, {a1, 9, 3}, {xy1, 2, 2}, {xy1, 9, 3}}) {
        auto rep = adjunction_check(X, m, p, 1);
        c.check(rep.jet_points == rep.witt_points && rep.bijection_ok);
    }
}

void run_suite_criterion(int number, const std::string& title,
                         const std::string& suite) {
    Criterion c(number, title);
    for (auto& r : run_verify(42, suite)) c.check(r.passed());
}

void criterion_5() {
    Criterion c(5, "df expansion reconstructs 100 random elements");
    PrimeSet P({2, 3});
    MultiIndex n({1, 1});
    auto ctx = gm_chart(P);
    JetPoly x = JetPoly::variable(JetVar("x"));
    auto basis = dual_basis(ctx, {"x"}, {gm_base_form(ctx)}, {{{"x", x}}}, n);
    std::mt19937_64 rng(44);
    std::vector<JetVar> vars{JetVar("x", MultiIndex({0, 0})),
                             JetVar("x", MultiIndex({1, 0})),
                             JetVar("x", MultiIndex({0, 1})),
                             JetVar("x", MultiIndex({1, 1}))};
    for (int i = 0; i < 100; ++i) {
        JetPoly num = random_poly(rng, vars, 3, 2, 5);
        std::map<MultiIndex, int> den;
        if (ri(rng, 0, 1)) den.emplace(MultiIndex::zero(2), 1);
        try {
            (void)df_expansion(LocalizedJetElem(ctx, num, den), basis);
            c.check(true);
        } catch (const Error&) {
            c.check(false);
        }
    }
}

GmLaplacianData* L35 = nullptr;
EcLaplacianData* E5 = nullptr;

void criterion_6() {
    Criterion c(6, "Gm Laplacian verified for {3,5}, {5,7}, {2,3} at N=8 D=12");
    static GmLaplacianData a = gm_laplacian(PrimeSet({3, 5}), 8, 12);
    L35 = &a;
    c.check(a.all_verified());
    c.check(gm_laplacian(PrimeSet({5, 7}), 8, 12).all_verified());
    c.check(gm_laplacian(PrimeSet({2, 3}), 8, 12).all_verified());
}

void criterion_7() {
    Criterion c(7, "elliptic Laplacian for E(1,1) over {5} and {5,7} at N=6 D=10");
    static EcLaplacianData e5 = ec_laplacian(1, 1, PrimeSet({5}), 6, 10);
    E5 = &e5;
    c.check(e5.all_verified());
    c.check(e5.traces[0] == -3);
    auto e57 = ec_laplacian(1, 1, PrimeSet({5, 7}), 6, 10);
    c.check(e57.all_verified());
    for (int k = 0; k < 2; ++k) {
        long p = e57.P.prime(k);
        c.check(static_cast<double>(e57.traces[k]) *
                    static_cast<double>(e57.traces[k]) <=
                4.0 * static_cast<double>(p));
        c.check(e57.psi2[k].constant_term() == 0);
        c.check(e57.psi2[k].min_valuation(p) >= 0);
    }
}

void criterion_8() {
    Criterion c(8, "formal group axioms and log additivity mod degree 10");
    auto law_ok = [&](const FormalGroupLaw& G) {
        int cap = G.cap;
        JetPoly t1 = JetPoly::variable(JetVar("T1"));
        JetPoly t2 = JetPoly::variable(JetVar("T2"));
        JetPoly t3 = JetPoly::variable(JetVar("T3"));
        auto sub = [&](const JetPoly& f, const JetPoly& a, const JetPoly& b) {
            return f.substituted_capped(
                {{JetVar("T1"), a}, {JetVar("T2"), b}}, cap);
        };
        c.check(sub(G.F, t2, t1) == G.F);
        c.check(sub(G.F, t1, JetPoly::zero()) == t1);
        c.check(sub(G.F, sub(G.F, t1, t2), t3) ==
                sub(G.F, t1, sub(G.F, t2, t3)));
        JetPoly logF = G.log.substituted_capped({{JetVar("T"), G.F}}, cap);
        c.check(logF ==
                G.log.substituted_capped({{JetVar("T"), t1}}, cap) +
                    G.log.substituted_capped({{JetVar("T"), t2}}, cap));
        c.check(G.log_coeff(1) == 1);
    };
    law_ok(gm_formal_group(9));
    law_ok(ec_formal_group(1, 1, 9));
    law_ok(ec_formal_group(-1, 1, 9));
}

void criterion_9() {
    Criterion c(9, "volume form unit determinant and wedge absorption");
    JetPoly x = JetPoly::variable(JetVar("x"));
    for (auto& [P, n] : std::vector<std::pair<PrimeSet, MultiIndex>>{
             {PrimeSet({3}), MultiIndex({1})},
             {PrimeSet({2, 3}), MultiIndex({1, 1})}}) {
        auto ctx = gm_chart(P);
        auto basis =
            dual_basis(ctx, {"x"}, {gm_base_form(ctx)}, {{{"x", x}}}, n);
        try {
            c.check(!volume_form(basis, ctx, n).is_zero());
        } catch (const Error&) {
            c.check(false);
        }
        c.check(gm_wedge_absorption(P, n).ok());
    }
    // elliptic absorption inside the window, from the criterion 7 data
    bool found = false;
    if (E5 != nullptr)
        for (auto& r : E5->reports)
            if (r.identity == "wedge_absorption") {
                found = true;
                c.check(r.ok());
            }
    c.check(found);
}

void criterion_10() {
    Criterion c(10, "invariance defect vanishes for omega_r, not for x dx");
    {
        PrimeSet P({3});
        DeltaRing R(P);
        int D = 10;
        auto w0 = gm_omega_r_chart(R, MultiIndex({0}), D);
        auto w1 = gm_omega_r_chart(R, MultiIndex({1}), D);
        c.check(gm_invariance_defect(P, w0, D).is_zero());
        c.check(gm_invariance_defect(P, w1, D).is_zero());
        // the alternating combination building omega^(e)
        c.check(gm_invariance_defect(P, w1.sub(w0), D).is_zero());
        c.check(gm_invariance_defect(P, w0.scaled(5).sub(w1.scaled(2)), D)
                    .is_zero());
        ChartForm xdx;
        xdx.c.emplace(JetVar("T"),
                      JetPoly::constant(1) + JetPoly::variable(JetVar("T")));
        c.check(!gm_invariance_defect(P, xdx, D).is_zero());
    }
    {
        PrimeSet P({2, 3});
        DeltaRing R(P);
        int D = 10;
        ChartForm omega_e;
        for (auto& r : indices_below(MultiIndex::all_ones(2))) {
            auto w = gm_omega_r_chart(R, r, D);
            c.check(gm_invariance_defect(P, w, D).is_zero());
            omega_e = r.total() % 2 == 0 ? omega_e.sub(w) : omega_e.add(w);
        }
        c.check(gm_invariance_defect(P, omega_e, D).is_zero());
    }
}

void criterion_11() {
    Criterion c(11, "period suite: torsion zero, x=2 cycle nonzero, additivity");
    if (L35 == nullptr) {
        c.check(false);
        return;
    }
    const auto& L = *L35; // {3,5} at N=8
    auto cycle = [&](const mpq_class& x14) {
        Chain g;
        g.points = {{3, x14}, {3, 1}, {5, 1}, {5, x14}, {3, x14}};
        return g;
    };
    auto torsion = integrate(L, cycle(-1));
    c.check(torsion.components[0].value == 0);
    c.check(torsion.components[1].value == 0);
    c.check(period_reduce(torsion, 6) == "zero_within_bound");
    auto two = integrate(L, cycle(2));
    c.check(two.components[0].value != 0 || two.components[1].value != 0);
    c.check(period_reduce(two, 8) == "nonzero_at_precision");
    Chain h;
    h.points = {{3, 2}, {5, 2}, {3, 2}};
    auto hv = integrate(L, h);
    c.check(hv.components[0].value == 0 && hv.components[1].value == 0);
    Chain g1, g2;
    g1.points = {{3, 2}, {3, 4}};
    g2.points = {{3, 4}, {3, 7}};
    auto v1 = integrate(L, g1), v2 = integrate(L, g2),
         v12 = integrate(L, g1.then(g2));
    mpz_class M;
    mpz_ui_pow_ui(M.get_mpz_t(), 3, 8);
    c.check(v12.components[0].value ==
            (v1.components[0].value + v2.components[0].value) % M);
    auto vr = integrate(L, g1.reversed());
    c.check((v1.components[0].value + vr.components[0].value) % M == 0);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_12() {
    Criterion c(12, "djet verify --seed 42 --out json is byte-identical twice");
    const char* bin = std::getenv("DJET_BIN");
    if (bin == nullptr) {
        std::cerr << "DJET_BIN is not set\n";
        c.check(false);
        return;
    }
    auto tmp = std::filesystem::temp_directory_path();
    auto out1 = tmp / "djet_determinism_1.json";
    auto out2 = tmp / "djet_determinism_2.json";
    std::string base = std::string("\"") + bin + "\" verify --seed 42 --out json > ";
    int rc1 = std::system((base + out1.string()).c_str());
    int rc2 = std::system((base + out2.string()).c_str());
    c.check(rc1 == 0 && rc2 == 0);
    std::string s1 = slurp(out1), s2 = slurp(out2);
    c.check(!s1.empty() && s1 == s2);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    run_suite_criterion(4, "conjugate derivations, duality and Gram identity",
                        "duality");
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures > 0) {
        std::printf("%d criteria failed\n", failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
