#include <doctest.h>

#include <djet/error.hpp>
#include <djet/jets.hpp>
#include <djet/laplacian.hpp>
#include <djet/text.hpp>

using namespace djet;

TEST_CASE("psi1 series terms") {
    PrimeSet P({3});
    auto ctx = gm_chart(P);
    auto psi = gm_psi1(ctx, 0, 3, 12);
    // kept terms: n = 1, 2, 3 with coefficients 1, -3/2, 3
    JetPoly u = JetPoly::variable(JetVar("x", MultiIndex({1})));
    MultiIndex z = MultiIndex::zero(1);
    LocalizedJetElem expect =
        LocalizedJetElem(ctx, u, {{z, 3}})
            .add(LocalizedJetElem(ctx, u.pow(2).scaled(mpq_class(-3, 2)), {{z, 6}}))
            .add(LocalizedJetElem(ctx, u.pow(3).scaled(3), {{z, 9}}));
    CHECK(psi.equals(expect));
    // the degree cap also truncates
    auto small = gm_psi1(ctx, 0, 8, 2);
    CHECK(small.equals(
        LocalizedJetElem(ctx, u, {{z, 3}})
            .add(LocalizedJetElem(ctx, u.pow(2).scaled(mpq_class(-3, 2)), {{z, 6}}))));
}

TEST_CASE("omega_e alternating and Moebius forms agree") {
    auto ctx = gm_chart(PrimeSet({2, 3}));
    CHECK(gm_omega_e(ctx).equals(gm_omega_e_moebius(ctx)));
    auto ctx1 = gm_chart(PrimeSet({5}));
    // d = 1: omega^(e) = omega_1 - omega_0
    auto base = gm_base_form(ctx1);
    auto expect = divided_frobenius(base, MultiIndex({1})).sub(base);
    CHECK(gm_omega_e(ctx1).equals(expect));
}

TEST_CASE("single prime Laplacian") {
    auto L = gm_laplacian(PrimeSet({3}), 6, 8);
    CHECK(L.all_verified());
    REQUIRE(L.f.size() == 1);
    CHECK(L.f[0].equals(L.psi1[0]));
    for (auto& r : L.reports) {
        CHECK(r.ok());
        CHECK(r.defect_valuation >= 6);
    }
}

TEST_CASE("two prime Laplacian") {
    auto L = gm_laplacian(PrimeSet({2, 3}), 6, 10);
    CHECK(L.all_verified());
    // torsion vanishing: f_k at the canonical lift of x = -1 for odd p
    AffinePresentation X{{"x"}, {}, JetPoly::variable(JetVar("x"))};
    auto lift = canonical_lift(X, L.P, {{"x", -1}}, MultiIndex({1, 1}));
    long p = 3;
    int k = 1;
    mpq_class num = L.f[k].num().eval(lift);
    mpq_class den = L.f[k].den_poly().eval(lift);
    mpq_class value = num / den;
    CHECK(val_p(value, p) >= 6);
}

TEST_CASE("origin primitive") {
    PrimeSet P({3});
    auto psi = gm_psi_e_m_0(P, 6, 8);
    CHECK(psi.constant_term() == 0);
    CHECK(psi.coeff(Monomial::var(JetVar("T"))) == -1);
    CHECK(psi.coeff(Monomial::var(JetVar("T", MultiIndex({1})))) == 1);
    CHECK(psi.min_valuation(3) >= 0);
}

TEST_CASE("invariance of the omega_r basis") {
    PrimeSet P({3});
    DeltaRing R(P);
    int D = 8;
    auto w0 = gm_omega_r_chart(R, MultiIndex({0}), D);
    auto w1 = gm_omega_r_chart(R, MultiIndex({1}), D);
    CHECK(gm_invariance_defect(P, w0, D).is_zero());
    CHECK(gm_invariance_defect(P, w1, D).is_zero());
    CHECK(gm_invariance_defect(P, w0.scaled(5).sub(w1.scaled(2)), D).is_zero());
    // x dx = (1 + T) dT is not invariant
    ChartForm xdx;
    xdx.c.emplace(JetVar("T"),
                  JetPoly::constant(1) + JetPoly::variable(JetVar("T")));
    CHECK_FALSE(gm_invariance_defect(P, xdx, D).is_zero());
}

TEST_CASE("invariance with two primes") {
    PrimeSet P({2, 3});
    DeltaRing R(P);
    int D = 6;
    auto w = gm_omega_r_chart(R, MultiIndex({1, 1}), D);
    CHECK(gm_invariance_defect(P, w, D).is_zero());
}

TEST_CASE("wedge absorption for the multiplicative group") {
    CHECK(gm_wedge_absorption(PrimeSet({3}), MultiIndex({1})).ok());
    CHECK(gm_wedge_absorption(PrimeSet({2, 3}), MultiIndex({1, 1})).ok());
}

TEST_CASE("elliptic psi2") {
    auto psi = ec_psi2(1, 1, 5, 6, 8);
    CHECK(psi.constant_term() == 0);
    CHECK(psi.min_valuation(5) >= 0);
    // supersingular at 5: a = 0, b = 1 has trace zero
    CHECK(ec_trace(0, 1, 5) == 0);
    auto ss = ec_psi2(0, 1, 5, 6, 8);
    CHECK(ss.min_valuation(5) >= 0);
}

TEST_CASE("elliptic Laplacian, single prime") {
    auto L = ec_laplacian(1, 1, PrimeSet({5}), 6, 10);
    CHECK(L.traces[0] == -3);
    CHECK(L.all_verified());
    bool has_wedge = false, has_71 = false;
    for (auto& r : L.reports) {
        if (r.identity == "wedge_absorption") has_wedge = true;
        if (r.identity == "d psi2=hecke omega") has_71 = true;
    }
    CHECK(has_wedge);
    CHECK(has_71);
}

TEST_CASE("elliptic Laplacian rejects small primes") {
    CHECK_THROWS_AS((void)ec_laplacian(1, 1, PrimeSet({2, 3}), 6, 10), Error);
}
