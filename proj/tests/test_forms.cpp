#include <doctest.h>

#include <random>

#include <djet/error.hpp>
#include <djet/forms.hpp>
#include <djet/text.hpp>

using namespace djet;

namespace {

JetPoly xv() { return JetPoly::variable(JetVar("x")); }
JetPoly yv() { return JetPoly::variable(JetVar("y")); }

// multiplicative group chart: localize at the coordinate itself
LocCtx gm_ctx(std::vector<long> primes) {
    return std::make_shared<Localization>(PrimeSet(std::move(primes)), xv());
}

// trivial localization, denominators never needed
LocCtx plain_ctx(std::vector<long> primes) {
    return std::make_shared<Localization>(PrimeSet(std::move(primes)),
                                          JetPoly::constant(1));
}

LocalizedJetElem one_over_x(const LocCtx& ctx) {
    return LocalizedJetElem(ctx, JetPoly::constant(1),
                            {{MultiIndex::zero(ctx->primes().dim()), 1}});
}

// dx / x
DifferentialForm gm_form(const LocCtx& ctx) {
    DifferentialForm w(1);
    w.insert({JetVar("x")}, one_over_x(ctx));
    return w;
}

} // namespace

TEST_CASE("localized elements: arithmetic and normal forms") {
    auto ctx = gm_ctx({2});
    MultiIndex z = MultiIndex::zero(1);
    LocalizedJetElem inv = one_over_x(ctx);

    SUBCASE("x * 1/x = 1") {
        LocalizedJetElem x(ctx, xv());
        CHECK(x.mul(inv).normalized().as_poly() == JetPoly::constant(1));
    }
    SUBCASE("addition over a common denominator") {
        LocalizedJetElem x(ctx, xv());
        // x + 1/x = (x^2 + 1)/x
        auto s = x.add(inv);
        CHECK(s.num() == xv().pow(2) + JetPoly::constant(1));
        CHECK(s.den().at(z) == 1);
    }
    SUBCASE("partial uses the quotient rule") {
        auto dinv = inv.partial(JetVar("x"));
        CHECK(dinv.equals(LocalizedJetElem(ctx, JetPoly::constant(-1), {{z, 2}})));
    }
    SUBCASE("Frobenius shifts denominator levels") {
        auto img = inv.phi_multi(MultiIndex({1}));
        CHECK(img.num() == JetPoly::constant(1));
        CHECK(img.den().size() == 1);
        CHECK(img.den().at(MultiIndex({1})) == 1);
        // phi is a ring map: phi(x) * phi(1/x) = 1
        LocalizedJetElem x(ctx, xv());
        CHECK(x.phi_multi(MultiIndex({1}))
                  .mul(img)
                  .normalized()
                  .as_poly() == JetPoly::constant(1));
    }
    SUBCASE("normalization cancels localizer factors") {
        LocalizedJetElem e(ctx, xv().pow(3), {{z, 2}});
        auto n = e.normalized();
        CHECK(n.num() == xv());
        CHECK(n.den().empty());
    }
    SUBCASE("units") {
        CHECK(LocalizedJetElem(ctx, xv()).is_unit());
        CHECK(one_over_x(ctx).is_unit());
        CHECK(LocalizedJetElem(ctx, JetPoly::constant(3)).is_unit());
        CHECK_FALSE(LocalizedJetElem(ctx, JetPoly::constant(2)).is_unit());
        CHECK_FALSE(LocalizedJetElem(ctx, xv() + JetPoly::constant(1)).is_unit());
        CHECK_FALSE(LocalizedJetElem(ctx, JetPoly()).is_unit());
    }
}

TEST_CASE("exterior algebra basics") {
    auto ctx = plain_ctx({2});
    DifferentialForm dx = DifferentialForm::dvar(ctx, JetVar("x"));
    DifferentialForm dy = DifferentialForm::dvar(ctx, JetVar("y"));

    SUBCASE("antisymmetry and repeated factors") {
        CHECK(dx.wedge(dy).equals(dy.wedge(dx).neg()));
        CHECK(dx.wedge(dx).is_zero());
    }
    SUBCASE("d of a product of coordinates") {
        LocalizedJetElem f(ctx, xv() * yv());
        DifferentialForm df = DifferentialForm::d_of(f);
        DifferentialForm expect =
            dx.scaled(LocalizedJetElem(ctx, yv())).add(dy.scaled(LocalizedJetElem(ctx, xv())));
        CHECK(df.equals(expect));
    }
    SUBCASE("d squared is zero") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<long> c(-5, 5);
        JetPoly f;
        for (int t = 0; t < 6; ++t) {
            Monomial m = Monomial::var(JetVar("x"), static_cast<int>(1 + (rng() % 3)))
                             .times(Monomial::var(JetVar("y"), static_cast<int>(rng() % 3)));
            f += JetPoly::monomial(m, c(rng));
        }
        DifferentialForm w = DifferentialForm::d_of(LocalizedJetElem(ctx, f));
        CHECK(w.d().is_zero());
        // and with a denominator present
        auto g = gm_ctx({2});
        LocalizedJetElem h(g, xv() + JetPoly::constant(1),
                           {{MultiIndex::zero(1), 1}});
        CHECK(DifferentialForm::d_of(h).d().is_zero());
    }
}

TEST_CASE("divided Frobenius of x dy at p = 2") {
    auto ctx = plain_ctx({2});
    DeltaRing& R = ctx->ring();
    DifferentialForm w(1);
    w.insert({JetVar("y")}, LocalizedJetElem(ctx, xv()));

    auto w1 = divided_frobenius(w, MultiIndex({1}));
    // phi(x) (y^{p-1} dy + d(y@1))
    JetPoly phix = R.phi(0, xv());
    DifferentialForm expect(1);
    expect.insert({JetVar("y")}, LocalizedJetElem(ctx, phix * yv()));
    expect.insert({JetVar("y", MultiIndex({1}))}, LocalizedJetElem(ctx, phix));
    CHECK(w1.equals(expect));
}

TEST_CASE("divided Frobenius is monoidal on wedges") {
    auto ctx = plain_ctx({2});
    DifferentialForm w(1), e(1);
    w.insert({JetVar("y")}, LocalizedJetElem(ctx, xv()));
    e.insert({JetVar("x")}, LocalizedJetElem(ctx, yv().pow(2)));
    MultiIndex r({1});
    auto lhs = divided_frobenius(w.wedge(e), r);
    auto rhs = divided_frobenius(w, r).wedge(divided_frobenius(e, r));
    CHECK(lhs.equals(rhs));
}

TEST_CASE("divided Frobenius commutes with d up to the prime factor") {
    // d(w_r) = P^r (dw)_r for a 1-form w
    auto ctx = plain_ctx({3});
    DifferentialForm w(1);
    w.insert({JetVar("y")}, LocalizedJetElem(ctx, xv().pow(2)));
    MultiIndex r({1});
    auto lhs = divided_frobenius(w, r).d();
    auto rhs = divided_frobenius(w.d(), r).scaled(mpq_class(3));
    CHECK(lhs.equals(rhs));
}

TEST_CASE("conjugates of the invariant derivation at p = 2") {
    PrimeSet P({2});
    DeltaRing R(P);
    auto conj = conjugate_derivations(R, {{"x", xv()}}, MultiIndex({2}));
    JetVar x1("x", MultiIndex({1}));
    JetVar x2("x", MultiIndex({2}));
    JetPoly phix = R.phi(0, xv());

    CHECK(conj.at(MultiIndex({0})).values.at(JetVar("x")) == xv());
    CHECK(conj.at(MultiIndex({1})).values.at(JetVar("x")).is_zero());
    CHECK(conj.at(MultiIndex({0})).values.at(x1) == -xv().pow(2));
    CHECK(conj.at(MultiIndex({1})).values.at(x1) == phix);
    CHECK(conj.at(MultiIndex({2})).values.at(x1).is_zero());
    // second level follows the same recursion
    CHECK(conj.at(MultiIndex({0})).values.at(x2) ==
          JetPoly::variable(x1) * xv().pow(2));
    CHECK(conj.at(MultiIndex({1})).values.at(x2) ==
          R.phi(0, -xv().pow(2)) - JetPoly::variable(x1) * phix);
    CHECK(conj.at(MultiIndex({2})).values.at(x2) == R.phi(0, phix));
}

TEST_CASE("scaling a derivation conjugates through Frobenius") {
    PrimeSet P({2, 3});
    DeltaRing R(P);
    MultiIndex n({1, 1});
    auto base = conjugate_derivations(R, {{"x", JetPoly::constant(1)}}, n);
    auto scaled = conjugate_derivations(R, {{"x", xv()}}, n);
    for (auto& r : indices_below(n)) {
        JetPoly a = R.phi_multi(r, xv());
        for (auto& [v, val] : base.at(r).values)
            CHECK(scaled.at(r).values.at(v) == a * val);
    }
}

TEST_CASE("dual families on the multiplicative group, one prime") {
    auto ctx = gm_ctx({2});
    MultiIndex n({2});
    auto basis = dual_basis(ctx, {"x"}, {gm_form(ctx)}, {{{"x", xv()}}}, n);

    SUBCASE("pairing is the identity matrix") {
        for (auto& r : indices_below(n))
            for (auto& s : indices_below(n)) {
                auto v = pairing(basis.omega.at({0, r}), basis.del.at({0, s}));
                if (r == s)
                    CHECK(v.equals(LocalizedJetElem(ctx, JetPoly::constant(1))));
                else
                    CHECK(v.is_zero());
            }
    }
    SUBCASE("the basis forms are closed") {
        for (auto& r : indices_below(n))
            CHECK(basis.omega.at({0, r}).d().is_zero());
    }
    SUBCASE("df expands with derivation coefficients") {
        LocalizedJetElem f(ctx,
                           xv().pow(3) +
                               JetPoly::variable(JetVar("x", MultiIndex({1}))) * xv());
        auto coeffs = df_expansion(f, basis);
        for (auto& [key, c] : coeffs)
            CHECK(c.equals(basis.del.at(key).apply(f)));
    }
    SUBCASE("volume form has unit determinant") {
        auto vol = volume_form(basis, ctx, n);
        CHECK(vol.degree() == 3);
        CHECK_FALSE(vol.is_zero());
    }
}

TEST_CASE("dual families on the multiplicative group, two primes") {
    auto ctx = gm_ctx({2, 3});
    MultiIndex n({1, 1});
    auto basis = dual_basis(ctx, {"x"}, {gm_form(ctx)}, {{{"x", xv()}}}, n);

    for (auto& r : indices_below(n))
        for (auto& s : indices_below(n)) {
            auto v = pairing(basis.omega.at({0, r}), basis.del.at({0, s}));
            if (r == s)
                CHECK(v.equals(LocalizedJetElem(ctx, JetPoly::constant(1))));
            else
                CHECK(v.is_zero());
        }
    CHECK_NOTHROW((void)volume_form(basis, ctx, n));
}

TEST_CASE("df expansion rejects a broken basis") {
    auto ctx = gm_ctx({2});
    MultiIndex n({1});
    auto basis = dual_basis(ctx, {"x"}, {gm_form(ctx)}, {{{"x", xv()}}}, n);
    // tamper with one form so reconstruction cannot match
    basis.omega.at({0, MultiIndex({1})}) =
        basis.omega.at({0, MultiIndex({1})}).scaled(mpq_class(2));
    LocalizedJetElem f(ctx, JetPoly::variable(JetVar("x", MultiIndex({1}))));
    CHECK_THROWS_AS((void)df_expansion(f, basis), Error);
}
