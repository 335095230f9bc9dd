#include <doctest.h>

#include <djet/error.hpp>
#include <djet/group.hpp>
#include <djet/text.hpp>

using namespace djet;

namespace {

JetPoly subst2(const JetPoly& f, const JetPoly& a, const JetPoly& b, int cap) {
    return f.substituted_capped({{JetVar("T1"), a}, {JetVar("T2"), b}}, cap);
}

} // namespace

TEST_CASE("series inversion and logarithm helpers") {
    JetPoly T = JetPoly::variable(JetVar("T"));
    JetPoly f = JetPoly::constant(2) + T.scaled(3);
    JetPoly inv = invert_unit_series(f, 8);
    CHECK(f.mul_capped(inv, 8) == JetPoly::constant(1));
    CHECK_THROWS_AS((void)invert_unit_series(T, 4), Error);
    // d log(1+T) = 1/(1+T)
    JetPoly l = log_series(JetVar("T"), 9);
    CHECK(l.partial(JetVar("T")) ==
          invert_unit_series(JetPoly::constant(1) + T, 8));
}

TEST_CASE("multiplicative formal group") {
    auto G = gm_formal_group(10);
    JetPoly T = JetPoly::variable(JetVar("T"));
    CHECK(subst2(G.F, T, JetPoly(), 10) == T);
    // additivity of the logarithm
    JetPoly lhs = G.log.substituted_capped({{JetVar("T"), G.F}}, 10);
    JetPoly rhs = G.log.substituted_capped(
                      {{JetVar("T"), JetPoly::variable(JetVar("T1"))}}, 10) +
                  G.log.substituted_capped(
                      {{JetVar("T"), JetPoly::variable(JetVar("T2"))}}, 10);
    CHECK(lhs == rhs);
    CHECK(G.log_coeff(1) == 1);
    CHECK(G.log_coeff(2) == mpq_class(-1, 2));
}

TEST_CASE("elliptic formal group law") {
    auto G = ec_formal_group(1, 1, 10);
    JetPoly T = JetPoly::variable(JetVar("T"));
    JetPoly T1 = JetPoly::variable(JetVar("T1"));
    JetPoly T2 = JetPoly::variable(JetVar("T2"));

    SUBCASE("unit and commutativity") {
        CHECK(subst2(G.F, T, JetPoly(), 10) == T);
        CHECK(subst2(G.F, JetPoly(), T, 10) == T);
        CHECK(subst2(G.F, T2, T1, 10) == G.F);
    }
    SUBCASE("normalization of the logarithm") {
        CHECK(G.log_coeff(1) == 1);
        CHECK(G.log_coeff(2) == 0);
        CHECK(G.dlog == G.log.partial(JetVar("T")));
        CHECK(G.dlog.constant_term() == 1);
    }
    SUBCASE("logarithm additivity") {
        JetPoly lhs = G.log.substituted_capped({{JetVar("T"), G.F}}, 10);
        JetPoly rhs = G.log.substituted_capped({{JetVar("T"), T1}}, 10) +
                      G.log.substituted_capped({{JetVar("T"), T2}}, 10);
        CHECK(lhs == rhs);
    }
    SUBCASE("associativity at a lower window") {
        auto H = ec_formal_group(-1, 1, 8);
        JetPoly T3 = JetPoly::variable(JetVar("T3"));
        JetPoly left = subst2(H.F, subst2(H.F, T1, T2, 8), T3, 8);
        JetPoly right = subst2(H.F, T1, subst2(H.F, T2, T3, 8), 8);
        CHECK(left == right);
    }
}

TEST_CASE("traces by point counting") {
    CHECK(ec_trace(1, 1, 5) == -3);
    for (long p : {5L, 7L, 11L, 13L}) {
        long ap = ec_trace(1, 1, p);
        CHECK(static_cast<double>(ap) * ap <= 4.0 * p);
        long bp = ec_trace(-1, 1, p);
        CHECK(static_cast<double>(bp) * bp <= 4.0 * p);
    }
    CHECK_THROWS_AS((void)ec_trace(1, 1, 3), Error);
    CHECK_THROWS_AS((void)ec_trace(0, 0, 5), Error);
}

TEST_CASE("squarefree square decomposition") {
    auto d1 = moebius_decompose(1);
    CHECK(d1.m1 == 1);
    CHECK(d1.m2 == 1);
    CHECK(d1.mu == 1);
    auto dp = moebius_decompose(5);
    CHECK(dp.m1 == 5);
    CHECK(dp.mu == -1);
    auto dq = moebius_decompose(25);
    CHECK(dq.m1 == 1);
    CHECK(dq.m2 == 5);
    CHECK(dq.mu == 1);
    auto dr = moebius_decompose(175); // 7 * 5^2
    CHECK(dr.m1 == 7);
    CHECK(dr.m2 == 5);
    CHECK(dr.mu == -1);
    CHECK_THROWS_AS((void)moebius_decompose(8), Error);
}
