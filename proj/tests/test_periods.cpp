#include <doctest.h>

#include <djet/error.hpp>
#include <djet/laplacian.hpp>
#include <djet/periods.hpp>

using namespace djet;

namespace {

const GmLaplacianData& data35() {
    static GmLaplacianData L = gm_laplacian(PrimeSet({3, 5}), 6, 10);
    return L;
}

Chain square_cycle(const mpq_class& x14) {
    // vertical at 3 down to x = 1, across to 5, vertical back up to x14
    Chain g;
    g.points = {{3, x14}, {3, 1}, {5, 1}, {5, x14}, {3, x14}};
    return g;
}

mpz_class add_mod(const mpz_class& a, const mpz_class& b, long p, int N) {
    mpz_class M;
    mpz_ui_pow_ui(M.get_mpz_t(), p, N);
    return ((a + b) % M + M) % M;
}

} // namespace

TEST_CASE("chain JSON round trip and validation") {
    auto j = nlohmann::json::parse(R"({"omega":"gm_omega_e","points":[
        {"prime":3,"base_x":"2","kind":"canonical_lift"},
        {"prime":3,"base_x":"-1/2"}]})");
    Chain g = chain_from_json(j);
    REQUIRE(g.points.size() == 2);
    CHECK(g.points[0].prime == 3);
    CHECK(g.points[1].base_x == mpq_class(-1, 2));
    CHECK_FALSE(g.is_cycle());
    CHECK(g.then(g.reversed()).is_cycle());

    CHECK_THROWS_AS((void)chain_from_json(nlohmann::json::parse("[]")), Error);
    CHECK_THROWS_AS(
        (void)chain_from_json(nlohmann::json::parse(
            R"({"points":[{"prime":3,"base_x":"2","kind":"ghost"}]})")),
        Error);
    CHECK_THROWS_AS((void)chain_from_json(nlohmann::json::parse(
                        R"({"omega":"other","points":[]})")),
                    Error);
}

TEST_CASE("horizontal segments contribute zero") {
    Chain g;
    g.points = {{3, 2}, {5, 2}, {3, 2}};
    auto v = integrate(data35(), g);
    REQUIRE(v.components.size() == 2);
    CHECK(v.components[0].value == 0);
    CHECK(v.components[1].value == 0);
    // mismatched base points across primes are rejected
    Chain bad;
    bad.points = {{3, 2}, {5, 7}};
    CHECK_THROWS_AS((void)integrate(data35(), bad), Error);
}

TEST_CASE("torsion cycle integrates to zero") {
    auto v = integrate(data35(), square_cycle(-1));
    CHECK(v.components[0].value == 0);
    CHECK(v.components[1].value == 0);
    CHECK(period_reduce(v, 5) == "zero_within_bound");
}

TEST_CASE("the x = 2 cycle is nonzero at this precision") {
    auto v = integrate(data35(), square_cycle(2));
    bool some_nonzero =
        v.components[0].value != 0 || v.components[1].value != 0;
    CHECK(some_nonzero);
    CHECK(period_reduce(v, 8) == "nonzero_at_precision");
}

TEST_CASE("additivity and reversal") {
    Chain g1, g2;
    g1.points = {{3, 2}, {3, 7}};
    g2.points = {{3, 7}, {3, 4}};
    auto v1 = integrate(data35(), g1);
    auto v2 = integrate(data35(), g2);
    auto v12 = integrate(data35(), g1.then(g2));
    for (int k = 0; k < 2; ++k)
        CHECK(v12.components[k].value ==
              add_mod(v1.components[k].value, v2.components[k].value,
                      v12.components[k].prime, v12.components[k].precision));
    auto vr = integrate(data35(), g1.reversed());
    for (int k = 0; k < 2; ++k)
        CHECK(add_mod(v1.components[k].value, vr.components[k].value,
                      v1.components[k].prime, v1.components[k].precision) == 0);
}

TEST_CASE("reduction modulo diagonal rational relations") {
    PeriodValue v;
    v.components = {{3, mod_prime_power(mpq_class(2), 3, 6), 6},
                    {5, mod_prime_power(mpq_class(-2), 5, 6), 6}};
    CHECK(period_reduce(v, 3) == "zero_within_bound");
    // translating by a relation tuple does not change the report
    PeriodValue w;
    w.components = {{3, mod_prime_power(mpq_class(2 + 1), 3, 6), 6},
                    {5, mod_prime_power(mpq_class(-2 - 1), 5, 6), 6}};
    CHECK(period_reduce(w, 3) == "zero_within_bound");

    PeriodValue nz;
    nz.components = {{3, 1, 6}, {5, 0, 6}};
    CHECK(period_reduce(nz, 4) == "nonzero_at_precision");

    PeriodValue half;
    half.components = {{3, mod_prime_power(mpq_class(1, 2), 3, 6), 6},
                       {5, mod_prime_power(mpq_class(-1, 2), 5, 6), 6}};
    CHECK(period_reduce(half, 2) == "zero_within_bound");
    CHECK(period_reduce(half, 1) == "nonzero_at_precision");
}

TEST_CASE("period JSON") {
    PeriodValue v;
    v.components = {{3, 10, 8}, {5, 0, 8}};
    auto j = to_json(v, "nonzero_at_precision");
    CHECK(j["components"][0]["prime"] == 3);
    CHECK(j["components"][0]["value"] == "10");
    CHECK(j["components"][1]["precision"] == 8);
    CHECK(j["reduced"] == "nonzero_at_precision");
}
