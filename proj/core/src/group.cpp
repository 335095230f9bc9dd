#include "djet/group.hpp"

#include "djet/error.hpp"

namespace djet {

mpq_class FormalGroupLaw::log_coeff(int n) const {
    return log.coeff(Monomial::var(JetVar("T"), n));
}

FormalGroupLaw gm_formal_group(int cap) {
    if (cap < 1) fail_usage("degree cap must be at least 1");
    FormalGroupLaw out;
    out.cap = cap;
    JetPoly T1 = JetPoly::variable(JetVar("T1"));
    JetPoly T2 = JetPoly::variable(JetVar("T2"));
    out.F = (T1 + T2 + T1 * T2).truncated(cap);
    out.log = log_series(JetVar("T"), cap);
    out.dlog = invert_unit_series(
        JetPoly::constant(1) + JetPoly::variable(JetVar("T")), cap - 1);
    return out;
}

namespace {

// w(z) = z^3 + a z w^2 + b w^3, solved by iteration
JetPoly weierstrass_w(const mpq_class& a, const mpq_class& b, int cap) {
    JetPoly z = JetPoly::variable(JetVar("z1"));
    JetPoly w = z.pow(3);
    for (int it = 0; it < cap; ++it) {
        JetPoly next = z.pow(3) + (z * w.mul_capped(w, cap)).truncated(cap).scaled(a) +
                       w.mul_capped(w.mul_capped(w, cap), cap).scaled(b);
        if (next == w) break;
        w = std::move(next);
    }
    return w;
}

// (w(z2) - w(z1)) / (z2 - z1) as a power series in z1, z2
JetPoly divided_difference(const JetPoly& w, int cap) {
    JetVar z1("z1"), z2("z2");
    JetPoly out;
    for (auto& [m, c] : w.terms()) {
        int n = m.degree();
        for (int i = 0; i + 1 <= n && i <= cap; ++i) {
            if (i + (n - 1 - i) > cap) continue;
            Monomial mm = Monomial::var(z1, i).times(Monomial::var(z2, n - 1 - i));
            out += JetPoly::monomial(mm, c);
        }
    }
    return out;
}

} // namespace

FormalGroupLaw ec_formal_group(const mpq_class& a, const mpq_class& b, int cap) {
    if (cap < 3) fail_usage("degree cap must be at least 3");
    if (-4 * a * a * a - 27 * b * b == 0) fail_arith("singular curve");
    FormalGroupLaw out;
    out.cap = cap;
    int W = cap + 2;

    // x = u/(4T^2), y = u/(8T^3) with u = 1 - 16a T^4/u - 64b T^6/u^2
    JetVar Tv("T");
    JetPoly T = JetPoly::variable(Tv);
    JetPoly u = JetPoly::constant(1);
    for (int it = 0; it <= W / 4 + 1; ++it) {
        JetPoly inv = invert_unit_series(u, W);
        JetPoly next = JetPoly::constant(1) -
                       T.pow(4).mul_capped(inv, W).scaled(16 * a) -
                       T.pow(6).mul_capped(inv.mul_capped(inv, W), W).scaled(64 * b);
        if (next == u) break;
        u = std::move(next);
    }
    // l'(T) = (2u - T u') / (2u): the expansion of -dx/(4y)
    JetPoly lp = (u.scaled(2) - T * u.partial(Tv))
                     .mul_capped(invert_unit_series(u.scaled(2), W), W);
    out.dlog = lp.truncated(cap - 1);
    for (int n = 1; n <= cap; ++n) {
        mpq_class c = lp.coeff(Monomial::var(Tv, n - 1)) / n;
        if (c != 0) out.log += JetPoly::monomial(Monomial::var(Tv, n), c);
    }

    // chord law in z = -2T: third intersection of the line through
    // (z1, w(z1)), (z2, w(z2)) with w = z^3 + a z w^2 + b w^3
    JetVar z1v("z1"), z2v("z2");
    JetPoly z1 = JetPoly::variable(z1v), z2 = JetPoly::variable(z2v);
    JetPoly w = weierstrass_w(a, b, W);
    JetPoly lam = divided_difference(w, W);
    JetPoly w1 = w.substituted_capped({{z1v, z1}}, W); // w in z1 only
    JetPoly nu = (w1 - lam.mul_capped(z1, W)).truncated(W);
    JetPoly lam2 = lam.mul_capped(lam, W);
    JetPoly c3 = JetPoly::constant(1) + lam2.scaled(a) +
                 lam2.mul_capped(lam, W).scaled(b);
    JetPoly c2 = (lam.mul_capped(nu, W).scaled(2 * a) +
                  lam2.mul_capped(nu, W).scaled(3 * b))
                     .truncated(W);
    JetPoly Fz = z1 + z2 + c2.mul_capped(invert_unit_series(c3, W), W);
    JetPoly T1 = JetPoly::variable(JetVar("T1")).scaled(-2);
    JetPoly T2 = JetPoly::variable(JetVar("T2")).scaled(-2);
    out.F = Fz.substituted_capped({{z1v, T1}, {z2v, T2}}, cap).scaled(mpq_class(-1, 2));
    return out;
}

long ec_trace(const mpz_class& a, const mpz_class& b, long p) {
    if (p < 5 || !is_prime(p)) fail_usage("trace requires a prime p >= 5");
    mpz_class pz(p);
    mpz_class disc = (4 * a * a * a + 27 * b * b) % pz;
    if (disc == 0) fail_arith("singular reduction at " + std::to_string(p));
    mpz_class am = ((a % pz) + pz) % pz, bm = ((b % pz) + pz) % pz;
    long count = 1; // point at infinity
    mpz_class e = (pz - 1) / 2;
    for (long x = 0; x < p; ++x) {
        mpz_class r = (mpz_class(x) * x % pz * x + am * x + bm) % pz;
        if (r == 0) {
            count += 1;
            continue;
        }
        mpz_class s;
        mpz_powm(s.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
        if (s == 1) count += 2;
    }
    long ap = p + 1 - count;
    if (static_cast<double>(ap) * ap > 4.0 * p)
        fail_verify("trace violates the Hasse bound");
    return ap;
}

SquareFreeSplit moebius_decompose(long m) {
    if (m <= 0) fail_usage("decomposition needs a positive integer");
    SquareFreeSplit out;
    for (long q = 2; q * q <= m; ++q) {
        int e = 0;
        while (m % q == 0) {
            m /= q;
            ++e;
        }
        if (e == 0) continue;
        if (e == 1) {
            out.m1 *= q;
            out.mu = -out.mu;
        } else if (e == 2) {
            out.m2 *= q;
        } else {
            fail_arith("cube factor in Moebius decomposition");
        }
    }
    if (m > 1) {
        out.m1 *= m;
        out.mu = -out.mu;
    }
    return out;
}

} // namespace djet
