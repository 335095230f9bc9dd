#include "djet/delta.hpp"

#include "djet/error.hpp"

namespace djet {

JetPoly cp_polynomial(long p) {
    JetPoly X = JetPoly::variable(JetVar("X"));
    JetPoly Y = JetPoly::variable(JetVar("Y"));
    JetPoly out = cp_of(p, X, Y);
    if (!out.is_integral()) fail_verify("C_p is not integral");
    return out;
}

JetPoly cp_of(long p, const JetPoly& x, const JetPoly& y) {
    int e = static_cast<int>(p);
    return (x.pow(e) + y.pow(e) - (x + y).pow(e)).divided_exact(mpz_class(p));
}

mpq_class delta_int(long p, const mpq_class& n) {
    if (mpz_divisible_ui_p(n.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
        fail_arith("denominator of " + n.get_str() + " is divisible by " +
                   std::to_string(p));
    mpq_class np = n;
    for (long i = 1; i < p; ++i) np *= n;
    mpq_class out = (n - np) / p;
    out.canonicalize();
    return out;
}

JetPoly commutator_polynomial(long p1, long p2) {
    if (p1 == p2) fail_usage("commutator polynomial needs distinct primes");
    JetPoly X0 = JetPoly::variable(JetVar("X0"));
    JetPoly X1 = JetPoly::variable(JetVar("X1"));
    JetPoly X2 = JetPoly::variable(JetVar("X2"));
    JetPoly out = commutator_of(p1, p2, X0, X1, X2);
    if (!out.is_integral()) fail_verify("C_{p1,p2} is not integral");
    return out;
}

JetPoly commutator_of(long p1, long p2, const JetPoly& a0, const JetPoly& a1,
                      const JetPoly& a2) {
    int e1 = static_cast<int>(p1), e2 = static_cast<int>(p2);
    JetPoly out =
        cp_of(p2, a0.pow(e1), a1.scaled(p1)).divided_exact(mpz_class(p1)) -
        cp_of(p1, a0.pow(e2), a2.scaled(p2)).divided_exact(mpz_class(p2));
    out -= a2.pow(e1).scaled(delta_int(p1, p2) / p2);
    out += a1.pow(e2).scaled(delta_int(p2, p1) / p1);
    return out;
}

const JetPoly& DeltaRing::delta_var(int k, const JetVar& v) {
    MultiIndex idx = v.idx.dim() == 0 ? MultiIndex::zero(P_.dim()) : v.idx;
    if (idx.dim() != P_.dim())
        fail_arith("jet variable " + v.str() + " has wrong index dimension");
    auto key = std::make_pair(k, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Find the outermost operator already applied to the generator.
    int l = -1;
    for (int j = 0; j < P_.dim(); ++j)
        if (idx[j] > 0) {
            l = j;
            break;
        }
    JetPoly out;
    if (l < 0 || k <= l) {
        // delta_{p_k} becomes (or extends) the outermost operator, so the
        // word stays in canonical order: just bump the index.
        out = JetPoly::variable(JetVar(v.name, idx.plus_unit(k)));
    } else {
        // v = delta_{p_l}(g) with l < k; rewrite delta_k delta_l as
        // delta_l delta_k plus the universal commutator.
        JetVar g(v.name, idx.minus(MultiIndex::unit(P_.dim(), l)));
        JetPoly gp = JetPoly::variable(g);
        JetPoly dk_g = delta_var(k, g);
        out = delta(l, dk_g) +
              commutator_of(P_.prime(k), P_.prime(l), gp, dk_g, delta_var(l, g));
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
}

JetPoly DeltaRing::phi_var(int k, const JetVar& v) {
    long p = P_.prime(k);
    return JetPoly::variable(v).pow(static_cast<int>(p)) +
           delta_var(k, v).scaled(p);
}

JetPoly DeltaRing::phi(int k, const JetPoly& f) {
    std::map<JetVar, JetPoly> images;
    for (auto& v : f.variables()) images.emplace(v, phi_var(k, v));
    return f.substituted(images);
}

JetPoly DeltaRing::delta(int k, const JetPoly& f) {
    long p = P_.prime(k);
    return (phi(k, f) - f.pow(static_cast<int>(p))).divided_exact(mpz_class(p));
}

JetPoly DeltaRing::delta_multi(const MultiIndex& i, const JetPoly& f) {
    JetPoly out = f;
    for (int k = P_.dim() - 1; k >= 0; --k)
        for (int j = 0; j < i[k]; ++j) out = delta(k, out);
    return out;
}

JetPoly DeltaRing::phi_multi(const MultiIndex& s, const JetPoly& f) {
    JetPoly out = f;
    for (int k = P_.dim() - 1; k >= 0; --k)
        for (int j = 0; j < s[k]; ++j) out = phi(k, out);
    return out;
}

JetPoly DeltaRing::phi_capped(int k, const JetPoly& f, int cap,
                              const std::set<std::string>& laurent) {
    std::map<JetVar, JetPoly> images;
    for (auto& v : f.variables()) images.emplace(v, phi_var(k, v));
    return f.substituted_capped(images, cap, laurent);
}

JetPoly DeltaRing::phi_multi_capped(const MultiIndex& s, const JetPoly& f, int cap,
                                    const std::set<std::string>& laurent) {
    JetPoly out = f.truncated(cap, laurent);
    for (int k = P_.dim() - 1; k >= 0; --k)
        for (int j = 0; j < s[k]; ++j) out = phi_capped(k, out, cap, laurent);
    return out;
}

} // namespace djet
