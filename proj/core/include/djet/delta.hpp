#ifndef DJET_DELTA_HPP
#define DJET_DELTA_HPP

#include <map>
#include <set>

#include "djet/poly.hpp"

namespace djet {

/// C_p(X,Y) = (X^p + Y^p - (X+Y)^p)/p in variables X, Y; integral.
JetPoly cp_polynomial(long p);
/// C_p applied to polynomial arguments.
JetPoly cp_of(long p, const JetPoly& x, const JetPoly& y);

/// The unique p-derivation on constants: (n - n^p)/p. Throws when p
/// divides the denominator of n.
mpq_class delta_int(long p, const mpq_class& n);

/// C_{p1,p2}(X0,X1,X2), the universal commutator polynomial; integral.
JetPoly commutator_polynomial(long p1, long p2);
JetPoly commutator_of(long p1, long p2, const JetPoly& a0, const JetPoly& a1,
                      const JetPoly& a2);

/// The delta structure on jet polynomial rings over a fixed prime set.
/// Jet variables carry multi-indices of dimension primes().dim(); the
/// generator name@(i) stands for the canonically ordered word of delta
/// operators applied to name, outermost operator belonging to the first
/// prime. Applying delta_{p_k} out of order is rewritten through the
/// commutator polynomial, so the Frobenius lifts commute exactly.
class DeltaRing {
  public:
    explicit DeltaRing(PrimeSet P) : P_(std::move(P)) {}
    const PrimeSet& primes() const { return P_; }

    /// delta_{p_k} of a single jet variable (memoized).
    const JetPoly& delta_var(int k, const JetVar& v);
    /// phi_{p_k}(v) = v^{p_k} + p_k * delta_var(k, v).
    JetPoly phi_var(int k, const JetVar& v);

    JetPoly delta(int k, const JetPoly& f);
    JetPoly phi(int k, const JetPoly& f);
    /// delta^i in canonical order (the last prime's operators innermost).
    JetPoly delta_multi(const MultiIndex& i, const JetPoly& f);
    /// phi^s; the lifts commute, canonical order used anyway.
    JetPoly phi_multi(const MultiIndex& s, const JetPoly& f);

    /// Degree-capped variants for work in truncated charts.
    JetPoly phi_capped(int k, const JetPoly& f, int cap,
                       const std::set<std::string>& laurent = {});
    JetPoly phi_multi_capped(const MultiIndex& s, const JetPoly& f, int cap,
                             const std::set<std::string>& laurent = {});

  private:
    PrimeSet P_;
    std::map<std::pair<int, JetVar>, JetPoly> memo_;
};

} // namespace djet

#endif
