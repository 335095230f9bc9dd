#ifndef DJET_GROUP_HPP
#define DJET_GROUP_HPP

#include <vector>

#include "djet/chart.hpp"

namespace djet {

/// A one-parameter formal group law in the coordinate T, together with
/// its logarithm normalized so the linear coefficient is 1. F lives in
/// the variables T1, T2; log and dlog in T. All series are exact modulo
/// degree cap + 1.
struct FormalGroupLaw {
    int cap = 0;
    JetPoly F;    // F(T1, T2)
    JetPoly log;  // l(T), linear coefficient 1
    JetPoly dlog; // l'(T)

    mpq_class log_coeff(int n) const; // coefficient of T^n in log
};

/// Multiplicative group: F = T1 + T2 + T1*T2, log = log(1 + T).
FormalGroupLaw gm_formal_group(int cap);

/// Formal group of y^2 = x^3 + ax + b at the origin in the parameter
/// T = x/(2y), by Laurent expansion of the Weierstrass coordinates and
/// the chord construction; log integrates the normalized invariant
/// differential -dx/(4y).
FormalGroupLaw ec_formal_group(const mpq_class& a, const mpq_class& b, int cap);

/// p + 1 minus the F_p point count of y^2 = x^3 + ax + b, p >= 5 with
/// nonsingular reduction. Certifies the Hasse bound.
long ec_trace(const mpz_class& a, const mpz_class& b, long p);

/// m = m1 * m2^2 with m1, m2 squarefree and coprime; mu is the Moebius
/// value of m1. Fails when m has a cube factor.
struct SquareFreeSplit {
    long m1 = 1, m2 = 1;
    int mu = 1;
};
SquareFreeSplit moebius_decompose(long m);

} // namespace djet

#endif
