#ifndef DJET_LAPLACIAN_HPP
#define DJET_LAPLACIAN_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "djet/forms.hpp"
#include "djet/group.hpp"

namespace djet {

/// Outcome of one identity verification. defect_valuation is the least
/// p-adic valuation of the defect, VAL_INF when the defect vanishes
/// identically inside the window.
struct IdentityReport {
    std::string identity;
    long prime = 0;
    int precision = 0;
    int degree = 0;
    std::string status; // "verified" or "failed"
    long defect_valuation = 0;

    bool ok() const { return status == "verified"; }
};
nlohmann::json to_json(const IdentityReport& r);

// ---- multiplicative group, global jet chart localized at x ----

/// The localized chart of the multiplicative group: coordinate x,
/// denominators generated by the phi^i(x).
LocCtx gm_chart(const PrimeSet& P);

/// dx/x on the chart.
DifferentialForm gm_base_form(const LocCtx& ctx);

/// (1/p_k) log(phi_k(x)/x^{p_k}) truncated: term n kept while n <= D
/// and the p_k-valuation of p_k^{n-1}/n stays below N.
LocalizedJetElem gm_psi1(const LocCtx& ctx, int k, int N, int D);

/// Alternating sum of the divided Frobenius forms of dx/x over r <= e.
DifferentialForm gm_omega_e(const LocCtx& ctx);
/// The same form assembled over squarefree divisors of p_1...p_d.
DifferentialForm gm_omega_e_moebius(const LocCtx& ctx);

struct GmLaplacianData {
    PrimeSet P;
    int N = 0, D = 0;
    LocCtx ctx;
    std::vector<LocalizedJetElem> psi1; // per prime
    std::vector<LocalizedJetElem> f;    // per prime
    DifferentialForm omega_e;
    JetPoly psi0; // formal primitive at the origin, variables delta^i T
    std::vector<IdentityReport> reports;
    bool all_verified() const;
};

/// Builds psi1 and f_k for every prime and verifies df_k = omega^(e),
/// the conjugate-coefficient identity and the agreement of the origin
/// expansion of f_k with the formal primitive.
GmLaplacianData gm_laplacian(const PrimeSet& P, int N, int D);

/// -prod_k (1 - phi_k/p_k) applied to log(1 + T) in jet variables of T,
/// truncated at degree D; coefficient integrality at each prime is
/// asserted.
JetPoly gm_psi_e_m_0(const PrimeSet& P, int N, int D);

/// omega_r of dx/x written in the origin coordinate T = x - 1.
ChartForm gm_omega_r_chart(DeltaRing& R, const MultiIndex& r, int D);

/// mu* - pr_1* - pr_2* of a 1-form in jet variables of T, under the
/// group law T1 + T2 + T1*T2 prolonged to jets; zero for invariant
/// forms.
ChartForm gm_invariance_defect(const PrimeSet& P, const ChartForm& form, int D);

/// Exact wedge identity /\_{r<=n} omega_r = -omega^(e) /\ (rest).
IdentityReport gm_wedge_absorption(const PrimeSet& P, const MultiIndex& n);

// ---- elliptic curves, formal chart at the origin ----

/// (1/p)(phi^2 - a_p phi + p) applied to the formal logarithm, in jet
/// variables delta^i T, i <= 2e_k; integrality and vanishing at the
/// origin asserted.
JetPoly ec_psi2(const mpz_class& a, const mpz_class& b, long p, int N, int D);

struct EcLaplacianData {
    PrimeSet P;
    int N = 0, D = 0;
    mpz_class a, b;
    std::vector<long> traces;
    FormalGroupLaw G;
    std::vector<JetPoly> psi2; // per prime
    std::vector<JetPoly> f;    // per prime; all agree with the formal primitive
    JetPoly psi2e0;            // the common formal primitive
    ChartForm omega;           // l'(T) dT
    ChartForm omega_2e;
    std::vector<IdentityReport> reports;
    bool all_verified() const;
};

/// Laplacian data for y^2 = x^3 + ax + b over the prime set (all >= 5,
/// good reduction); verifies df_k = omega^(2e), the coefficient law
/// del_r f = mu(m')m'' a_{m'}, the Moebius expansion of omega^(2e) and
/// the wedge absorption identity at order 2 for d = 1.
EcLaplacianData ec_laplacian(const mpz_class& a, const mpz_class& b,
                             const PrimeSet& P, int N, int D);

/// Writes w in the basis {omega_r : r <= n} by triangular elimination;
/// the residual after removing all basis components is returned through
/// `residual` when non-null.
std::map<MultiIndex, JetPoly>
expand_in_omega_basis(const ChartForm& w,
                      const std::map<MultiIndex, ChartForm>& omegas,
                      const MultiIndex& n, int cap, ChartForm* residual);

} // namespace djet

#endif
