#ifndef DJET_FORMS_HPP
#define DJET_FORMS_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "djet/delta.hpp"

namespace djet {

/// Ambient data for a localized jet ring: the prime set, the delta
/// structure, and the localizing element g whose Frobenius transforms
/// phi^i(g) are the only denominators allowed.
class Localization {
  public:
    Localization(PrimeSet P, JetPoly g);
    const PrimeSet& primes() const { return P_; }
    DeltaRing& ring() { return R_; }
    const JetPoly& g() const { return g_; }
    const JetPoly& phi_g(const MultiIndex& i); // cached

  private:
    PrimeSet P_;
    DeltaRing R_;
    JetPoly g_;
    std::map<MultiIndex, JetPoly> cache_;
};

using LocCtx = std::shared_ptr<Localization>;

/// Element num / prod_i phi^i(g)^{m_i} of the localized jet ring.
class LocalizedJetElem {
  public:
    LocalizedJetElem() = default; // zero, context-free
    LocalizedJetElem(LocCtx ctx, JetPoly num, std::map<MultiIndex, int> den = {});

    const LocCtx& ctx() const { return ctx_; }
    const JetPoly& num() const { return num_; }
    const std::map<MultiIndex, int>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// The denominator as an explicit polynomial.
    JetPoly den_poly() const;
    /// Requires an empty denominator.
    const JetPoly& as_poly() const;

    LocalizedJetElem add(const LocalizedJetElem& o) const;
    LocalizedJetElem sub(const LocalizedJetElem& o) const;
    LocalizedJetElem mul(const LocalizedJetElem& o) const;
    LocalizedJetElem neg() const;
    LocalizedJetElem scaled(const mpq_class& c) const;
    bool equals(const LocalizedJetElem& o) const; // cross-multiplication

    LocalizedJetElem partial(const JetVar& v) const; // quotient rule
    /// Frobenius lift as a ring map; denominator indices shift by s.
    LocalizedJetElem phi_multi(const MultiIndex& s) const;
    /// Cancel denominator factors dividing the numerator exactly.
    LocalizedJetElem normalized() const;
    /// True if the element is a unit: a constant of zero valuation at
    /// every prime times denominator/numerator factors phi^i(g).
    bool is_unit() const;

  private:
    LocCtx ctx_;
    JetPoly num_;
    std::map<MultiIndex, int> den_;
};

/// Exterior-algebra element; wedge monomials are strictly increasing
/// variable lists, signs absorbed into the coefficients.
class DifferentialForm {
  public:
    using Terms = std::map<std::vector<JetVar>, LocalizedJetElem>;

    explicit DifferentialForm(int degree = 0) : deg_(degree) {}
    static DifferentialForm dvar(const LocCtx& ctx, const JetVar& v);
    /// df for a ring element.
    static DifferentialForm d_of(const LocalizedJetElem& f);

    int degree() const { return deg_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const;

    DifferentialForm add(const DifferentialForm& o) const;
    DifferentialForm sub(const DifferentialForm& o) const;
    DifferentialForm neg() const;
    DifferentialForm scaled(const LocalizedJetElem& c) const;
    DifferentialForm scaled(const mpq_class& c) const;
    DifferentialForm wedge(const DifferentialForm& o) const;
    /// Exterior derivative, graded Leibniz rule.
    DifferentialForm d() const;
    bool equals(const DifferentialForm& o) const;

    void insert(std::vector<JetVar> wedge, const LocalizedJetElem& c);
    nlohmann::json to_json() const;

  private:
    int deg_;
    Terms t_;
};

/// omega_r = phi^{r*}(omega) / P^{i r} for a degree-i form. Verifies the
/// divisibility when the input has integral numerators.
DifferentialForm divided_frobenius(const DifferentialForm& omega, const MultiIndex& r);

/// The conjugate derivation of index r at jet order n: a value table on
/// the generators (a, s), s <= n, extended as a derivation.
struct ConjugateDerivation {
    MultiIndex r, n;
    std::map<JetVar, JetPoly> values;

    JetPoly apply_poly(const JetPoly& f) const;
    LocalizedJetElem apply(const LocalizedJetElem& f) const;
};

/// Build all conjugates of the derivation given by partial_table (base
/// variable name -> value of the derivation) for indices r <= n.
/// Throws ErrorKind::Verification if a table value fails integrality.
std::map<MultiIndex, ConjugateDerivation>
conjugate_derivations(DeltaRing& R, const std::map<std::string, JetPoly>& partial_table,
                      const MultiIndex& n);

/// <f dg, D> = f * D(g) extended linearly; omega must have degree 1.
LocalizedJetElem pairing(const DifferentialForm& omega, const ConjugateDerivation& D);

/// Dual families on a free chart: one base derivation and base 1-form
/// per coordinate, conjugated and divided-Frobenius'd over r <= n.
struct DualBasis {
    MultiIndex n;
    std::vector<std::string> vars;
    // key: (variable position a, index r)
    std::map<std::pair<int, MultiIndex>, DifferentialForm> omega;
    std::map<std::pair<int, MultiIndex>, ConjugateDerivation> del;
};
DualBasis dual_basis(const LocCtx& ctx, const std::vector<std::string>& vars,
                     const std::vector<DifferentialForm>& base_forms,
                     const std::vector<std::map<std::string, JetPoly>>& partial_tables,
                     const MultiIndex& n);

/// Coefficients del^a_r(f); asserts the reconstruction sums to df.
std::map<std::pair<int, MultiIndex>, LocalizedJetElem>
df_expansion(const LocalizedJetElem& f, const DualBasis& basis);

/// Wedge of all omega^a_r, r <= n in lexicographic order; certifies the
/// determinant against the coordinate differentials is a unit.
DifferentialForm volume_form(const DualBasis& basis, const LocCtx& ctx,
                             const MultiIndex& n);

} // namespace djet

#endif
