#ifndef DJET_JETS_HPP
#define DJET_JETS_HPP

#include <map>
#include <optional>

#include <json.hpp>

#include "djet/delta.hpp"
#include "djet/presentation.hpp"

namespace djet {

/// Presentation of the order-r jet ring of an affine scheme.
struct JetRingPresentation {
    PrimeSet P;
    MultiIndex r;
    std::vector<JetVar> generators; // per variable, indices below r in lex order
    std::vector<JetPoly> relations; // delta^i f per relation, indices in lex order
    std::optional<JetPoly> localizer_r; // prod_{i<=r} phi^i(g)
};

JetRingPresentation jet_presentation(const AffinePresentation& X, const PrimeSet& P,
                                     const MultiIndex& r);
nlohmann::json to_json(const JetRingPresentation& pres);

/// Assignment of base-variable values in the base ring.
using RationalPoint = std::map<std::string, mpq_class>;

/// Jet coordinates of the canonical lift: iterated delta on constants in
/// canonical operator order. Throws if a denominator meets the primes.
std::map<JetVar, mpq_class> canonical_lift(const AffinePresentation& X,
                                           const PrimeSet& P,
                                           const RationalPoint& pt,
                                           const MultiIndex& r);

/// Iterated delta of a constant, canonical order.
mpq_class delta_multi_int(const PrimeSet& P, const MultiIndex& i, const mpq_class& c);

/// phi^s(f) for f in base variables, viewed in the order-r jet ring.
JetPoly coghost_images(DeltaRing& R, const JetPoly& f, const MultiIndex& s,
                       const MultiIndex& r);

/// Solve the triangular system phi^s(T) = values[s], s <= r, for the jet
/// coordinates of T by back-substitution over Q.
std::map<MultiIndex, mpq_class>
invert_coghost_over_Q(const PrimeSet& P, const std::string& name,
                      const std::map<MultiIndex, mpq_class>& values);

} // namespace djet

#endif
