#include "djet/jets.hpp"

#include "djet/error.hpp"
#include "djet/text.hpp"

namespace djet {

JetRingPresentation jet_presentation(const AffinePresentation& X, const PrimeSet& P,
                                     const MultiIndex& r) {
    if (r.dim() != P.dim()) fail_usage("order has wrong dimension");
    DeltaRing R(P);
    JetRingPresentation out{P, r, {}, {}, std::nullopt};
    auto below = indices_below(r);
    for (auto& name : X.vars)
        for (auto& i : below) out.generators.emplace_back(name, i);
    for (auto& f : X.relations)
        for (auto& i : below) out.relations.push_back(R.delta_multi(i, f));
    if (X.localizer) {
        JetPoly loc = JetPoly::constant(1);
        for (auto& i : below) loc *= R.phi_multi(i, *X.localizer);
        out.localizer_r = std::move(loc);
    }
    return out;
}

nlohmann::json to_json(const JetRingPresentation& pres) {
    nlohmann::json vars = nlohmann::json::array();
    for (auto& v : pres.generators) vars.push_back(v.str());
    nlohmann::json rels = nlohmann::json::array();
    for (auto& f : pres.relations) rels.push_back(canonical_text(f));
    return {{"vars", vars},
            {"order", pres.r.components()},
            {"relations", rels},
            {"localizer",
             pres.localizer_r ? nlohmann::json(canonical_text(*pres.localizer_r))
                              : nlohmann::json(nullptr)}};
}

mpq_class delta_multi_int(const PrimeSet& P, const MultiIndex& i, const mpq_class& c) {
    mpq_class out = c;
    for (int k = P.dim() - 1; k >= 0; --k)
        for (int j = 0; j < i[k]; ++j) out = delta_int(P.prime(k), out);
    return out;
}

std::map<JetVar, mpq_class> canonical_lift(const AffinePresentation& X,
                                           const PrimeSet& P,
                                           const RationalPoint& pt,
                                           const MultiIndex& r) {
    std::map<JetVar, mpq_class> out;
    for (auto& name : X.vars) {
        auto it = pt.find(name);
        if (it == pt.end()) fail_usage("point misses variable " + name);
        for (auto& i : indices_below(r))
            out.emplace(JetVar(name, i), delta_multi_int(P, i, it->second));
    }
    return out;
}

JetPoly coghost_images(DeltaRing& R, const JetPoly& f, const MultiIndex& s,
                       const MultiIndex& r) {
    if (!s.leq(r)) fail_usage("coghost index exceeds the jet order");
    return R.phi_multi(s, f);
}

std::map<MultiIndex, mpq_class>
invert_coghost_over_Q(const PrimeSet& P, const std::string& name,
                      const std::map<MultiIndex, mpq_class>& values) {
    DeltaRing R(P);
    JetPoly T = JetPoly::variable(JetVar(name, MultiIndex::zero(P.dim())));
    std::map<MultiIndex, mpq_class> coords;
    std::map<JetVar, mpq_class> assignment;
    // The map is ordered lexicographically, which refines the product
    // order, so back-substitution can proceed in iteration order.
    for (auto& [s, w] : values) {
        JetPoly g = R.phi_multi(s, T);
        mpq_class lead(P.power(s));
        JetPoly rest = g - JetPoly::variable(JetVar(name, s)).scaled(lead);
        mpq_class c = (w - rest.eval(assignment)) / lead;
        c.canonicalize();
        coords.emplace(s, c);
        assignment.emplace(JetVar(name, s), c);
    }
    return coords;
}

} // namespace djet
