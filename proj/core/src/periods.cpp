#include "djet/periods.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "djet/error.hpp"
#include "djet/jets.hpp"

namespace djet {

static bool same_point(const ChainPoint& a, const ChainPoint& b) {
    return a.prime == b.prime && a.base_x == b.base_x && a.kind == b.kind;
}

bool Chain::is_cycle() const {
    return points.size() >= 2 && same_point(points.front(), points.back());
}

Chain Chain::reversed() const {
    Chain out;
    out.points.assign(points.rbegin(), points.rend());
    return out;
}

Chain Chain::then(const Chain& o) const {
    if (points.empty() || o.points.empty())
        fail_usage("cannot concatenate an empty chain");
    if (!same_point(points.back(), o.points.front()))
        fail_usage("chain concatenation endpoints do not match");
    Chain out = *this;
    out.points.insert(out.points.end(), o.points.begin() + 1, o.points.end());
    return out;
}

Chain chain_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        fail_usage("chain JSON must be an object with a \"points\" array");
    if (j.contains("omega") && j["omega"] != "gm_omega_e")
        fail_usage("unsupported chain form: only \"gm_omega_e\" is wired");
    Chain out;
    for (const auto& pj : j["points"]) {
        if (!pj.is_object() || !pj.contains("prime") || !pj.contains("base_x"))
            fail_usage("chain point needs \"prime\" and \"base_x\"");
        ChainPoint pt;
        if (!pj["prime"].is_number_integer())
            fail_usage("chain point prime must be an integer");
        pt.prime = pj["prime"].get<long>();
        if (!pj["base_x"].is_string())
            fail_usage("chain point base_x must be a string");
        try {
            pt.base_x = mpq_class(pj["base_x"].get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
            fail_usage("chain point base_x is not a rational number");
        }
        pt.base_x.canonicalize();
        if (pj.contains("kind")) {
            if (!pj["kind"].is_string())
                fail_usage("chain point kind must be a string");
            pt.kind = pj["kind"].get<std::string>();
        }
        if (pt.kind != "canonical_lift")
            fail_usage("unsupported chain point kind: " + pt.kind);
        out.points.push_back(pt);
    }
    if (out.points.size() < 2)
        fail_usage("a chain needs at least two points");
    return out;
}

PeriodValue integrate(const GmLaplacianData& L, const Chain& gamma) {
    const int d = L.P.dim();
    if (gamma.points.size() < 2)
        fail_usage("a chain needs at least two points");
    for (const auto& pt : gamma.points) {
        if (!L.P.contains(pt.prime))
            fail_usage("chain prime " + std::to_string(pt.prime) +
                       " has no primitive in this Laplacian data");
        if (pt.base_x == 0)
            fail_usage("chain base points must be units");
    }

    AffinePresentation X{{"x"}, {}, JetPoly::variable(JetVar("x"))};
    MultiIndex e = MultiIndex::all_ones(d);
    std::map<mpq_class, std::map<JetVar, mpq_class>> lifts;
    auto lift_of = [&](const mpq_class& x0) -> const std::map<JetVar, mpq_class>& {
        auto it = lifts.find(x0);
        if (it == lifts.end())
            it = lifts.emplace(x0, canonical_lift(X, L.P, {{"x", x0}}, e)).first;
        return it->second;
    };
    auto eval_f = [&](int k, const mpq_class& x0) {
        const auto& lift = lift_of(x0);
        mpq_class num = L.f[k].num().eval(lift);
        mpq_class den = L.f[k].den_poly().eval(lift);
        if (den == 0) fail_arith("primitive denominator vanishes at a chain point");
        return mpq_class(num / den);
    };

    std::vector<mpq_class> sums(d, 0);
    for (size_t j = 0; j + 1 < gamma.points.size(); ++j) {
        const auto& a = gamma.points[j];
        const auto& b = gamma.points[j + 1];
        if (a.prime == b.prime) {
            int k = L.P.index_of(a.prime);
            sums[k] += eval_f(k, b.base_x) - eval_f(k, a.base_x);
        } else {
            // horizontal segment: both endpoints must be induced by one
            // common base point, and then the contribution is zero
            if (a.base_x != b.base_x)
                fail_usage("horizontal segment endpoints have different base points");
        }
    }

    PeriodValue out;
    for (int k = 0; k < d; ++k) {
        PeriodComponent c;
        c.prime = L.P.prime(k);
        c.precision = L.N;
        c.value = mod_prime_power(sums[k], c.prime, L.N);
        out.components.push_back(std::move(c));
    }
    return out;
}

std::string period_reduce(const PeriodValue& v, int height) {
    const int d = static_cast<int>(v.components.size());
    if (d == 0) return "zero_within_bound";
    if (height < 0) fail_usage("height bound must be nonnegative");

    // candidate translations per component: rationals n/m of height at
    // most `height` congruent to -v_k at the component precision
    std::vector<std::vector<mpq_class>> cands(d);
    for (int k = 0; k < d; ++k) {
        const auto& c = v.components[k];
        for (long m = 1; m <= std::max(height, 1); ++m) {
            if (m % c.prime == 0) continue;
            for (long n = -height; n <= height; ++n) {
                if (n == 0 && m != 1) continue;
                if (n != 0 && std::gcd(std::abs(n), m) != 1) continue;
                mpq_class a(n, m);
                if (val_p(a + mpq_class(c.value), c.prime) >= c.precision)
                    cands[k].push_back(a);
            }
        }
    }

    // depth-first search for a relation tuple summing to zero
    std::vector<mpq_class> pick(d);
    auto admissible_last = [&](const mpq_class& a) {
        if (std::find(cands[d - 1].begin(), cands[d - 1].end(), a) ==
            cands[d - 1].end())
            return false;
        return true;
    };
    std::function<bool(int, mpq_class)> search = [&](int k, mpq_class acc) {
        if (k == d - 1) return admissible_last(-acc);
        for (const auto& a : cands[k])
            if (search(k + 1, acc + a)) return true;
        return false;
    };
    return search(0, 0) ? "zero_within_bound" : "nonzero_at_precision";
}

nlohmann::json to_json(const PeriodValue& v, const std::string& reduced) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : v.components)
        comps.push_back({{"prime", c.prime},
                         {"value", c.value.get_str()},
                         {"precision", c.precision}});
    return {{"components", comps}, {"reduced", reduced}};
}

} // namespace djet
