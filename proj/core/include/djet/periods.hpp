#ifndef DJET_PERIODS_HPP
#define DJET_PERIODS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "djet/laplacian.hpp"

namespace djet {

/// A point of the jet space entering a chain: the canonical lift of the
/// rational base point base_x, tagged with its prime.
struct ChainPoint {
    long prime = 0;
    mpq_class base_x;
    std::string kind = "canonical_lift";
};

/// A chain of points; consecutive pairs with equal primes form vertical
/// segments, pairs with different primes must share the base point and
/// form horizontal segments.
struct Chain {
    std::vector<ChainPoint> points;

    bool is_cycle() const;
    Chain reversed() const;
    /// Concatenation; the first point of `o` must equal the last point.
    Chain then(const Chain& o) const;
};

Chain chain_from_json(const nlohmann::json& j);

struct PeriodComponent {
    long prime = 0;
    mpz_class value;
    int precision = 0;
    friend bool operator==(const PeriodComponent&, const PeriodComponent&) = default;
};

/// Element of the abstract period target: one residue per prime.
struct PeriodValue {
    std::vector<PeriodComponent> components;
    friend bool operator==(const PeriodValue&, const PeriodValue&) = default;
};

/// Sum of f_k(P_{j+1}) - f_k(P_j) over vertical segments at p_k, per
/// prime, at the precision of L. Horizontal segments contribute zero
/// after their endpoints are checked to share a base point.
PeriodValue integrate(const GmLaplacianData& L, const Chain& gamma);

/// Searches translations by diagonal-sum-zero rational tuples with
/// numerator and denominator height at most `height` that cancel v.
/// Returns "zero_within_bound" or "nonzero_at_precision"; equality in
/// the period group is only decided up to the bound and the precision.
std::string period_reduce(const PeriodValue& v, int height);

nlohmann::json to_json(const PeriodValue& v, const std::string& reduced);

} // namespace djet

#endif
