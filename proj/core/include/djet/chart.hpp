#ifndef DJET_CHART_HPP
#define DJET_CHART_HPP

#include <map>

#include "djet/delta.hpp"

namespace djet {

/// Inverse of a series with nonzero constant term, exact modulo total
/// degree cap + 1.
JetPoly invert_unit_series(const JetPoly& f, int cap);

/// log(1 + v) truncated at degree cap.
JetPoly log_series(const JetVar& v, int cap);

/// A 1-form sum_v c_v dv on a formal chart; coefficients are series
/// truncated by the callers' degree window.
struct ChartForm {
    std::map<JetVar, JetPoly> c;

    bool is_zero() const;
    ChartForm add(const ChartForm& o) const;
    ChartForm sub(const ChartForm& o) const;
    ChartForm neg() const;
    ChartForm scaled(const mpq_class& s) const;
    ChartForm mul(const JetPoly& f, int cap) const;
    ChartForm truncated(int cap) const;
    /// Min coefficient valuation at p across components; VAL_INF if zero.
    long min_valuation(long p) const;
    friend bool operator==(const ChartForm&, const ChartForm&) = default;
};

/// Exterior derivative of a chart function.
ChartForm d_chart(const JetPoly& f);

/// Pullback along the substitution v -> images.at(v); variables absent
/// from the table are kept fixed. Coefficients and differentials both
/// transform, capped at the degree window.
ChartForm pullback(const ChartForm& w, const std::map<JetVar, JetPoly>& images,
                   int cap);

/// Pullback along phi^s of the delta structure.
ChartForm phi_pullback(DeltaRing& R, const ChartForm& w, const MultiIndex& s,
                       int cap);

/// phi^s applied to a chart function, capped.
JetPoly phi_series(DeltaRing& R, const JetPoly& f, const MultiIndex& s, int cap);

} // namespace djet

#endif
