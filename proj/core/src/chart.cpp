#include "djet/chart.hpp"

#include "djet/error.hpp"

namespace djet {

JetPoly invert_unit_series(const JetPoly& f, int cap) {
    mpq_class c = f.constant_term();
    if (c == 0) fail_arith("series has no constant term, not invertible");
    JetPoly u = f.scaled(1 / c) - JetPoly::constant(1); // no constant term
    JetPoly acc = JetPoly::constant(1), pw = JetPoly::constant(1);
    for (int j = 1; j <= cap; ++j) {
        pw = pw.mul_capped(-u, cap);
        if (pw.is_zero()) break;
        acc += pw;
    }
    return acc.scaled(1 / c);
}

JetPoly log_series(const JetVar& v, int cap) {
    JetPoly out;
    for (int n = 1; n <= cap; ++n) {
        mpq_class c(n % 2 == 1 ? 1 : -1, n);
        out += JetPoly::monomial(Monomial::var(v, n), c);
    }
    return out;
}

bool ChartForm::is_zero() const {
    for (auto& [v, f] : c)
        if (!f.is_zero()) return false;
    return true;
}

ChartForm ChartForm::add(const ChartForm& o) const {
    ChartForm out = *this;
    for (auto& [v, f] : o.c) {
        auto& slot = out.c[v];
        slot += f;
        if (slot.is_zero()) out.c.erase(v);
    }
    return out;
}

ChartForm ChartForm::sub(const ChartForm& o) const { return add(o.neg()); }

ChartForm ChartForm::neg() const {
    ChartForm out;
    for (auto& [v, f] : c) out.c.emplace(v, -f);
    return out;
}

ChartForm ChartForm::scaled(const mpq_class& s) const {
    ChartForm out;
    if (s == 0) return out;
    for (auto& [v, f] : c) out.c.emplace(v, f.scaled(s));
    return out;
}

ChartForm ChartForm::mul(const JetPoly& f, int cap) const {
    ChartForm out;
    for (auto& [v, g] : c) {
        JetPoly h = g.mul_capped(f, cap);
        if (!h.is_zero()) out.c.emplace(v, std::move(h));
    }
    return out;
}

ChartForm ChartForm::truncated(int cap) const {
    ChartForm out;
    for (auto& [v, g] : c) {
        JetPoly h = g.truncated(cap);
        if (!h.is_zero()) out.c.emplace(v, std::move(h));
    }
    return out;
}

long ChartForm::min_valuation(long p) const {
    long out = VAL_INF;
    for (auto& [v, g] : c) out = std::min(out, g.min_valuation(p));
    return out;
}

ChartForm d_chart(const JetPoly& f) {
    ChartForm out;
    for (auto& v : f.variables()) {
        JetPoly g = f.partial(v);
        if (!g.is_zero()) out.c.emplace(v, std::move(g));
    }
    return out;
}

ChartForm pullback(const ChartForm& w, const std::map<JetVar, JetPoly>& images,
                   int cap) {
    ChartForm out;
    for (auto& [v, g] : w.c) {
        JetPoly gs = g.substituted_capped(images, cap);
        if (gs.is_zero()) continue;
        auto it = images.find(v);
        if (it == images.end()) {
            auto& slot = out.c[v];
            slot += gs;
            if (slot.is_zero()) out.c.erase(v);
            continue;
        }
        for (auto& u : it->second.variables()) {
            JetPoly h = gs.mul_capped(it->second.partial(u), cap);
            if (h.is_zero()) continue;
            auto& slot = out.c[u];
            slot += h;
            if (slot.is_zero()) out.c.erase(u);
        }
    }
    return out;
}

ChartForm phi_pullback(DeltaRing& R, const ChartForm& w, const MultiIndex& s,
                       int cap) {
    std::map<JetVar, JetPoly> images;
    for (auto& [v, g] : w.c) {
        images.emplace(v, R.phi_multi(s, JetPoly::variable(v)));
        for (auto& u : g.variables())
            images.emplace(u, R.phi_multi(s, JetPoly::variable(u)));
    }
    return pullback(w, images, cap);
}

JetPoly phi_series(DeltaRing& R, const JetPoly& f, const MultiIndex& s, int cap) {
    std::map<JetVar, JetPoly> images;
    for (auto& v : f.variables())
        images.emplace(v, R.phi_multi(s, JetPoly::variable(v)));
    return f.substituted_capped(images, cap);
}

} // namespace djet
