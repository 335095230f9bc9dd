#include "djet/laplacian.hpp"

#include <algorithm>

#include "djet/error.hpp"

namespace djet {

namespace {

IdentityReport make_report(std::string identity, long prime, int N, int D,
                           long val) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.prime = prime;
    r.precision = N;
    r.degree = D;
    r.defect_valuation = val;
    r.status = val >= N ? "verified" : "failed";
    return r;
}

long elem_valuation(const LocalizedJetElem& e, long p) {
    return e.num().min_valuation(p);
}

long form_valuation(const DifferentialForm& w, long p) {
    long out = VAL_INF;
    for (auto& [wedge, c] : w.terms()) out = std::min(out, elem_valuation(c, p));
    return out;
}

} // namespace

nlohmann::json to_json(const IdentityReport& r) {
    nlohmann::json j;
    j["identity"] = r.identity;
    j["prime"] = r.prime;
    j["precision"] = r.precision;
    j["degree"] = r.degree;
    j["status"] = r.status;
    if (r.defect_valuation == VAL_INF)
        j["defect_valuation"] = "inf";
    else
        j["defect_valuation"] = r.defect_valuation;
    return j;
}

LocCtx gm_chart(const PrimeSet& P) {
    return std::make_shared<Localization>(P, JetPoly::variable(JetVar("x")));
}

DifferentialForm gm_base_form(const LocCtx& ctx) {
    DifferentialForm w(1);
    w.insert({JetVar("x")},
             LocalizedJetElem(ctx, JetPoly::constant(1),
                              {{MultiIndex::zero(ctx->primes().dim()), 1}}));
    return w;
}

LocalizedJetElem gm_psi1(const LocCtx& ctx, int k, int N, int D) {
    if (N < 1 || D < 1) fail_usage("window bounds must be at least 1");
    const PrimeSet& P = ctx->primes();
    long p = P.prime(k);
    JetVar dx("x", MultiIndex::unit(P.dim(), k));
    MultiIndex z = MultiIndex::zero(P.dim());
    LocalizedJetElem out;
    mpz_class ppow = 1; // p^{n-1}
    // the valuation of p^{n-1}/n is not monotone in n, so terms are
    // filtered rather than cut at the first large one
    for (int n = 1; n <= D; ++n, ppow *= p) {
        long val = n - 1 - val_p(mpq_class(n), p);
        if (val >= N) continue;
        mpq_class c(n % 2 == 1 ? ppow : -ppow, n);
        c.canonicalize();
        LocalizedJetElem term(ctx, JetPoly::variable(dx).pow(n).scaled(c),
                              {{z, static_cast<int>(p) * n}});
        out = out.add(term);
    }
    return out;
}

DifferentialForm gm_omega_e(const LocCtx& ctx) {
    DifferentialForm base = gm_base_form(ctx);
    MultiIndex e = MultiIndex::all_ones(ctx->primes().dim());
    DifferentialForm out(1);
    for (auto& r : indices_below(e)) {
        DifferentialForm wr = divided_frobenius(base, r);
        out = r.total() % 2 == 0 ? out.sub(wr) : out.add(wr);
    }
    return out;
}

DifferentialForm gm_omega_e_moebius(const LocCtx& ctx) {
    const PrimeSet& P = ctx->primes();
    DifferentialForm base = gm_base_form(ctx);
    long prod = 1;
    for (long p : P.primes()) prod *= p;
    DifferentialForm out(1);
    for (long m = 1; m <= prod; ++m) {
        if (prod % m != 0) continue;
        auto split = moebius_decompose(m);
        if (split.m2 != 1) continue; // divisors of a squarefree number
        std::vector<int> r(P.dim(), 0);
        for (int k = 0; k < P.dim(); ++k)
            if (m % P.prime(k) == 0) r[k] = 1;
        DifferentialForm wm = divided_frobenius(base, MultiIndex(r));
        out = split.mu > 0 ? out.sub(wm) : out.add(wm);
    }
    return out;
}

JetPoly gm_psi_e_m_0(const PrimeSet& P, int N, int D) {
    if (N < 1 || D < 1) fail_usage("window bounds must be at least 1");
    DeltaRing R(P);
    JetPoly h = log_series(JetVar("T"), D);
    for (int k = 0; k < P.dim(); ++k) {
        JetPoly img = phi_series(R, h, MultiIndex::unit(P.dim(), k), D);
        h -= img.scaled(mpq_class(1, P.prime(k)));
    }
    h = -h;
    for (long p : P.primes())
        if (h.min_valuation(p) < 0)
            fail_verify("origin primitive has a nonintegral coefficient");
    return h;
}

GmLaplacianData gm_laplacian(const PrimeSet& P, int N, int D) {
    GmLaplacianData L;
    L.P = P;
    L.N = N;
    L.D = D;
    L.ctx = gm_chart(P);
    DeltaRing& R = L.ctx->ring();
    int d = P.dim();
    MultiIndex e = MultiIndex::all_ones(d);

    for (int k = 0; k < d; ++k) {
        LocalizedJetElem f = gm_psi1(L.ctx, k, N, D);
        L.psi1.push_back(f);
        for (int l = 0; l < d; ++l) {
            if (l == k) continue;
            f = f.sub(f.phi_multi(MultiIndex::unit(d, l))
                          .scaled(mpq_class(1, P.prime(l))));
        }
        L.f.push_back(f.normalized());
    }
    L.omega_e = gm_omega_e(L.ctx);
    L.psi0 = gm_psi_e_m_0(P, N, D);
    auto conj =
        conjugate_derivations(R, {{"x", JetPoly::variable(JetVar("x"))}}, e);

    DeltaRing RT(P);
    JetPoly onePlusT =
        JetPoly::constant(1) + JetPoly::variable(JetVar("T"));

    for (int k = 0; k < d; ++k) {
        long p = P.prime(k);
        // df_k = omega^(e)
        DifferentialForm defect = DifferentialForm::d_of(L.f[k]).sub(L.omega_e);
        L.reports.push_back(
            make_report("df_k=omega_e", p, N, D, form_valuation(defect, p)));
        // del_r f_k = -(-1)^{|r|}, the coefficient of omega_r in omega^(e)
        long dval = VAL_INF;
        for (auto& r : indices_below(e)) {
            LocalizedJetElem diff = conj.at(r).apply(L.f[k]).sub(
                LocalizedJetElem(L.ctx, JetPoly::constant(r.total() % 2 == 0 ? -1 : 1)));
            dval = std::min(dval, elem_valuation(diff, p));
        }
        L.reports.push_back(
            make_report("del_r f_k=-(-1)^|r|", p, N, D, dval));
        // expansion at the canonical lift of the origin
        std::map<JetVar, JetPoly> images;
        auto add_images = [&](const JetPoly& g) {
            for (auto& v : g.variables()) {
                MultiIndex i = v.idx.dim() == 0 ? MultiIndex::zero(d) : v.idx;
                images.emplace(v, RT.delta_multi(i, onePlusT).truncated(D));
            }
        };
        add_images(L.f[k].num());
        for (auto& [i, m] : L.f[k].den()) add_images(L.ctx->phi_g(i));
        JetPoly num = L.f[k].num().substituted_capped(images, D);
        JetPoly den = JetPoly::constant(1);
        for (auto& [i, m] : L.f[k].den())
            den = den.mul_capped(
                L.ctx->phi_g(i).substituted_capped(images, D).pow_capped(m, D), D);
        JetPoly expansion = num.mul_capped(invert_unit_series(den, D), D);
        L.reports.push_back(make_report("f_k_origin=psi_e_m_0", p, N, D,
                                        (expansion - L.psi0).min_valuation(p)));
    }
    return L;
}

bool GmLaplacianData::all_verified() const {
    return std::all_of(reports.begin(), reports.end(),
                       [](const IdentityReport& r) { return r.ok(); });
}

ChartForm gm_omega_r_chart(DeltaRing& R, const MultiIndex& r, int D) {
    ChartForm w;
    w.c.emplace(JetVar("T"),
                invert_unit_series(
                    JetPoly::constant(1) + JetPoly::variable(JetVar("T")), D));
    mpq_class scale(1, 1);
    scale /= mpq_class(R.primes().power(r));
    return phi_pullback(R, w, r, D).scaled(scale);
}

ChartForm gm_invariance_defect(const PrimeSet& P, const ChartForm& form, int D) {
    DeltaRing R(P);
    int d = P.dim();
    JetPoly T1 = JetPoly::variable(JetVar("T1"));
    JetPoly T2 = JetPoly::variable(JetVar("T2"));
    JetPoly F = T1 + T2 + T1 * T2;
    std::set<JetVar> vars;
    for (auto& [v, g] : form.c) {
        vars.insert(v);
        for (auto& u : g.variables()) vars.insert(u);
    }
    std::map<JetVar, JetPoly> mu, pr1, pr2;
    for (auto& v : vars) {
        if (v.name != "T") fail_usage("invariance check expects forms in T");
        MultiIndex i = v.idx.dim() == 0 ? MultiIndex::zero(d) : v.idx;
        // kept one degree past the window: differentiation inside the
        // pullback drops a degree
        mu.emplace(v, R.delta_multi(i, F).truncated(D + 1));
        pr1.emplace(v, JetPoly::variable(JetVar("T1", i)));
        pr2.emplace(v, JetPoly::variable(JetVar("T2", i)));
    }
    return pullback(form, mu, D)
        .sub(pullback(form, pr1, D))
        .sub(pullback(form, pr2, D));
}

IdentityReport gm_wedge_absorption(const PrimeSet& P, const MultiIndex& n) {
    LocCtx ctx = gm_chart(P);
    DifferentialForm base = gm_base_form(ctx);
    DifferentialForm lhs(0), rest(0);
    lhs.insert({}, LocalizedJetElem(ctx, JetPoly::constant(1)));
    rest.insert({}, LocalizedJetElem(ctx, JetPoly::constant(1)));
    for (auto& r : indices_below(n)) {
        DifferentialForm wr = divided_frobenius(base, r);
        lhs = lhs.wedge(wr);
        if (!r.is_zero()) rest = rest.wedge(wr);
    }
    DifferentialForm rhs = gm_omega_e(ctx).wedge(rest);
    bool ok = lhs.equals(rhs.neg());
    IdentityReport rep = make_report("wedge_absorption", 0, 0, 0,
                                     ok ? VAL_INF : 0);
    rep.status = ok ? "verified" : "failed";
    return rep;
}

namespace {

// (1/p)(phi^2 - a_p phi + p) applied to a chart function
JetPoly hecke_op(DeltaRing& R, const JetPoly& h, int k, long ap, int cap) {
    long p = R.primes().prime(k);
    MultiIndex ek = MultiIndex::unit(R.primes().dim(), k);
    JetPoly f1 = phi_series(R, h, ek, cap);
    JetPoly f2 = phi_series(R, f1, ek, cap);
    return (f2 - f1.scaled(ap) + h.scaled(p)).scaled(mpq_class(1, p));
}

ChartForm hecke_pullback(DeltaRing& R, const ChartForm& w, int k, long ap,
                         int cap) {
    long p = R.primes().prime(k);
    MultiIndex ek = MultiIndex::unit(R.primes().dim(), k);
    ChartForm f1 = phi_pullback(R, w, ek, cap);
    ChartForm f2 = phi_pullback(R, f1, ek, cap);
    return w.sub(f1.scaled(mpq_class(ap, p))).add(f2.scaled(mpq_class(1, p)));
}

void check_psi2(const JetPoly& psi, long p) {
    if (psi.min_valuation(p) < 0)
        fail_verify("psi2 has a nonintegral coefficient");
    if (psi.constant_term() != 0)
        fail_verify("psi2 does not vanish at the origin");
}

JetPoly det3(const std::vector<ChartForm>& rows,
             const std::vector<JetVar>& cols, int cap) {
    auto at = [&](int i, int j) -> JetPoly {
        auto it = rows[i].c.find(cols[j]);
        return it == rows[i].c.end() ? JetPoly() : it->second;
    };
    auto m2 = [&](int i1, int i2, int j1, int j2) {
        return at(i1, j1).mul_capped(at(i2, j2), cap) -
               at(i1, j2).mul_capped(at(i2, j1), cap);
    };
    return at(0, 0).mul_capped(m2(1, 2, 1, 2), cap) -
           at(0, 1).mul_capped(m2(1, 2, 0, 2), cap) +
           at(0, 2).mul_capped(m2(1, 2, 0, 1), cap);
}

} // namespace

JetPoly ec_psi2(const mpz_class& a, const mpz_class& b, long p, int N, int D) {
    long ap = ec_trace(a, b, p);
    PrimeSet P({p});
    DeltaRing R(P);
    FormalGroupLaw G = ec_formal_group(mpq_class(a), mpq_class(b), D + 1);
    JetPoly psi = hecke_op(R, G.log, 0, ap, D).truncated(D);
    check_psi2(psi, p);
    (void)N;
    return psi;
}

std::map<MultiIndex, JetPoly>
expand_in_omega_basis(const ChartForm& w,
                      const std::map<MultiIndex, ChartForm>& omegas,
                      const MultiIndex& n, int cap, ChartForm* residual) {
    std::map<MultiIndex, JetPoly> out;
    ChartForm rest = w;
    auto order = indices_below(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const MultiIndex& r = *it;
        JetVar vr("T", r);
        const ChartForm& wr = omegas.at(r);
        JetPoly unit = wr.c.at(vr);
        JetPoly comp;
        if (auto f = rest.c.find(vr); f != rest.c.end()) comp = f->second;
        JetPoly ar = comp.mul_capped(invert_unit_series(unit, cap), cap);
        rest = rest.sub(wr.mul(ar, cap)).truncated(cap);
        out.emplace(r, std::move(ar));
    }
    if (residual) *residual = rest;
    return out;
}

EcLaplacianData ec_laplacian(const mpz_class& a, const mpz_class& b,
                             const PrimeSet& P, int N, int D) {
    EcLaplacianData L;
    L.P = P;
    L.N = N;
    L.D = D;
    L.a = a;
    L.b = b;
    int d = P.dim();
    int C = D + 1;
    for (int k = 0; k < d; ++k) L.traces.push_back(ec_trace(a, b, P.prime(k)));
    L.G = ec_formal_group(mpq_class(a), mpq_class(b), C);
    DeltaRing R(P);

    // the common formal primitive, operators applied in prime order
    L.psi2e0 = L.G.log;
    for (int k = 0; k < d; ++k)
        L.psi2e0 = hecke_op(R, L.psi2e0, k, L.traces[k], C);

    for (int k = 0; k < d; ++k) {
        JetPoly psi = hecke_op(R, L.G.log, k, L.traces[k], C);
        check_psi2(psi.truncated(D), P.prime(k));
        L.psi2.push_back(psi);
        JetPoly f = psi;
        for (int l = 0; l < d; ++l)
            if (l != k) f = hecke_op(R, f, l, L.traces[l], C);
        L.f.push_back(f);
        IdentityReport agree = make_report("f_k=psi_2e_0", P.prime(k), N, D,
                                           f == L.psi2e0 ? VAL_INF : 0);
        L.reports.push_back(agree);
    }

    L.omega.c.emplace(JetVar("T"), L.G.dlog);
    L.omega_2e = L.omega;
    for (int k = 0; k < d; ++k)
        L.omega_2e = hecke_pullback(R, L.omega_2e, k, L.traces[k], D);

    MultiIndex n2 = MultiIndex::all_ones(d).plus(MultiIndex::all_ones(d));
    std::map<MultiIndex, ChartForm> omegas;
    for (auto& r : indices_below(n2)) {
        mpq_class scale(1, 1);
        scale /= mpq_class(P.power(r));
        omegas.emplace(r, phi_pullback(R, L.omega, r, D).scaled(scale));
    }

    for (int k = 0; k < d; ++k) {
        long p = P.prime(k);
        ChartForm defect = d_chart(L.f[k]).truncated(D).sub(L.omega_2e);
        L.reports.push_back(
            make_report("df_k=omega_2e", p, N, D, defect.min_valuation(p)));
        if (d == 1) {
            ChartForm d71 = d_chart(L.psi2[k]).truncated(D).sub(
                hecke_pullback(R, L.omega, k, L.traces[k], D));
            L.reports.push_back(
                make_report("d psi2=hecke omega", p, N, D, d71.min_valuation(p)));
        }
    }

    // coefficients of df in the omega_r basis
    ChartForm residual;
    auto coeffs = expand_in_omega_basis(d_chart(L.psi2e0).truncated(D), omegas,
                                        n2, D, &residual);
    long cval = VAL_INF;
    for (auto& [r, ar] : coeffs) {
        long m = 1;
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < r[k]; ++j) m *= P.prime(k);
        auto split = moebius_decompose(m);
        mpq_class expected(split.mu * split.m2);
        for (int k = 0; k < d; ++k)
            if (r[k] == 1) expected *= L.traces[k];
        JetPoly diff = ar - JetPoly::constant(expected);
        for (long p : P.primes()) cval = std::min(cval, diff.min_valuation(p));
    }
    for (long p : P.primes())
        cval = std::min(cval, residual.min_valuation(p));
    L.reports.push_back(make_report("del_r f=mu(m')m''a_{m'}", 0, N, D, cval));

    // Moebius expansion of omega^(2e)
    ChartForm moeb;
    for (auto& [r, wr] : omegas) {
        long m = 1;
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < r[k]; ++j) m *= P.prime(k);
        auto split = moebius_decompose(m);
        mpq_class cr(split.mu * split.m2);
        for (int k = 0; k < d; ++k)
            if (r[k] == 1) cr *= L.traces[k];
        moeb = moeb.add(wr.scaled(cr));
    }
    long mval = VAL_INF;
    for (long p : P.primes())
        mval = std::min(mval, moeb.sub(L.omega_2e).min_valuation(p));
    L.reports.push_back(make_report("omega_2e_moebius", 0, N, D, mval));

    if (d == 1) {
        std::vector<JetVar> cols{JetVar("T"), JetVar("T", MultiIndex({1})),
                                 JetVar("T", MultiIndex({2}))};
        JetPoly d1 = det3({omegas.at(MultiIndex({0})), omegas.at(MultiIndex({1})),
                           omegas.at(MultiIndex({2}))},
                          cols, D);
        JetPoly d2 = det3({L.omega_2e, omegas.at(MultiIndex({1})),
                           omegas.at(MultiIndex({2}))},
                          cols, D);
        long wval = (d1 - d2).min_valuation(P.prime(0));
        L.reports.push_back(
            make_report("wedge_absorption", P.prime(0), N, D, wval));
    }
    return L;
}

bool EcLaplacianData::all_verified() const {
    return std::all_of(reports.begin(), reports.end(),
                       [](const IdentityReport& r) { return r.ok(); });
}

} // namespace djet
