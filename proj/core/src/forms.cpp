#include "djet/forms.hpp"

#include <algorithm>

#include "djet/error.hpp"
#include "djet/text.hpp"

namespace djet {

Localization::Localization(PrimeSet P, JetPoly g)
    : P_(P), R_(P), g_(std::move(g)) {}

const JetPoly& Localization::phi_g(const MultiIndex& i) {
    if (auto it = cache_.find(i); it != cache_.end()) return it->second;
    return cache_.emplace(i, R_.phi_multi(i, g_)).first->second;
}

LocalizedJetElem::LocalizedJetElem(LocCtx ctx, JetPoly num,
                                   std::map<MultiIndex, int> den)
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
    for (auto it = den_.begin(); it != den_.end();) {
        if (it->second < 0) fail_arith("negative denominator exponent");
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
    if (!den_.empty() && !ctx_) fail_arith("denominator without localization context");
    if (num_.is_zero()) den_.clear();
}

JetPoly LocalizedJetElem::den_poly() const {
    JetPoly out = JetPoly::constant(1);
    for (auto& [i, m] : den_) out *= ctx_->phi_g(i).pow(m);
    return out;
}

const JetPoly& LocalizedJetElem::as_poly() const {
    if (!den_.empty()) fail_arith("element has a nontrivial denominator");
    return num_;
}

LocalizedJetElem LocalizedJetElem::add(const LocalizedJetElem& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    LocCtx ctx = ctx_ ? ctx_ : o.ctx_;
    // common denominator: max exponent per index
    std::map<MultiIndex, int> den = den_;
    for (auto& [i, m] : o.den_) den[i] = std::max(den[i], m);
    JetPoly a = num_, b = o.num_;
    for (auto& [i, m] : den) {
        auto self = den_.find(i), other = o.den_.find(i);
        int ms = self == den_.end() ? 0 : self->second;
        int mo = other == o.den_.end() ? 0 : other->second;
        if (m > ms) a *= ctx->phi_g(i).pow(m - ms);
        if (m > mo) b *= ctx->phi_g(i).pow(m - mo);
    }
    return LocalizedJetElem(ctx, a + b, std::move(den));
}

LocalizedJetElem LocalizedJetElem::sub(const LocalizedJetElem& o) const {
    return add(o.neg());
}

LocalizedJetElem LocalizedJetElem::neg() const {
    return LocalizedJetElem(ctx_, -num_, den_);
}

LocalizedJetElem LocalizedJetElem::mul(const LocalizedJetElem& o) const {
    if (is_zero() || o.is_zero()) return LocalizedJetElem(ctx_ ? ctx_ : o.ctx_, {});
    std::map<MultiIndex, int> den = den_;
    for (auto& [i, m] : o.den_) den[i] += m;
    return LocalizedJetElem(ctx_ ? ctx_ : o.ctx_, num_ * o.num_, std::move(den));
}

LocalizedJetElem LocalizedJetElem::scaled(const mpq_class& c) const {
    return LocalizedJetElem(ctx_, num_.scaled(c), den_);
}

bool LocalizedJetElem::equals(const LocalizedJetElem& o) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    return num_ * o.den_poly() == o.num_ * den_poly();
}

LocalizedJetElem LocalizedJetElem::partial(const JetVar& v) const {
    if (den_.empty()) return LocalizedJetElem(ctx_, num_.partial(v));
    // quotient rule over the common denominator D * prod_i phi^i(g):
    // only one extra power of each factor is needed
    JetPoly extra = JetPoly::constant(1);
    for (auto& [i, m] : den_) extra *= ctx_->phi_g(i);
    JetPoly out = num_.partial(v) * extra;
    for (auto& [i, m] : den_) {
        JetPoly rest = JetPoly::constant(m);
        for (auto& [j, mj] : den_)
            if (j != i) rest *= ctx_->phi_g(j);
        out -= num_ * rest * ctx_->phi_g(i).partial(v);
    }
    std::map<MultiIndex, int> den = den_;
    for (auto& [i, m] : den) m += 1;
    return LocalizedJetElem(ctx_, std::move(out), std::move(den));
}

LocalizedJetElem LocalizedJetElem::phi_multi(const MultiIndex& s) const {
    if (!ctx_) {
        if (num_.is_constant()) return *this;
        fail_arith("Frobenius needs a localization context");
    }
    std::map<MultiIndex, int> den;
    for (auto& [i, m] : den_) den[i.plus(s)] = m;
    return LocalizedJetElem(ctx_, ctx_->ring().phi_multi(s, num_), std::move(den));
}

LocalizedJetElem LocalizedJetElem::normalized() const {
    if (den_.empty() || num_.is_zero()) return *this;
    JetPoly num = num_;
    std::map<MultiIndex, int> den = den_;
    for (auto& [i, m] : den) {
        while (m > 0) {
            auto q = num.try_divide(ctx_->phi_g(i));
            if (!q) break;
            num = std::move(*q);
            --m;
        }
    }
    return LocalizedJetElem(ctx_, std::move(num), std::move(den));
}

bool LocalizedJetElem::is_unit() const {
    if (is_zero()) return false;
    JetPoly num = normalized().num();
    if (ctx_ && !num.is_constant()) {
        // Every phi^i(g) is a unit in the localized ring, so strip such
        // factors from the numerator. Candidate indices are bounded by
        // the jet indices actually present.
        MultiIndex cap = MultiIndex::zero(ctx_->primes().dim());
        for (auto& v : num.variables()) {
            MultiIndex idx =
                v.idx.dim() == 0 ? MultiIndex::zero(cap.dim()) : v.idx;
            std::vector<int> c(cap.components());
            for (int k = 0; k < cap.dim(); ++k) c[k] = std::max(c[k], idx[k]);
            cap = MultiIndex(c);
        }
        bool again = true;
        while (again && !num.is_constant()) {
            again = false;
            for (auto& s : indices_below(cap)) {
                if (ctx_->phi_g(s).is_constant()) continue;
                auto q = num.try_divide(ctx_->phi_g(s));
                if (q) {
                    num = std::move(*q);
                    again = true;
                    break;
                }
            }
        }
    }
    if (!num.is_constant()) return false;
    mpq_class c = num.constant_term();
    if (c == 0) return false;
    if (!ctx_) return true;
    for (long p : ctx_->primes().primes())
        if (val_p(c, p) != 0) return false;
    return true;
}

DifferentialForm DifferentialForm::dvar(const LocCtx& ctx, const JetVar& v) {
    DifferentialForm out(1);
    out.insert({v}, LocalizedJetElem(ctx, JetPoly::constant(1)));
    return out;
}

DifferentialForm DifferentialForm::d_of(const LocalizedJetElem& f) {
    DifferentialForm out(1);
    std::set<JetVar> vars = f.num().variables();
    if (f.ctx())
        for (auto& [i, m] : f.den())
            for (auto& v : f.ctx()->phi_g(i).variables()) vars.insert(v);
    for (auto& v : vars) {
        LocalizedJetElem c = f.partial(v);
        if (!c.is_zero()) out.insert({v}, c);
    }
    return out;
}

bool DifferentialForm::is_zero() const {
    for (auto& [w, c] : t_)
        if (!c.is_zero()) return false;
    return true;
}

void DifferentialForm::insert(std::vector<JetVar> wedge, const LocalizedJetElem& c) {
    if (static_cast<int>(wedge.size()) != deg_) fail_arith("wedge degree mismatch");
    if (c.is_zero()) return;
    // sort and count inversions; repeated variables kill the term
    int sign = 1;
    for (size_t i = 1; i < wedge.size(); ++i)
        for (size_t j = i; j > 0 && wedge[j] < wedge[j - 1]; --j) {
            std::swap(wedge[j], wedge[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < wedge.size(); ++i)
        if (wedge[i] == wedge[i - 1]) return;
    LocalizedJetElem add = sign == 1 ? c : c.neg();
    auto it = t_.find(wedge);
    if (it == t_.end()) {
        t_.emplace(std::move(wedge), std::move(add));
    } else {
        it->second = it->second.add(add);
        if (it->second.is_zero()) t_.erase(it);
    }
}

DifferentialForm DifferentialForm::add(const DifferentialForm& o) const {
    if (deg_ != o.deg_) fail_arith("form degree mismatch");
    DifferentialForm out(*this);
    for (auto& [w, c] : o.t_) out.insert(w, c);
    return out;
}

DifferentialForm DifferentialForm::sub(const DifferentialForm& o) const {
    return add(o.neg());
}

DifferentialForm DifferentialForm::neg() const {
    DifferentialForm out(deg_);
    for (auto& [w, c] : t_) out.t_.emplace(w, c.neg());
    return out;
}

DifferentialForm DifferentialForm::scaled(const LocalizedJetElem& c) const {
    DifferentialForm out(deg_);
    for (auto& [w, cf] : t_) out.insert(w, cf.mul(c));
    return out;
}

DifferentialForm DifferentialForm::scaled(const mpq_class& c) const {
    DifferentialForm out(deg_);
    for (auto& [w, cf] : t_) out.insert(w, cf.scaled(c));
    return out;
}

DifferentialForm DifferentialForm::wedge(const DifferentialForm& o) const {
    DifferentialForm out(deg_ + o.deg_);
    for (auto& [wa, ca] : t_)
        for (auto& [wb, cb] : o.t_) {
            std::vector<JetVar> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.insert(std::move(w), ca.mul(cb));
        }
    return out;
}

DifferentialForm DifferentialForm::d() const {
    DifferentialForm out(deg_ + 1);
    for (auto& [w, c] : t_) {
        DifferentialForm dc = d_of(c);
        for (auto& [dw, dcf] : dc.terms()) {
            std::vector<JetVar> full = dw; // the new differential first
            full.insert(full.end(), w.begin(), w.end());
            out.insert(std::move(full), dcf);
        }
    }
    return out;
}

bool DifferentialForm::equals(const DifferentialForm& o) const {
    if (deg_ != o.deg_) return false;
    return sub(o).is_zero();
}

nlohmann::json DifferentialForm::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (auto& [w, c] : t_) {
        nlohmann::json wedge = nlohmann::json::array();
        for (auto& v : w) wedge.push_back(v.str());
        nlohmann::json coeff;
        if (c.den().empty()) {
            coeff = canonical_text(c.num());
        } else {
            coeff = canonical_text(c.num()) + " / " + canonical_text(c.den_poly());
        }
        out.push_back({{"wedge", wedge}, {"coeff", coeff}});
    }
    return out;
}

DifferentialForm divided_frobenius(const DifferentialForm& omega, const MultiIndex& r) {
    if (omega.terms().empty()) return omega;
    LocCtx ctx = omega.terms().begin()->second.ctx();
    if (!ctx) fail_arith("divided Frobenius needs a localization context");
    bool integral_in = true;
    for (auto& [w, c] : omega.terms())
        if (!c.num().is_integral()) integral_in = false;

    DifferentialForm out(omega.degree());
    for (auto& [w, c] : omega.terms()) {
        DifferentialForm pulled(0);
        pulled.insert({}, c.phi_multi(r));
        for (auto& v : w) {
            JetPoly img = ctx->ring().phi_multi(r, JetPoly::variable(v));
            pulled = pulled.wedge(DifferentialForm::d_of(
                LocalizedJetElem(ctx, std::move(img))));
        }
        out = out.add(pulled);
    }
    mpz_class denom = 1;
    for (int k = 0; k < r.dim(); ++k) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(),
                      static_cast<unsigned long>(ctx->primes().prime(k)),
                      static_cast<unsigned long>(r[k] * omega.degree()));
        denom *= pk;
    }
    DifferentialForm scaled = out.scaled(mpq_class(mpz_class(1), denom));
    if (integral_in)
        for (auto& [w, c] : scaled.terms())
            if (!c.num().is_integral())
                fail_arith("divided Frobenius is not exactly divisible");
    return scaled;
}

JetPoly ConjugateDerivation::apply_poly(const JetPoly& f) const {
    JetPoly out;
    for (auto& v : f.variables()) {
        auto it = values.find(v);
        if (it == values.end())
            fail_arith("derivation table has no entry for " + v.str());
        out += f.partial(v) * it->second;
    }
    return out;
}

LocalizedJetElem ConjugateDerivation::apply(const LocalizedJetElem& f) const {
    if (f.den().empty())
        return LocalizedJetElem(f.ctx(), apply_poly(f.num()));
    JetPoly extra = JetPoly::constant(1);
    for (auto& [i, m] : f.den()) extra *= f.ctx()->phi_g(i);
    JetPoly out = apply_poly(f.num()) * extra;
    for (auto& [i, m] : f.den()) {
        JetPoly rest = JetPoly::constant(m);
        for (auto& [j, mj] : f.den())
            if (j != i) rest *= f.ctx()->phi_g(j);
        out -= f.num() * rest * apply_poly(f.ctx()->phi_g(i));
    }
    std::map<MultiIndex, int> den = f.den();
    for (auto& [i, m] : den) m += 1;
    return LocalizedJetElem(f.ctx(), std::move(out), std::move(den));
}

std::map<MultiIndex, ConjugateDerivation>
conjugate_derivations(DeltaRing& R, const std::map<std::string, JetPoly>& partial_table,
                      const MultiIndex& n) {
    const PrimeSet& P = R.primes();
    std::map<MultiIndex, ConjugateDerivation> out;
    for (auto& r : indices_below(n)) {
        ConjugateDerivation D{r, n, {}};
        for (auto& [name, base_value] : partial_table) {
            for (auto& s : indices_below(n)) {
                JetVar v(name, s);
                JetPoly value;
                if (s.is_zero()) {
                    value = r.is_zero() ? base_value : JetPoly();
                } else {
                    // smallest k with s_k >= 1
                    int k = 0;
                    while (s[k] == 0) ++k;
                    MultiIndex sm = s.minus(MultiIndex::unit(P.dim(), k));
                    JetVar g(name, sm);
                    JetPoly inner;
                    if (r[k] >= 1) {
                        MultiIndex rm = r.minus(MultiIndex::unit(P.dim(), k));
                        inner = R.phi(k, out.at(rm).values.at(g));
                    }
                    long p = P.prime(k);
                    value = inner - JetPoly::variable(g).pow(static_cast<int>(p - 1)) *
                                        D.values.at(g);
                }
                if (!value.is_integral())
                    fail_verify("conjugate derivation value not integral");
                D.values.emplace(v, std::move(value));
            }
        }
        out.emplace(r, std::move(D));
    }
    return out;
}

LocalizedJetElem pairing(const DifferentialForm& omega, const ConjugateDerivation& D) {
    if (omega.degree() != 1) fail_arith("pairing expects a 1-form");
    LocalizedJetElem out;
    for (auto& [w, c] : omega.terms()) {
        auto it = D.values.find(w[0]);
        if (it == D.values.end())
            fail_arith("derivation table has no entry for " + w[0].str());
        LocalizedJetElem dv(c.ctx(), it->second);
        out = out.add(c.mul(dv));
    }
    return out;
}

DualBasis dual_basis(const LocCtx& ctx, const std::vector<std::string>& vars,
                     const std::vector<DifferentialForm>& base_forms,
                     const std::vector<std::map<std::string, JetPoly>>& partial_tables,
                     const MultiIndex& n) {
    if (vars.size() != base_forms.size() || vars.size() != partial_tables.size())
        fail_usage("dual basis input size mismatch");
    DualBasis out;
    out.n = n;
    out.vars = vars;
    for (int a = 0; a < static_cast<int>(vars.size()); ++a) {
        auto conj = conjugate_derivations(ctx->ring(), partial_tables[a], n);
        for (auto& r : indices_below(n)) {
            out.omega.emplace(std::make_pair(a, r),
                              divided_frobenius(base_forms[a], r));
            out.del.emplace(std::make_pair(a, r), conj.at(r));
        }
    }
    return out;
}

std::map<std::pair<int, MultiIndex>, LocalizedJetElem>
df_expansion(const LocalizedJetElem& f, const DualBasis& basis) {
    std::map<std::pair<int, MultiIndex>, LocalizedJetElem> coeffs;
    DifferentialForm recon(1);
    for (auto& [key, D] : basis.del) {
        LocalizedJetElem c = D.apply(f);
        recon = recon.add(basis.omega.at(key).scaled(c));
        coeffs.emplace(key, std::move(c));
    }
    if (!recon.equals(DifferentialForm::d_of(f)))
        fail_verify("df expansion does not reconstruct df");
    return coeffs;
}

DifferentialForm volume_form(const DualBasis& basis, const LocCtx& ctx,
                             const MultiIndex& n) {
    DifferentialForm vol(0);
    vol.insert({}, LocalizedJetElem(ctx, JetPoly::constant(1)));
    std::vector<JetVar> coords;
    for (auto& r : indices_below(n))
        for (int a = 0; a < static_cast<int>(basis.vars.size()); ++a) {
            vol = vol.wedge(basis.omega.at(std::make_pair(a, r)));
            coords.emplace_back(basis.vars[a], r);
        }
    // determinant against the coordinate differentials: the coefficient
    // of the full sorted wedge monomial
    std::sort(coords.begin(), coords.end());
    auto it = vol.terms().find(coords);
    if (it == vol.terms().end() || !it->second.is_unit())
        fail_verify("volume form determinant is not a unit");
    return vol;
}

} // namespace djet
