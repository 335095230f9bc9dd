#include "djet/series.hpp"

#include <sstream>

#include "djet/error.hpp"

namespace djet {

PadicJetSeries::PadicJetSeries(PrimeSet P, int k, int N, int D)
    : P_(std::move(P)), k_(k), N_(N), D_(D) {
    if (k_ < 0 || k_ >= P_.dim()) fail_usage("prime index out of range");
    if (N_ < 1) fail_usage("precision must be >= 1");
    if (D_ < 0) fail_usage("degree cap must be >= 0");
}

mpz_class PadicJetSeries::p_pow(int e) const {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p()),
                  static_cast<unsigned long>(e));
    return out;
}

void PadicJetSeries::insert(const Monomial& m, mpz_class value, int prec) {
    if (m.degree() > D_) return;
    prec = std::min(prec, N_);
    if (prec < 1) fail_arith("precision exhausted on " + m.str());
    auto it = t_.find(m);
    if (it != t_.end()) {
        prec = std::min(prec, it->second.prec);
        value += it->second.value;
        t_.erase(it);
    }
    mpz_fdiv_r(value.get_mpz_t(), value.get_mpz_t(), p_pow(prec).get_mpz_t());
    if (value != 0) t_.emplace(m, Coef{std::move(value), prec});
}

PadicJetSeries PadicJetSeries::from_poly(const JetPoly& f, PrimeSet P, int k,
                                         int N, int D) {
    PadicJetSeries out(std::move(P), k, N, D);
    for (auto& [m, c] : f.terms())
        out.insert(m, mod_prime_power(c, out.p(), N), N);
    return out;
}

PadicJetSeries PadicJetSeries::add(const PadicJetSeries& o) const {
    if (P_ != o.P_ || k_ != o.k_ || D_ != o.D_)
        fail_arith("series context mismatch");
    PadicJetSeries out(P_, k_, std::min(N_, o.N_), D_);
    for (auto& [m, c] : t_) out.insert(m, c.value, c.prec);
    for (auto& [m, c] : o.t_) out.insert(m, c.value, c.prec);
    return out;
}

PadicJetSeries PadicJetSeries::sub(const PadicJetSeries& o) const {
    return add(o.scaled(-1));
}

PadicJetSeries PadicJetSeries::mul(const PadicJetSeries& o) const {
    if (P_ != o.P_ || k_ != o.k_ || D_ != o.D_)
        fail_arith("series context mismatch");
    PadicJetSeries out(P_, k_, std::min(N_, o.N_), D_);
    for (auto& [ma, ca] : t_) {
        if (ma.degree() > D_) continue;
        for (auto& [mb, cb] : o.t_) {
            if (ma.degree() + mb.degree() > D_) continue;
            out.insert(ma.times(mb), ca.value * cb.value,
                       std::min(ca.prec, cb.prec));
        }
    }
    return out;
}

PadicJetSeries PadicJetSeries::scaled(const mpz_class& c) const {
    PadicJetSeries out(P_, k_, N_, D_);
    for (auto& [m, cf] : t_) out.insert(m, cf.value * c, cf.prec);
    return out;
}

PadicJetSeries PadicJetSeries::divide_by_p() const {
    PadicJetSeries out(P_, k_, N_, D_);
    for (auto& [m, cf] : t_) {
        if (!mpz_divisible_ui_p(cf.value.get_mpz_t(),
                                static_cast<unsigned long>(p())))
            fail_arith("coefficient of " + m.str() +
                       " has valuation 0, cannot divide by p");
        if (cf.prec <= 1)
            fail_arith("precision exhausted dividing coefficient of " + m.str());
        out.insert(m, cf.value / p(), cf.prec - 1);
    }
    // The cap N_ is unchanged but every surviving term lost one digit.
    return out;
}

PadicJetSeries
PadicJetSeries::substitute(const std::map<JetVar, PadicJetSeries>& images) const {
    PadicJetSeries out(P_, k_, N_, D_);
    for (auto& [m, cf] : t_) {
        PadicJetSeries term(P_, k_, N_, D_);
        term.insert(Monomial{}, cf.value, cf.prec);
        Monomial rest;
        for (auto& [v, e] : m.factors()) {
            auto it = images.find(v);
            if (it == images.end()) {
                rest = rest.times(Monomial::var(v, e));
                continue;
            }
            if (e < 0) fail_arith("substitution into a negative power");
            for (int i = 0; i < e; ++i) term = term.mul(it->second);
        }
        PadicJetSeries restv(P_, k_, N_, D_);
        restv.insert(rest, 1, N_);
        out = out.add(term.mul(restv));
    }
    return out;
}

std::string PadicJetSeries::canonical_text() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, cf] : t_) {
        if (!first) os << " + ";
        first = false;
        if (m.is_one()) {
            os << cf.value.get_str();
        } else if (cf.value == 1) {
            os << m.str();
        } else {
            os << cf.value.get_str() << '*' << m.str();
        }
    }
    return os.str();
}

nlohmann::json monomial_to_json(const Monomial& m) {
    nlohmann::json out = nlohmann::json::array();
    for (auto& [v, e] : m.factors()) {
        nlohmann::json var = nlohmann::json::array();
        var.push_back(v.name);
        var.push_back(v.idx.components());
        out.push_back(nlohmann::json::array({var, e}));
    }
    return out;
}

Monomial monomial_from_json(const nlohmann::json& j) {
    Monomial out;
    for (auto& factor : j) {
        auto& var = factor.at(0);
        JetVar v(var.at(0).get<std::string>(),
                 MultiIndex(var.at(1).get<std::vector<int>>()));
        out = out.times(Monomial::var(v, factor.at(1).get<int>()));
    }
    return out;
}

nlohmann::json PadicJetSeries::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [m, cf] : t_)
        terms.push_back({{"monomial", monomial_to_json(m)},
                         {"coeff", cf.value.get_str()}});
    return {{"primes", P_.primes()},
            {"precision", N_},
            {"degree", D_},
            {"terms", terms}};
}

PadicJetSeries PadicJetSeries::from_json(const nlohmann::json& j, int k) {
    PrimeSet P(j.at("primes").get<std::vector<long>>());
    PadicJetSeries out(std::move(P), k, j.at("precision").get<int>(),
                       j.at("degree").get<int>());
    for (auto& term : j.at("terms"))
        out.insert(monomial_from_json(term.at("monomial")),
                   mpz_class(term.at("coeff").get<std::string>()),
                   out.N_);
    return out;
}

nlohmann::json poly_to_json(const JetPoly& f, const PrimeSet& P, int N, int D) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [m, c] : f.terms())
        terms.push_back({{"monomial", monomial_to_json(m)},
                         {"coeff", mpq_class(c).get_str()}});
    return {{"primes", P.primes()},
            {"precision", N},
            {"degree", D},
            {"terms", terms}};
}

} // namespace djet
