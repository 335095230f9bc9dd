#ifndef DJET_SERIES_HPP
#define DJET_SERIES_HPP

#include <map>
#include <string>

#include <json.hpp>

#include "djet/poly.hpp"

namespace djet {

/// Truncated formal series in jet variables with coefficients known
/// modulo p^(per-term precision), degree-capped at D. Addition and
/// multiplication propagate the minimum attainable precision; dividing
/// by p is the only operation that lowers precision.
class PadicJetSeries {
  public:
    struct Coef {
        mpz_class value; // reduced into [0, p^prec)
        int prec;
        friend bool operator==(const Coef&, const Coef&) = default;
    };
    using Terms = std::map<Monomial, Coef, MonoCmp>;

    PadicJetSeries(PrimeSet P, int k, int N, int D);
    static PadicJetSeries from_poly(const JetPoly& f, PrimeSet P, int k, int N,
                                    int D);

    const PrimeSet& primes() const { return P_; }
    long p() const { return P_.prime(k_); }
    int prime_index() const { return k_; }
    int precision() const { return N_; }
    int degree_cap() const { return D_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    PadicJetSeries add(const PadicJetSeries& o) const;
    PadicJetSeries sub(const PadicJetSeries& o) const;
    PadicJetSeries mul(const PadicJetSeries& o) const;
    PadicJetSeries scaled(const mpz_class& c) const;
    PadicJetSeries divide_by_p() const;
    PadicJetSeries substitute(const std::map<JetVar, PadicJetSeries>& images) const;

    std::string canonical_text() const;
    nlohmann::json to_json() const;
    static PadicJetSeries from_json(const nlohmann::json& j, int k = 0);

    friend bool operator==(const PadicJetSeries&, const PadicJetSeries&) = default;

  private:
    void insert(const Monomial& m, mpz_class value, int prec);
    mpz_class p_pow(int e) const;
    PrimeSet P_;
    int k_;
    int N_;
    int D_;
    Terms t_;
};

nlohmann::json monomial_to_json(const Monomial& m);
Monomial monomial_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const JetPoly& f, const PrimeSet& P, int N, int D);

} // namespace djet

#endif
