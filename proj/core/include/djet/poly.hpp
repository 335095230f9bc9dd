#ifndef DJET_POLY_HPP
#define DJET_POLY_HPP

#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "djet/index.hpp"

namespace djet {

/// p-adic valuation of a nonzero rational; val_q(0) is reported as VAL_INF.
inline constexpr long VAL_INF = LONG_MAX;
long val_p(const mpq_class& a, long p);

/// Reduce a rational with denominator prime to p into [0, p^N).
mpz_class mod_prime_power(const mpq_class& a, long p, int N);

/// A jet coordinate: base name plus the multi-index of delta operators
/// applied to it. Index dimension 0 is allowed for plain variables.
struct JetVar {
    std::string name;
    MultiIndex idx;

    JetVar() = default;
    // A zero index of any dimension denotes the base variable itself, so
    // it is normalized away; x@(0,0) and x are the same variable.
    JetVar(std::string n, MultiIndex i) : name(std::move(n)) {
        if (!i.is_zero()) idx = std::move(i);
    }
    explicit JetVar(std::string n) : name(std::move(n)) {}

    std::string str() const; // name or name@(i,...)
    friend bool operator==(const JetVar&, const JetVar&) = default;
    std::strong_ordering operator<=>(const JetVar& o) const {
        if (auto c = name <=> o.name; c != 0) return c;
        return idx <=> o.idx;
    }
};

/// Product of jet variables with integer exponents. Negative exponents are
/// permitted; charts that localize at a coordinate use them.
class Monomial {
  public:
    Monomial() = default; // the empty product, 1
    static Monomial var(const JetVar& v, int exp = 1);

    const std::vector<std::pair<JetVar, int>>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int degree() const; // sum of exponents
    // Degree counting only variables whose base name is not in `laurent`.
    int degree_excluding(const std::set<std::string>& laurent) const;
    int exponent_of(const JetVar& v) const;

    Monomial times(const Monomial& o) const;
    Monomial pow(int n) const;
    bool divides(const Monomial& o) const; // all exponents <= o's
    Monomial divided_by(const Monomial& o) const;

    std::string str() const; // "x@(1)^2*y"
    friend bool operator==(const Monomial&, const Monomial&) = default;
    std::strong_ordering operator<=>(const Monomial& o) const;

  private:
    // sorted by variable, exponents nonzero
    std::vector<std::pair<JetVar, int>> f_;
};

/// Graded ordering, highest total degree first, lexicographic tie-break.
/// Used both for the canonical text form and for exact division.
struct MonoCmp {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a < b;
    }
};

/// Sparse multivariate polynomial (Laurent in selected variables) over Q.
class JetPoly {
  public:
    using Terms = std::map<Monomial, mpq_class, MonoCmp>;

    JetPoly() = default;
    static JetPoly zero() { return {}; }
    static JetPoly constant(const mpq_class& c);
    static JetPoly variable(const JetVar& v, int exp = 1);
    static JetPoly monomial(const Monomial& m, const mpq_class& c);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    mpq_class constant_term() const; // coefficient of 1
    const Terms& terms() const { return t_; }
    mpq_class coeff(const Monomial& m) const;
    int degree() const; // max term degree, 0 for the zero polynomial
    std::set<JetVar> variables() const;

    JetPoly& operator+=(const JetPoly& o);
    JetPoly& operator-=(const JetPoly& o);
    friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
    friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
    JetPoly operator-() const;
    friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
    JetPoly& operator*=(const JetPoly& o);
    JetPoly scaled(const mpq_class& c) const;
    friend bool operator==(const JetPoly&, const JetPoly&) = default;

    JetPoly pow(int n) const; // n >= 0, or n < 0 for a single-term unit

    /// Drop terms of degree (excluding `laurent` names) above `cap`.
    JetPoly truncated(int cap, const std::set<std::string>& laurent = {}) const;
    /// Product with the same cap applied; skips term pairs over the cap.
    JetPoly mul_capped(const JetPoly& o, int cap,
                       const std::set<std::string>& laurent = {}) const;
    JetPoly pow_capped(int n, int cap,
                       const std::set<std::string>& laurent = {}) const;

    /// Replace listed variables by polynomials; others stay. Negative
    /// exponents require the image to be invertible (single-term unit)
    /// unless a cap is given, in which case the caller must ensure the
    /// image is a unit series handled elsewhere.
    JetPoly substituted(const std::map<JetVar, JetPoly>& images) const;
    JetPoly substituted_capped(const std::map<JetVar, JetPoly>& images, int cap,
                               const std::set<std::string>& laurent = {}) const;

    mpq_class eval(const std::map<JetVar, mpq_class>& point) const;

    JetPoly partial(const JetVar& v) const;

    /// Scalar division over Q.
    JetPoly divided_exact(const mpz_class& d) const;
    /// Exact polynomial division by cancelling leading terms; throws when
    /// the remainder is nonzero.
    JetPoly divided_exact(const JetPoly& d) const;
    /// As divided_exact but returns nothing instead of throwing.
    std::optional<JetPoly> try_divide(const JetPoly& d) const;

    /// Min p-adic valuation over coefficients; VAL_INF for zero.
    long min_valuation(long p) const;
    /// Coefficientwise reduction into [0, p^N); denominators must be
    /// prime to p.
    JetPoly reduced_mod(long p, int N) const;
    /// True if every coefficient is an integer.
    bool is_integral() const;

  private:
    void insert(const Monomial& m, const mpq_class& c);
    Terms t_;
};

} // namespace djet

#endif
