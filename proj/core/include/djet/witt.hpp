#ifndef DJET_WITT_HPP
#define DJET_WITT_HPP

#include <vector>

#include <json.hpp>

#include "djet/poly.hpp"
#include "djet/presentation.hpp"

namespace djet {

/// Universal p-typical addition and multiplication laws for coordinates
/// 0..n, solved from the ghost identities and verified integral.
struct WittLaw {
    long p;
    int n;
    std::vector<JetPoly> sum;  // S_0..S_n in X0..Xn, Y0..Yn
    std::vector<JetPoly> prod; // P_0..P_n
};

/// Cached per (p, n). Throws ErrorKind::Verification if a law fails to
/// be integral, which would indicate a construction bug.
const WittLaw& witt_law(long p, int n);

/// Ghost polynomials w_0..w_n in variables <name>0..<name>n:
/// w_i = sum_{j<=i} p^j X_j^{p^(i-j)}.
std::vector<JetPoly> ghost_polys(long p, int n, const std::string& name = "X");

/// Coordinates of delta_W as integral polynomials D_0..D_{n-1} in
/// X0..Xn, characterized by ghost_i(D) = (ghost_{i+1}(X) - ghost_i(X)^p)/p.
const std::vector<JetPoly>& witt_delta_polys(long p, int n);

/// Witt vector with rational coordinates.
class WittVector {
  public:
    WittVector(long p, std::vector<mpq_class> coords);
    long p() const { return p_; }
    int length() const { return static_cast<int>(x_.size()) - 1; } // n
    const std::vector<mpq_class>& coords() const { return x_; }

    std::vector<mpq_class> ghost() const;
    static WittVector from_ghost(long p, const std::vector<mpq_class>& w);

    WittVector add(const WittVector& o) const;
    WittVector mul(const WittVector& o) const;
    /// Ghost-shift Frobenius, length drops by one.
    WittVector frobenius() const;
    /// delta_W(w) = (F(w) - w^p)/p via ghost transport; length drops by one.
    WittVector delta_w() const;

    friend bool operator==(const WittVector&, const WittVector&) = default;

  private:
    long p_;
    std::vector<mpq_class> x_;
};

/// Witt vector with coordinates in Z/m, arithmetic through the cached
/// integral laws.
class WittVectorMod {
  public:
    WittVectorMod(long p, long m, std::vector<long> coords);
    long p() const { return p_; }
    long modulus() const { return m_; }
    int length() const { return static_cast<int>(x_.size()) - 1; }
    const std::vector<long>& coords() const { return x_; }

    static WittVectorMod zero(long p, long m, int n);
    static WittVectorMod from_int(long p, long m, int n, long c);

    WittVectorMod add(const WittVectorMod& o) const;
    WittVectorMod mul(const WittVectorMod& o) const;
    WittVectorMod neg() const;
    /// delta_W through the integral coordinate polynomials.
    WittVectorMod delta_w() const;
    bool is_zero() const;

    friend bool operator==(const WittVectorMod&, const WittVectorMod&) = default;

  private:
    long p_, m_;
    std::vector<long> x_;
};

/// Evaluate an integer-coefficient polynomial at Witt-vector arguments
/// (one per base variable name; jet indices must be zero).
WittVectorMod eval_poly_witt(const JetPoly& f,
                             const std::map<std::string, WittVectorMod>& args,
                             long p, long m, int n);

/// Compares jet points over Z/m with Witt points and checks the
/// coordinate transport w -> (first coordinate of delta_W^i(w))_i.
struct AdjunctionReport {
    long p, m;
    int n;
    long jet_points;
    long witt_points;
    bool bijection_ok;
};
AdjunctionReport adjunction_check(const AffinePresentation& X, long m, long p,
                                  int n, long enumeration_cap = 2000000);

nlohmann::json to_json(const AdjunctionReport& r);

} // namespace djet

#endif
