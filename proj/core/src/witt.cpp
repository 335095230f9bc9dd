#include "djet/witt.hpp"

#include <map>
#include <mutex>
#include <set>

#include "djet/delta.hpp"
#include "djet/error.hpp"

namespace djet {

namespace {

mpz_class pow_z(long p, int e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e));
    return out;
}

int ipow(long p, int e) {
    long out = 1;
    while (e-- > 0) out *= p;
    return static_cast<int>(out);
}

// Solve p^i Z_i = target_i - sum_{j<i} p^j Z_j^{p^(i-j)} triangularly.
std::vector<JetPoly> solve_ghost(long p, const std::vector<JetPoly>& target) {
    std::vector<JetPoly> Z;
    for (size_t i = 0; i < target.size(); ++i) {
        JetPoly rhs = target[i];
        for (size_t j = 0; j < i; ++j)
            rhs -= Z[j].pow(ipow(p, static_cast<int>(i - j)))
                       .scaled(mpq_class(pow_z(p, static_cast<int>(j))));
        Z.push_back(rhs.divided_exact(pow_z(p, static_cast<int>(i))));
    }
    return Z;
}

std::mutex cache_mutex;

} // namespace

std::vector<JetPoly> ghost_polys(long p, int n, const std::string& name) {
    std::vector<JetPoly> out;
    for (int i = 0; i <= n; ++i) {
        JetPoly w;
        for (int j = 0; j <= i; ++j)
            w += JetPoly::variable(JetVar(name + std::to_string(j)))
                     .pow(ipow(p, i - j))
                     .scaled(mpq_class(pow_z(p, j)));
        out.push_back(std::move(w));
    }
    return out;
}

const WittLaw& witt_law(long p, int n) {
    static std::map<std::pair<long, int>, WittLaw> cache;
    std::lock_guard lock(cache_mutex);
    auto key = std::make_pair(p, n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    auto gx = ghost_polys(p, n, "X"), gy = ghost_polys(p, n, "Y");
    std::vector<JetPoly> sum_target, prod_target;
    for (int i = 0; i <= n; ++i) {
        sum_target.push_back(gx[i] + gy[i]);
        prod_target.push_back(gx[i] * gy[i]);
    }
    WittLaw law{p, n, solve_ghost(p, sum_target), solve_ghost(p, prod_target)};
    for (auto& f : law.sum)
        if (!f.is_integral()) fail_verify("Witt sum law not integral");
    for (auto& f : law.prod)
        if (!f.is_integral()) fail_verify("Witt product law not integral");
    return cache.emplace(key, std::move(law)).first->second;
}

const std::vector<JetPoly>& witt_delta_polys(long p, int n) {
    static std::map<std::pair<long, int>, std::vector<JetPoly>> cache;
    std::lock_guard lock(cache_mutex);
    auto key = std::make_pair(p, n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    auto gx = ghost_polys(p, n, "X");
    std::vector<JetPoly> target;
    for (int i = 0; i < n; ++i)
        target.push_back(
            (gx[i + 1] - gx[i].pow(static_cast<int>(p))).divided_exact(mpz_class(p)));
    auto D = solve_ghost(p, target);
    for (auto& f : D)
        if (!f.is_integral()) fail_verify("Witt delta coordinates not integral");
    return cache.emplace(key, std::move(D)).first->second;
}

const std::vector<JetPoly>& witt_neg_polys(long p, int n);
const std::vector<JetPoly>& witt_neg_polys(long p, int n) {
    static std::map<std::pair<long, int>, std::vector<JetPoly>> cache;
    std::lock_guard lock(cache_mutex);
    auto key = std::make_pair(p, n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    auto gx = ghost_polys(p, n, "X");
    std::vector<JetPoly> target;
    for (auto& g : gx) target.push_back(-g);
    auto N = solve_ghost(p, target);
    for (auto& f : N)
        if (!f.is_integral()) fail_verify("Witt negation law not integral");
    return cache.emplace(key, std::move(N)).first->second;
}

WittVector::WittVector(long p, std::vector<mpq_class> coords)
    : p_(p), x_(std::move(coords)) {
    if (x_.empty()) fail_usage("Witt vector needs at least one coordinate");
}

std::vector<mpq_class> WittVector::ghost() const {
    std::vector<mpq_class> out;
    for (int i = 0; i <= length(); ++i) {
        mpq_class w = 0;
        for (int j = 0; j <= i; ++j) {
            mpq_class t = x_[j];
            for (int e = 1; e < ipow(p_, i - j); ++e) t *= x_[j];
            w += t * mpq_class(pow_z(p_, j));
        }
        out.push_back(w);
    }
    return out;
}

WittVector WittVector::from_ghost(long p, const std::vector<mpq_class>& w) {
    std::vector<mpq_class> x;
    for (size_t i = 0; i < w.size(); ++i) {
        mpq_class rhs = w[i];
        for (size_t j = 0; j < i; ++j) {
            mpq_class t = x[j];
            for (int e = 1; e < ipow(p, static_cast<int>(i - j)); ++e) t *= x[j];
            rhs -= t * mpq_class(pow_z(p, static_cast<int>(j)));
        }
        mpq_class xi = rhs / mpq_class(pow_z(p, static_cast<int>(i)));
        xi.canonicalize();
        x.push_back(xi);
    }
    return WittVector(p, x);
}

namespace {

std::map<JetVar, mpq_class> law_point(const WittVector& a, const WittVector& b) {
    std::map<JetVar, mpq_class> pt;
    for (int i = 0; i <= a.length(); ++i) {
        pt.emplace(JetVar("X" + std::to_string(i)), a.coords()[i]);
        pt.emplace(JetVar("Y" + std::to_string(i)), b.coords()[i]);
    }
    return pt;
}

} // namespace

WittVector WittVector::add(const WittVector& o) const {
    if (p_ != o.p_ || length() != o.length()) fail_arith("Witt vector mismatch");
    auto& law = witt_law(p_, length());
    auto pt = law_point(*this, o);
    std::vector<mpq_class> out;
    for (auto& S : law.sum) out.push_back(S.eval(pt));
    return WittVector(p_, out);
}

WittVector WittVector::mul(const WittVector& o) const {
    if (p_ != o.p_ || length() != o.length()) fail_arith("Witt vector mismatch");
    auto& law = witt_law(p_, length());
    auto pt = law_point(*this, o);
    std::vector<mpq_class> out;
    for (auto& P : law.prod) out.push_back(P.eval(pt));
    return WittVector(p_, out);
}

WittVector WittVector::frobenius() const {
    if (length() < 1) fail_arith("Frobenius needs length >= 1");
    auto w = ghost();
    return from_ghost(p_, std::vector<mpq_class>(w.begin() + 1, w.end()));
}

WittVector WittVector::delta_w() const {
    if (length() < 1) fail_arith("delta_W needs length >= 1");
    auto w = ghost();
    std::vector<mpq_class> dw;
    for (int i = 0; i < length(); ++i) {
        mpq_class wp = w[i];
        for (long e = 1; e < p_; ++e) wp *= w[i];
        mpq_class v = (w[i + 1] - wp) / p_;
        v.canonicalize();
        dw.push_back(v);
    }
    return from_ghost(p_, dw);
}

namespace {

long eval_poly_zm(const JetPoly& f, const std::map<JetVar, long>& pt, long m) {
    mpz_class acc = 0;
    for (auto& [mono, c] : f.terms()) {
        if (c.get_den() != 1) fail_arith("non-integral coefficient mod m");
        mpz_class term = c.get_num();
        for (auto& [v, e] : mono.factors()) {
            if (e < 0) fail_arith("negative exponent mod m");
            auto it = pt.find(v);
            if (it == pt.end()) fail_arith("missing value for " + v.str());
            mpz_class base(it->second), pw;
            mpz_class mm(m);
            mpz_powm_ui(pw.get_mpz_t(), base.get_mpz_t(),
                        static_cast<unsigned long>(e), mm.get_mpz_t());
            term = term * pw % mm;
        }
        acc = (acc + term) % m;
    }
    acc = (acc % m + m) % m;
    return acc.get_si();
}

} // namespace

WittVectorMod::WittVectorMod(long p, long m, std::vector<long> coords)
    : p_(p), m_(m), x_(std::move(coords)) {
    if (x_.empty()) fail_usage("Witt vector needs at least one coordinate");
    if (m_ < 2) fail_usage("modulus must be >= 2");
    for (auto& c : x_) c = ((c % m_) + m_) % m_;
}

WittVectorMod WittVectorMod::zero(long p, long m, int n) {
    return WittVectorMod(p, m, std::vector<long>(n + 1, 0));
}

WittVectorMod WittVectorMod::from_int(long p, long m, int n, long c) {
    if (c < 0) return from_int(p, m, n, -c).neg();
    WittVectorMod one(p, m, [&] {
        std::vector<long> v(n + 1, 0);
        v[0] = 1;
        return v;
    }());
    WittVectorMod acc = zero(p, m, n);
    for (long i = 0; i < c; ++i) acc = acc.add(one);
    return acc;
}

bool WittVectorMod::is_zero() const {
    for (long c : x_)
        if (c != 0) return false;
    return true;
}

WittVectorMod WittVectorMod::add(const WittVectorMod& o) const {
    if (p_ != o.p_ || m_ != o.m_ || length() != o.length())
        fail_arith("Witt vector mismatch");
    auto& law = witt_law(p_, length());
    std::map<JetVar, long> pt;
    for (int i = 0; i <= length(); ++i) {
        pt.emplace(JetVar("X" + std::to_string(i)), x_[i]);
        pt.emplace(JetVar("Y" + std::to_string(i)), o.x_[i]);
    }
    std::vector<long> out;
    for (auto& S : law.sum) out.push_back(eval_poly_zm(S, pt, m_));
    return WittVectorMod(p_, m_, out);
}

WittVectorMod WittVectorMod::mul(const WittVectorMod& o) const {
    if (p_ != o.p_ || m_ != o.m_ || length() != o.length())
        fail_arith("Witt vector mismatch");
    auto& law = witt_law(p_, length());
    std::map<JetVar, long> pt;
    for (int i = 0; i <= length(); ++i) {
        pt.emplace(JetVar("X" + std::to_string(i)), x_[i]);
        pt.emplace(JetVar("Y" + std::to_string(i)), o.x_[i]);
    }
    std::vector<long> out;
    for (auto& P : law.prod) out.push_back(eval_poly_zm(P, pt, m_));
    return WittVectorMod(p_, m_, out);
}

WittVectorMod WittVectorMod::neg() const {
    auto& N = witt_neg_polys(p_, length());
    std::map<JetVar, long> pt;
    for (int i = 0; i <= length(); ++i)
        pt.emplace(JetVar("X" + std::to_string(i)), x_[i]);
    std::vector<long> out;
    for (auto& f : N) out.push_back(eval_poly_zm(f, pt, m_));
    return WittVectorMod(p_, m_, out);
}

WittVectorMod WittVectorMod::delta_w() const {
    if (length() < 1) fail_arith("delta_W needs length >= 1");
    auto& D = witt_delta_polys(p_, length());
    std::map<JetVar, long> pt;
    for (int i = 0; i <= length(); ++i)
        pt.emplace(JetVar("X" + std::to_string(i)), x_[i]);
    std::vector<long> out;
    for (auto& f : D) out.push_back(eval_poly_zm(f, pt, m_));
    return WittVectorMod(p_, m_, out);
}

WittVectorMod eval_poly_witt(const JetPoly& f,
                             const std::map<std::string, WittVectorMod>& args,
                             long p, long m, int n) {
    WittVectorMod acc = WittVectorMod::zero(p, m, n);
    for (auto& [mono, c] : f.terms()) {
        if (c.get_den() != 1) fail_arith("non-integral coefficient");
        if (!c.get_num().fits_slong_p()) fail_arith("coefficient too large");
        WittVectorMod term = WittVectorMod::from_int(p, m, n, c.get_num().get_si());
        for (auto& [v, e] : mono.factors()) {
            if (e < 0) fail_arith("negative exponent in Witt evaluation");
            auto it = args.find(v.name);
            if (it == args.end()) fail_arith("missing Witt value for " + v.str());
            for (int i = 0; i < e; ++i) term = term.mul(it->second);
        }
        acc = acc.add(term);
    }
    return acc;
}

AdjunctionReport adjunction_check(const AffinePresentation& X, long m, long p,
                                  int n, long enumeration_cap) {
    int v = static_cast<int>(X.vars.size());
    int coords = v * (n + 1);
    double total = 1;
    for (int i = 0; i < coords; ++i) total *= static_cast<double>(m);
    if (total > static_cast<double>(enumeration_cap))
        fail_usage("enumeration bound exceeded");

    // Jet-side relations delta^i f, i <= n, in variables name@(i).
    DeltaRing R(PrimeSet({p}));
    std::vector<JetPoly> rels;
    for (auto& f : X.relations) {
        JetPoly g = f;
        for (int i = 0; i <= n; ++i) {
            rels.push_back(g);
            if (i < n) g = R.delta(0, g);
        }
    }

    auto for_each_tuple = [&](auto&& body) {
        std::vector<long> t(coords, 0);
        for (;;) {
            body(t);
            int k = coords - 1;
            while (k >= 0 && ++t[k] == m) t[k--] = 0;
            if (k < 0) break;
        }
    };

    std::set<std::vector<long>> jet_solutions;
    for_each_tuple([&](const std::vector<long>& t) {
        std::map<JetVar, long> pt;
        for (int a = 0; a < v; ++a)
            for (int i = 0; i <= n; ++i)
                pt.emplace(JetVar(X.vars[a], MultiIndex({i})), t[a * (n + 1) + i]);
        for (auto& r : rels)
            if (eval_poly_zm(r, pt, m) != 0) return;
        jet_solutions.insert(t);
    });

    long witt_points = 0;
    bool bijection_ok = true;
    std::set<std::vector<long>> images;
    for_each_tuple([&](const std::vector<long>& t) {
        std::map<std::string, WittVectorMod> args;
        for (int a = 0; a < v; ++a)
            args.emplace(X.vars[a],
                         WittVectorMod(p, m,
                                       std::vector<long>(t.begin() + a * (n + 1),
                                                         t.begin() + (a + 1) * (n + 1))));
        for (auto& f : X.relations)
            if (!eval_poly_witt(f, args, p, m, n).is_zero()) return;
        ++witt_points;
        // Transport: jet coordinate i is the first Witt coordinate of
        // delta_W^i of each variable's Witt vector.
        std::vector<long> image(coords, 0);
        for (int a = 0; a < v; ++a) {
            WittVectorMod w = args.at(X.vars[a]);
            for (int i = 0; i <= n; ++i) {
                image[a * (n + 1) + i] = w.coords()[0];
                if (i < n) w = w.delta_w();
            }
        }
        if (!jet_solutions.count(image) || !images.insert(image).second)
            bijection_ok = false;
    });

    return AdjunctionReport{p,
                            m,
                            n,
                            static_cast<long>(jet_solutions.size()),
                            witt_points,
                            bijection_ok && witt_points ==
                                static_cast<long>(jet_solutions.size())};
}

nlohmann::json to_json(const AdjunctionReport& r) {
    return {{"prime", r.p},     {"modulus", r.m},
            {"order", r.n},     {"jet_points", r.jet_points},
            {"witt_points", r.witt_points}, {"bijection", r.bijection_ok}};
}

} // namespace djet
