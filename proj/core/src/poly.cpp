#include "djet/poly.hpp"

#include <algorithm>
#include <sstream>

#include "djet/error.hpp"

namespace djet {

long val_p(const mpq_class& a, long p) {
    if (a == 0) return VAL_INF;
    long v = 0;
    mpz_class num = a.get_num(), den = a.get_den(), q, r;
    while (true) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(),
                       static_cast<unsigned long>(p));
        if (r != 0) break;
        num = q;
        ++v;
    }
    while (true) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(),
                       static_cast<unsigned long>(p));
        if (r != 0) break;
        den = q;
        --v;
    }
    return v;
}

mpz_class mod_prime_power(const mpq_class& a, long p, int N) {
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(N));
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), a.get_den().get_mpz_t(), pn.get_mpz_t()) == 0)
        fail_arith("denominator not invertible modulo " + std::to_string(p) + "^" +
                   std::to_string(N));
    mpz_class out = a.get_num() * deninv;
    mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), pn.get_mpz_t());
    return out;
}

std::string JetVar::str() const {
    if (idx.dim() == 0 || idx.is_zero()) return name;
    return name + "@" + idx.str();
}

Monomial Monomial::var(const JetVar& v, int exp) {
    Monomial m;
    if (exp != 0) m.f_.emplace_back(v, exp);
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (auto& [v, e] : f_) d += e;
    return d;
}

int Monomial::degree_excluding(const std::set<std::string>& laurent) const {
    int d = 0;
    for (auto& [v, e] : f_)
        if (!laurent.count(v.name)) d += e;
    return d;
}

int Monomial::exponent_of(const JetVar& v) const {
    for (auto& [w, e] : f_)
        if (w == v) return e;
    return 0;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial out;
    auto a = f_.begin(), b = o.f_.begin();
    while (a != f_.end() || b != o.f_.end()) {
        if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
            out.f_.push_back(*a++);
        } else if (a == f_.end() || b->first < a->first) {
            out.f_.push_back(*b++);
        } else {
            int e = a->second + b->second;
            if (e != 0) out.f_.emplace_back(a->first, e);
            ++a;
            ++b;
        }
    }
    return out;
}

Monomial Monomial::pow(int n) const {
    Monomial out;
    if (n == 0) return out;
    out.f_ = f_;
    for (auto& [v, e] : out.f_) e *= n;
    return out;
}

bool Monomial::divides(const Monomial& o) const {
    // Negative exponents behave as units, so only positive ones constrain.
    for (auto& [v, e] : f_)
        if (e > 0 && o.exponent_of(v) < e) return false;
    return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    return times(o.pow(-1));
}

std::string Monomial::str() const {
    if (f_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : f_) {
        if (!first) os << '*';
        first = false;
        os << v.str();
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    auto a = f_.begin(), b = o.f_.begin();
    while (a != f_.end() && b != o.f_.end()) {
        if (auto c = a->first <=> b->first; c != 0) return c;
        if (auto c = a->second <=> b->second; c != 0) return c;
        ++a;
        ++b;
    }
    if (a != f_.end()) return std::strong_ordering::greater;
    if (b != o.f_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

JetPoly JetPoly::constant(const mpq_class& c) {
    JetPoly out;
    if (c != 0) out.t_.emplace(Monomial{}, c);
    return out;
}

JetPoly JetPoly::variable(const JetVar& v, int exp) {
    JetPoly out;
    out.t_.emplace(Monomial::var(v, exp), 1);
    return out;
}

JetPoly JetPoly::monomial(const Monomial& m, const mpq_class& c) {
    JetPoly out;
    if (c != 0) out.t_.emplace(m, c);
    return out;
}

bool JetPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

mpq_class JetPoly::constant_term() const { return coeff(Monomial{}); }

mpq_class JetPoly::coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? mpq_class(0) : it->second;
}

int JetPoly::degree() const {
    return t_.empty() ? 0 : t_.begin()->first.degree();
}

std::set<JetVar> JetPoly::variables() const {
    std::set<JetVar> out;
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m.factors()) out.insert(v);
    return out;
}

void JetPoly::insert(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
    for (auto& [m, c] : o.t_) insert(m, c);
    return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
    for (auto& [m, c] : o.t_) insert(m, -c);
    return *this;
}

JetPoly JetPoly::operator-() const {
    JetPoly out(*this);
    for (auto& [m, c] : out.t_) c = -c;
    return out;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
    JetPoly out;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) out.insert(ma.times(mb), ca * cb);
    return out;
}

JetPoly& JetPoly::operator*=(const JetPoly& o) { return *this = *this * o; }

JetPoly JetPoly::scaled(const mpq_class& c) const {
    if (c == 0) return {};
    JetPoly out(*this);
    for (auto& [m, k] : out.t_) k *= c;
    return out;
}

JetPoly JetPoly::pow(int n) const {
    if (n < 0) {
        if (t_.size() != 1) fail_arith("negative power of a non-monomial");
        auto& [m, c] = *t_.begin();
        return monomial(m.pow(n), mpq_class(1) / [&] {
            mpq_class acc = 1;
            for (int i = 0; i < -n; ++i) acc *= c;
            return acc;
        }());
    }
    JetPoly out = constant(1), base(*this);
    while (n > 0) {
        if (n & 1) out *= base;
        base = (n >>= 1) ? base * base : base;
    }
    return out;
}

JetPoly JetPoly::truncated(int cap, const std::set<std::string>& laurent) const {
    JetPoly out;
    for (auto& [m, c] : t_)
        if (m.degree_excluding(laurent) <= cap) out.t_.emplace(m, c);
    return out;
}

JetPoly JetPoly::mul_capped(const JetPoly& o, int cap,
                            const std::set<std::string>& laurent) const {
    // Bucket the second operand by counted degree so high pairs are skipped
    // wholesale.
    std::map<int, std::vector<const std::pair<const Monomial, mpq_class>*>> buckets;
    for (auto& term : o.t_) buckets[term.first.degree_excluding(laurent)].push_back(&term);
    JetPoly out;
    for (auto& [ma, ca] : t_) {
        int da = ma.degree_excluding(laurent);
        for (auto& [db, bucket] : buckets) {
            if (da + db > cap) break;
            for (auto* term : bucket) out.insert(ma.times(term->first), ca * term->second);
        }
    }
    return out;
}

JetPoly JetPoly::pow_capped(int n, int cap,
                            const std::set<std::string>& laurent) const {
    if (n < 0) fail_arith("capped power expects n >= 0");
    JetPoly out = constant(1), base = truncated(cap, laurent);
    while (n > 0) {
        if (n & 1) out = out.mul_capped(base, cap, laurent);
        n >>= 1;
        if (n) base = base.mul_capped(base, cap, laurent);
    }
    return out;
}

JetPoly JetPoly::substituted(const std::map<JetVar, JetPoly>& images) const {
    JetPoly out;
    for (auto& [m, c] : t_) {
        JetPoly term = constant(c);
        Monomial rest;
        for (auto& [v, e] : m.factors()) {
            auto it = images.find(v);
            if (it == images.end())
                rest = rest.times(Monomial::var(v, e));
            else
                term *= it->second.pow(e);
        }
        out += term * monomial(rest, 1);
    }
    return out;
}

JetPoly JetPoly::substituted_capped(const std::map<JetVar, JetPoly>& images, int cap,
                                    const std::set<std::string>& laurent) const {
    JetPoly out;
    for (auto& [m, c] : t_) {
        JetPoly term = constant(c);
        Monomial rest;
        for (auto& [v, e] : m.factors()) {
            auto it = images.find(v);
            if (it == images.end()) {
                rest = rest.times(Monomial::var(v, e));
            } else {
                if (e < 0) fail_arith("capped substitution into a negative power");
                term = term.mul_capped(it->second.pow_capped(e, cap, laurent), cap, laurent);
            }
        }
        out += term.mul_capped(monomial(rest, 1), cap, laurent);
    }
    return out;
}

mpq_class JetPoly::eval(const std::map<JetVar, mpq_class>& point) const {
    mpq_class out = 0;
    for (auto& [m, c] : t_) {
        mpq_class term = c;
        for (auto& [v, e] : m.factors()) {
            auto it = point.find(v);
            if (it == point.end()) fail_arith("evaluation point missing " + v.str());
            if (e < 0 && it->second == 0) fail_arith("evaluation divides by zero");
            mpq_class base = it->second;
            if (e < 0) base = 1 / base;
            for (int i = 0; i < std::abs(e); ++i) term *= base;
        }
        out += term;
    }
    return out;
}

JetPoly JetPoly::partial(const JetVar& v) const {
    JetPoly out;
    for (auto& [m, c] : t_) {
        int e = m.exponent_of(v);
        if (e == 0) continue;
        out.insert(m.times(Monomial::var(v, -1)), c * e);
    }
    return out;
}

JetPoly JetPoly::divided_exact(const mpz_class& d) const {
    if (d == 0) fail_arith("division by zero");
    JetPoly out;
    for (auto& [m, c] : t_) {
        mpq_class q = c / mpq_class(d);
        q.canonicalize();
        out.t_.emplace(m, q);
    }
    return out;
}

JetPoly JetPoly::divided_exact(const JetPoly& d) const {
    if (d.is_zero()) fail_arith("division by zero polynomial");
    JetPoly rem(*this), out;
    auto& [lm, lc] = *d.t_.begin();
    while (!rem.is_zero()) {
        auto& [rm, rc] = *rem.t_.begin();
        if (!lm.divides(rm)) fail_arith("polynomial division not exact");
        Monomial qm = rm.divided_by(lm);
        mpq_class qc = rc / lc;
        out.insert(qm, qc);
        rem -= d * monomial(qm, qc);
    }
    return out;
}

std::optional<JetPoly> JetPoly::try_divide(const JetPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    JetPoly rem(*this), out;
    auto& [lm, lc] = *d.t_.begin();
    while (!rem.is_zero()) {
        auto& [rm, rc] = *rem.t_.begin();
        if (!lm.divides(rm)) return std::nullopt;
        Monomial qm = rm.divided_by(lm);
        mpq_class qc = rc / lc;
        out.insert(qm, qc);
        rem -= d * monomial(qm, qc);
    }
    return out;
}

long JetPoly::min_valuation(long p) const {
    long v = VAL_INF;
    for (auto& [m, c] : t_) v = std::min(v, val_p(c, p));
    return v;
}

JetPoly JetPoly::reduced_mod(long p, int N) const {
    JetPoly out;
    for (auto& [m, c] : t_) {
        mpz_class r = mod_prime_power(c, p, N);
        if (r != 0) out.t_.emplace(m, mpq_class(r));
    }
    return out;
}

bool JetPoly::is_integral() const {
    return std::all_of(t_.begin(), t_.end(),
                       [](auto& kv) { return kv.second.get_den() == 1; });
}

} // namespace djet
