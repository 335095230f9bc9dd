#include "djet/index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "djet/error.hpp"

namespace djet {

MultiIndex::MultiIndex(std::vector<int> c) : c_(std::move(c)) {
    for (int v : c_)
        if (v < 0) fail_arith("multi-index components must be >= 0");
}

MultiIndex MultiIndex::zero(int dim) { return MultiIndex(std::vector<int>(dim, 0)); }

MultiIndex MultiIndex::unit(int dim, int k) {
    std::vector<int> c(dim, 0);
    c.at(k) = 1;
    return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::all_ones(int dim) { return MultiIndex(std::vector<int>(dim, 1)); }

int MultiIndex::total() const { return std::accumulate(c_.begin(), c_.end(), 0); }

bool MultiIndex::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int v) { return v == 0; });
}

bool MultiIndex::leq(const MultiIndex& o) const {
    if (dim() != o.dim()) fail_arith("multi-index dimension mismatch");
    for (int k = 0; k < dim(); ++k)
        if (c_[k] > o.c_[k]) return false;
    return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
    if (dim() != o.dim()) fail_arith("multi-index dimension mismatch");
    std::vector<int> c(c_);
    for (int k = 0; k < dim(); ++k) c[k] += o.c_[k];
    return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::plus_unit(int k) const {
    std::vector<int> c(c_);
    c.at(k) += 1;
    return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
    if (!o.leq(*this)) fail_arith("multi-index subtraction would go negative");
    std::vector<int> c(c_);
    for (int k = 0; k < dim(); ++k) c[k] -= o.c_[k];
    return MultiIndex(std::move(c));
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& o) const {
    if (auto c = dim() <=> o.dim(); c != 0) return c;
    for (int k = 0; k < dim(); ++k)
        if (auto c = c_[k] <=> o.c_[k]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string MultiIndex::str() const {
    std::ostringstream os;
    os << '(';
    for (int k = 0; k < dim(); ++k) {
        if (k) os << ',';
        os << c_[k];
    }
    os << ')';
    return os.str();
}

std::vector<MultiIndex> indices_below(const MultiIndex& r) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(r.dim(), 0);
    for (;;) {
        out.emplace_back(cur);
        int k = r.dim() - 1;
        while (k >= 0) {
            if (cur[k] < r[k]) {
                ++cur[k];
                std::fill(cur.begin() + k + 1, cur.end(), 0);
                break;
            }
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

PrimeSet::PrimeSet(std::vector<long> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) fail_usage("prime set must be non-empty");
    for (size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            fail_usage("prime set entry " + std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i - 1] >= primes_[i])
            fail_usage("prime set must be strictly increasing");
    }
}

int PrimeSet::index_of(long p) const {
    auto it = std::find(primes_.begin(), primes_.end(), p);
    return it == primes_.end() ? -1 : static_cast<int>(it - primes_.begin());
}

mpz_class PrimeSet::power(const MultiIndex& r) const {
    if (r.dim() != dim()) fail_arith("multi-index dimension mismatch with prime set");
    mpz_class out = 1;
    for (int k = 0; k < dim(); ++k) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(primes_[k]),
                      static_cast<unsigned long>(r[k]));
        out *= pk;
    }
    return out;
}

} // namespace djet
