#ifndef DJET_INDEX_HPP
#define DJET_INDEX_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace djet {

/// Multi-index r = (r_1,...,r_d) of jet orders, one slot per prime.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> c);
    static MultiIndex zero(int dim);
    static MultiIndex unit(int dim, int k); // e_k, 0-based k
    static MultiIndex all_ones(int dim);    // e

    int dim() const { return static_cast<int>(c_.size()); }
    int operator[](int k) const { return c_[k]; }
    int total() const; // |r|
    bool is_zero() const;

    bool leq(const MultiIndex& o) const; // componentwise
    MultiIndex plus(const MultiIndex& o) const;
    MultiIndex plus_unit(int k) const;
    MultiIndex minus(const MultiIndex& o) const; // requires o.leq(*this)

    const std::vector<int>& components() const { return c_; }
    std::string str() const; // "(1,0)"

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    // lexicographic, shorter-dim first; used for canonical orderings
    std::strong_ordering operator<=>(const MultiIndex& o) const;

  private:
    std::vector<int> c_;
};

/// All s with 0 <= s <= r, in lexicographic order.
std::vector<MultiIndex> indices_below(const MultiIndex& r);

/// Finite set of distinct primes p_1 < ... < p_d.
class PrimeSet {
  public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<long> primes); // validates
    int dim() const { return static_cast<int>(primes_.size()); }
    long prime(int k) const { return primes_[k]; }
    const std::vector<long>& primes() const { return primes_; }
    int index_of(long p) const; // -1 if absent
    bool contains(long p) const { return index_of(p) >= 0; }

    mpz_class power(const MultiIndex& r) const; // P^r

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

  private:
    std::vector<long> primes_;
};

bool is_prime(long n);

} // namespace djet

#endif
