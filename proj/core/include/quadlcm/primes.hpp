#ifndef QUADLCM_PRIMES_HPP
#define QUADLCM_PRIMES_HPP

#include <vector>

#include "quadlcm/int128.hpp"
#include "quadlcm/error.hpp"

namespace quadlcm {

// Primes up to a fixed limit, odd numbers bit-packed (one bit per odd
// integer, so limit/16 bytes of storage). Immutable once sieved.
class PrimeTable {
public:
    static constexpr u64 kMaxLimit = u64(1) << 34;
    static constexpr u64 kDefaultSegmentBytes = u64(1) << 20;

    static PrimeTable sieve(u64 limit,
                            u64 segmentBytes = kDefaultSegmentBytes,
                            unsigned threads = 1);

    u64 limit() const { return limit_; }
    u64 count() const { return count_; } // pi(limit)

    bool contains(u64 n) const {
        if (n < 2 || n > limit_) return false;
        if ((n & 1) == 0) return n == 2;
        u64 i = n >> 1;
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }

    // ascending iteration over all primes in [2, maxPrime]
    template <class Fn>
    void forEach(Fn&& fn, u64 maxPrime) const {
        if (maxPrime > limit_) maxPrime = limit_;
        if (maxPrime >= 2) fn(u64(2));
        for (u64 i = 1; 2 * i + 1 <= maxPrime; ++i)
            if ((bits_[i >> 6] >> (i & 63)) & 1) fn(2 * i + 1);
    }
    template <class Fn>
    void forEach(Fn&& fn) const { forEach(fn, limit_); }

    std::vector<u64> primesUpTo(u64 maxPrime) const;

private:
    u64 limit_ = 0;
    u64 count_ = 0;
    std::vector<u64> bits_; // bit i <=> 2i+1 prime (i >= 1)
};

PrimeTable sievePrimes(u64 limit,
                       u64 segmentBytes = PrimeTable::kDefaultSegmentBytes,
                       unsigned threads = 1);

// Kronecker symbol (top/bottom), completely multiplicative in bottom.
int kronecker(i64 top, i64 bottom);

struct ChebyshevValue {
    u64 limit;
    u64 classModulus; // 0 = unrestricted
    u64 classResidue;
    double value;  // sum of log p over p (or p^k <= limit) with p = residue mod modulus
    u64 termCount;
};

// theta/psi-type summatory function; primePowers=true weights every prime
// power p^k <= N by log p (von Mangoldt), false sums over primes only.
ChebyshevValue chebyshev(const PrimeTable& table, u64 N, u64 classModulus = 0,
                         u64 classResidue = 0, bool primePowers = true);
ChebyshevValue chebyshev(u64 N, u64 classModulus = 0, u64 classResidue = 0,
                         bool primePowers = true);

} // namespace quadlcm

#endif
