#include "quadlcm/primes.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

namespace quadlcm {

/* ---------------------------------------------------------------------------
   Segmented sieve over the odd integers.

   Bit i of the table stands for 2i+1. Base primes up to sqrt(limit) come from
   a small plain sieve; each segment of `segmentBytes` bytes is then cleared
   of their multiples. Segments are word-aligned, so distinct segments touch
   disjoint words and can be sieved from different threads without locks; the
   resulting bit content does not depend on the segment width or thread count.
   --------------------------------------------------------------------------- */

PrimeTable PrimeTable::sieve(u64 limit, u64 segmentBytes, unsigned threads) {
    if (limit < 2)
        throw Error(ErrorCode::LimitTooLarge, "sieve limit must be >= 2");
    if (limit > kMaxLimit)
        throw Error(ErrorCode::LimitTooLarge, "sieve limit above 2^34");
    if (segmentBytes < 64) segmentBytes = 64;
    if (threads < 1) threads = 1;

    PrimeTable t;
    t.limit_ = limit;
    u64 nbits = limit / 2 + 1; // index space for odd numbers <= limit
    t.bits_.assign((nbits + 63) / 64, ~u64(0));
    t.bits_[0] &= ~u64(1); // 1 is not prime

    // base primes (odd) up to sqrt(limit)
    u64 root = isqrt_u64(limit);
    std::vector<u64> base;
    {
        std::vector<bool> comp(root + 1, false);
        for (u64 p = 3; p <= root; p += 2) {
            if (comp[p]) continue;
            base.push_back(p);
            for (u64 m = p * p; m <= root; m += 2 * p) comp[m] = true;
        }
    }

    const u64 bitsPerSeg = segmentBytes * 8;
    const u64 nseg = (nbits + bitsPerSeg - 1) / bitsPerSeg;

    auto sieveSegment = [&](u64 seg) {
        u64 lo = seg * bitsPerSeg;          // first odd-index in segment
        u64 hi = std::min(lo + bitsPerSeg, nbits);
        u64 first = 2 * lo + 1;             // first odd value covered
        for (u64 p : base) {
            u64 p2 = p * p;
            u64 start;
            if (p2 >= first) {
                start = p2;
            } else {
                // first odd multiple of p >= first
                start = ((first + p - 1) / p) * p;
                if ((start & 1) == 0) start += p;
            }
            for (u64 m = start; m <= 2 * (hi - 1) + 1 && m <= limit; m += 2 * p) {
                u64 i = m >> 1;
                t.bits_[i >> 6] &= ~(u64(1) << (i & 63));
            }
        }
    };

    if (threads == 1 || nseg == 1) {
        for (u64 s = 0; s < nseg; ++s) sieveSegment(s);
    } else {
        std::atomic<u64> next{0};
        std::vector<std::thread> pool;
        for (unsigned ti = 0; ti < threads; ++ti)
            pool.emplace_back([&] {
                for (u64 s; (s = next.fetch_add(1)) < nseg;) sieveSegment(s);
            });
        for (auto& th : pool) th.join();
    }

    // mask bits beyond the limit
    u64 lastIdx = limit / 2;
    u64 lastWord = lastIdx >> 6;
    if (lastWord + 1 < t.bits_.size()) t.bits_.resize(lastWord + 1);
    unsigned used = unsigned(lastIdx & 63) + 1;
    if (used < 64) t.bits_[lastWord] &= (u64(1) << used) - 1;

    u64 c = limit >= 2 ? 1 : 0; // the prime 2
    for (u64 w : t.bits_) c += (u64)__builtin_popcountll(w);
    t.count_ = c;
    return t;
}

PrimeTable sievePrimes(u64 limit, u64 segmentBytes, unsigned threads) {
    return PrimeTable::sieve(limit, segmentBytes, threads);
}

std::vector<u64> PrimeTable::primesUpTo(u64 maxPrime) const {
    std::vector<u64> out;
    forEach([&](u64 p) { out.push_back(p); }, maxPrime);
    return out;
}

/* ---------------------------------------------------------------------------
   Kronecker symbol.
   --------------------------------------------------------------------------- */

int kronecker(i64 top, i64 bottom) {
    if (bottom == 0)
        throw Error(ErrorCode::ZeroBottom, "kronecker symbol with bottom 0");
    i64 a = top, n = bottom;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k; // (a/-1) = sign(a)
    }
    // factor 2s out of n; (a/2) depends on a mod 8
    int v = 0;
    while ((n & 1) == 0) { ++v; n >>= 1; }
    if (v & 1) {
        int r = int(((a % 8) + 8) % 8);
        if (r == 3 || r == 5) k = -k;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) { ++v; a >>= 1; }
        if (v & 1) {
            int r = int(n % 8);
            if (r == 3 || r == 5) k = -k;
        }
        if ((a & n & 2) != 0) k = -k; // reciprocity: both = 3 mod 4
        i64 tmp = n % a;
        n = a;
        a = tmp;
    }
    return n == 1 ? k : 0;
}

/* ---------------------------------------------------------------------------
   Chebyshev-type summatory functions.
   --------------------------------------------------------------------------- */

ChebyshevValue chebyshev(const PrimeTable& table, u64 N, u64 classModulus,
                         u64 classResidue, bool primePowers) {
    if (classModulus > 0 && gcd64((i64)classResidue, (i64)classModulus) != 1)
        throw Error(ErrorCode::BadResidueClass,
                    "residue class not coprime to modulus");
    if (N > table.limit())
        throw Error(ErrorCode::LimitTooLarge, "chebyshev limit above sieve limit");

    KahanSum sum;
    u64 terms = 0;
    table.forEach(
        [&](u64 p) {
            if (classModulus > 0 && p % classModulus != classResidue % classModulus)
                return;
            double lp = std::log((double)p);
            sum.add(lp);
            ++terms;
            if (primePowers) {
                for (u64 pk = p; pk <= N / p; ) {
                    pk *= p;
                    sum.add(lp);
                    ++terms;
                }
            }
        },
        N);
    return {N, classModulus, classResidue, sum.value(), terms};
}

ChebyshevValue chebyshev(u64 N, u64 classModulus, u64 classResidue,
                         bool primePowers) {
    PrimeTable t = PrimeTable::sieve(std::max<u64>(N, 2));
    return chebyshev(t, N, classModulus, classResidue, primePowers);
}

} // namespace quadlcm
