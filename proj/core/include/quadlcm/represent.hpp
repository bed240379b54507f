#ifndef QUADLCM_REPRESENT_HPP
#define QUADLCM_REPRESENT_HPP

#include <span>
#include <utility>
#include <vector>

#include "quadlcm/bitset.hpp"
#include "quadlcm/poly.hpp"
#include "quadlcm/primes.hpp"

namespace quadlcm {

enum class BuildMode {
    ExactDefinite,   // delta < 0: per-column integer y-intervals, complete
    ExactUnivariate, // dependent derivatives: enumerate f(t), complete
    Window,          // |x|,|y| <= B*sqrt(N): sound but possibly incomplete
};

const char* buildModeName(BuildMode m);

// exact mode for F, or ModeMismatch if only Window applies
BuildMode exactModeFor(const QuadraticPolynomial& F);

// membership bits of { 0 < n <= N : n = F(x,y) }
struct RepresentedSet {
    QuadraticPolynomial source;
    u64 limit;
    BuildMode mode;
    double windowFactor; // used by Window mode only
    bool approximate;    // true exactly in Window mode
    Bitset bits;         // bit n-1 <=> n in the set

    bool contains(u64 n) const { return n >= 1 && n <= limit && bits.test(n - 1); }
    u64 count() const { return bits.popcount(); }
};

RepresentedSet buildRepresentedSet(const QuadraticPolynomial& F, u64 N,
                                   BuildMode mode, double windowFactor = 4.0,
                                   unsigned threads = 1);

double delta(const RepresentedSet& set);

// LCM of the set as prime -> exponent, exponents sorted by prime
struct LcmFactorization {
    std::vector<std::pair<u64, u32>> exponents;
    double logValue = 0.0;

    u32 exponentOf(u64 p) const;
};

LcmFactorization lcmOfSet(const RepresentedSet& set, const PrimeTable& primes,
                          unsigned threads = 1);
LcmFactorization lcmOfSet(const RepresentedSet& set, unsigned threads = 1);

// log LCM of all represented values in (0, N]
double psi(const QuadraticPolynomial& F, u64 N, BuildMode mode,
           double windowFactor = 4.0, unsigned threads = 1);

// test oracle: exact big-integer LCM fold over the members (N <= 1e5)
double lcmLogExactOracle(const RepresentedSet& set);

// multiplicative closed form of psi for x^2 + y^2
struct FermatClosedForm {
    LcmFactorization factorization;
    double value;
};
FermatClosedForm fermatPsiClosedForm(u64 N);

// #{ p prime : k*p <= N and k*p represented }
i64 countSk(const RepresentedSet& set, const PrimeTable& primes, u64 k);
// #{ p prime : k1*p <= N, both k1*p and k2*p represented }, k2 < k1
i64 countSkPair(const RepresentedSet& set, const PrimeTable& primes, u64 k1, u64 k2);

// log LCM over { F(x,y) : |x|,|y| <= floor(sqrt(N)), 0 < F(x,y) <= N }
double psiBox(const QuadraticPolynomial& F, u64 N, unsigned threads = 1);

// R(N) for F = x^2 + y^2 + 1: sum of log p over represented primes <= N,
// divided by the number of represented values <= N
struct FigureOnePoint {
    u64 n;
    double ratio;
    double density;
    u64 count;
};
std::vector<FigureOnePoint> figureOneSeries(u64 limit, std::span<const u64> grid,
                                            unsigned threads = 1,
                                            u64 hardCap = u64(1) << 30);
double figureOneRatio(u64 N, unsigned threads = 1, u64 hardCap = u64(1) << 30);

// shared theta-exponent scan used by lcmOfSet, psiBox and the random-set
// simulator; exposed for reuse on plain bitsets
LcmFactorization scanLcmExponents(const Bitset& bits, u64 N,
                                  const PrimeTable& primes, unsigned threads = 1);

} // namespace quadlcm

#endif
