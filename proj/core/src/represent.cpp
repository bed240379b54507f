#include "quadlcm/represent.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

namespace quadlcm {

namespace {

constexpr i64 kNoClip = i64(1) << 62;

i64 floorDiv(i128 n, i128 d) {
    i128 q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return (i64)q;
}
i64 ceilDiv(i128 n, i128 d) {
    i128 q = n / d;
    if ((n % d != 0) && ((n < 0) == (d < 0))) ++q;
    return (i64)q;
}

/* ---------------------------------------------------------------------------
   Per-line enumeration.

   Marks every value q(y) = qc*y^2 + qb*y + qk with 0 < q(y) <= N and
   y in [clipLo, clipHi]. Interval endpoints come from a long double root
   estimate and are then settled exactly with 128-bit evaluations, so no
   lattice point on the boundary is missed. Values are walked with second
   differences (two adds per step).
   --------------------------------------------------------------------------- */
template <class Mark>
void markQuadraticLine(i64 qc, i128 qb, i128 qk, u64 N, i64 clipLo, i64 clipHi,
                       Mark&& mark) {
    i64 ylo, yhi;
    if (qc != 0) {
        // qc > 0: walk {q <= N}; qc < 0: walk {q >= 1}; both are y-intervals
        i128 target = qc > 0 ? (i128)N : (i128)1;
        i128 disc = qb * qb - 4 * (i128)qc * (qk - target);
        if (disc < 0) return;
        long double sq = sqrtl((long double)disc);
        long double den = 2.0L * (long double)qc;
        long double r1 = ((long double)(-qb) - sq) / den;
        long double r2 = ((long double)(-qb) + sq) / den;
        if (r1 > r2) std::swap(r1, r2);
        ylo = (i64)floorl(r1) - 2;
        yhi = (i64)ceill(r2) + 2;
        auto inside = [&](i64 y) {
            i128 v = ((i128)qc * y + qb) * y + qk;
            return qc > 0 ? v <= (i128)N : v >= 1;
        };
        while (ylo <= yhi && !inside(ylo)) ++ylo;
        while (ylo <= yhi && !inside(yhi)) --yhi;
        if (ylo > yhi) return;
        while (inside(ylo - 1)) --ylo;
        while (inside(yhi + 1)) ++yhi;
    } else if (qb != 0) {
        // linear: 0 < qb*y + qk <= N
        if (qb > 0) {
            ylo = ceilDiv(1 - qk, qb);
            yhi = floorDiv((i128)N - qk, qb);
        } else {
            ylo = ceilDiv((i128)N - qk, qb);
            yhi = floorDiv(1 - qk, qb);
        }
        if (ylo > yhi) return;
    } else {
        if (qk >= 1 && qk <= (i128)N &&
            clipLo <= clipHi) mark((u64)qk);
        return;
    }
    ylo = std::max(ylo, clipLo);
    yhi = std::min(yhi, clipHi);
    if (ylo > yhi) return;

    i128 v = ((i128)qc * ylo + qb) * ylo + qk;
    i128 dv = (i128)qc * (2 * ylo + 1) + qb;
    i128 ddv = 2 * (i128)qc;
    for (i64 y = ylo; y <= yhi; ++y) {
        if (v >= 1 && v <= (i128)N) mark((u64)v);
        v += dv;
        dv += ddv;
    }
}

template <class Mark>
void markColumn(const QuadraticPolynomial& F, i64 x, u64 N, i64 clipLo,
                i64 clipHi, Mark&& mark) {
    i128 qb = (i128)F.b * x + F.f;
    i128 qk = ((i128)F.a * x + F.e) * x + F.g;
    markQuadraticLine(F.c, qb, qk, N, clipLo, clipHi, mark);
}

// column sweep over x in [xlo, xhi], parallelized in chunks; marks go through
// fetch_or when threaded, so the result is thread-count independent
void sweepColumns(const QuadraticPolynomial& F, u64 N, i64 xlo, i64 xhi,
                  i64 clipYlo, i64 clipYhi, Bitset& bits, unsigned threads) {
    if (xlo > xhi) return;
    if (threads <= 1) {
        for (i64 x = xlo; x <= xhi; ++x)
            markColumn(F, x, N, clipYlo, clipYhi, [&](u64 v) { bits.set(v - 1); });
        return;
    }
    const i64 chunk = 256;
    const u64 nChunks = (u64)((xhi - xlo) / chunk) + 1;
    std::atomic<u64> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (u64 ci; (ci = next.fetch_add(1)) < nChunks;) {
                i64 cx0 = xlo + (i64)ci * chunk;
                i64 cx1 = std::min(cx0 + chunk - 1, xhi);
                for (i64 x = cx0; x <= cx1; ++x)
                    markColumn(F, x, N, clipYlo, clipYhi,
                               [&](u64 v) { bits.setAtomic(v - 1); });
            }
        });
    for (auto& th : pool) th.join();
}

// x-range of the definite-mode enumeration region, from completing the
// square in the transposed direction:
//   4c F = (bx + 2cy + f)^2 - delta x^2 - 2 alpha x + 4cg - f^2
// so |delta| (x + alpha/delta)^2 <= 4c(bound - g) + f^2 + alpha^2/|delta|,
// with bound = N for positive definite (F <= N) and 1 for negative definite
// (F >= 1). A two-column slack absorbs the floating-point root estimate.
void definiteXRange(const QuadraticPolynomial& F, const DiscriminantData& d,
                    u64 N, i64& xlo, i64& xhi, bool& empty) {
    long double absDelta = -(long double)d.delta;
    long double bound = d.definiteness == Definiteness::PositiveDefinite
                            ? (long double)N : 1.0L;
    long double m = 4.0L * F.c * (bound - F.g) + (long double)F.f * F.f +
                    (long double)d.alpha * d.alpha / absDelta;
    if (m < 0) {
        empty = true;
        xlo = 0;
        xhi = -1;
        return;
    }
    empty = false;
    long double xc = -(long double)d.alpha / d.delta;
    long double w = sqrtl(m / absDelta);
    xlo = (i64)floorl(xc - w) - 2;
    xhi = (i64)ceill(xc + w) + 2;
}

} // namespace

const char* buildModeName(BuildMode m) {
    switch (m) {
        case BuildMode::ExactDefinite: return "exact-definite";
        case BuildMode::ExactUnivariate: return "exact-univariate";
        case BuildMode::Window: return "window";
    }
    return "?";
}

BuildMode exactModeFor(const QuadraticPolynomial& F) {
    DiscriminantData d = invariants(F);
    if (d.delta < 0) return BuildMode::ExactDefinite;
    if (derivativesDependent(F)) return BuildMode::ExactUnivariate;
    throw Error(ErrorCode::ModeMismatch,
                "no exact enumeration mode for " + F.text() +
                " (indefinite, independent derivatives); use window mode");
}

RepresentedSet buildRepresentedSet(const QuadraticPolynomial& F, u64 N,
                                   BuildMode mode, double windowFactor,
                                   unsigned threads) {
    if (N < 1 || N > (u64(1) << 34))
        throw Error(ErrorCode::LimitTooLarge, "represented-set limit out of range");
    if (threads < 1) threads = 1;

    RepresentedSet set{F, N, mode, windowFactor, mode == BuildMode::Window,
                       Bitset(N)};
    DiscriminantData d = invariants(F);

    switch (mode) {
        case BuildMode::ExactDefinite: {
            if (d.delta >= 0)
                throw Error(ErrorCode::ModeMismatch,
                            "exact-definite needs delta < 0: " + F.text());
            i64 xlo, xhi;
            bool empty;
            definiteXRange(F, d, N, xlo, xhi, empty);
            if (!empty)
                sweepColumns(F, N, xlo, xhi, -kNoClip, kNoClip, set.bits, threads);
            break;
        }
        case BuildMode::ExactUnivariate: {
            UnivariateQuadratic f = reduceToUnivariate(F); // throws NotDependent
            markQuadraticLine(f.s, f.r, f.t0, N, -kNoClip, kNoClip,
                              [&](u64 v) { set.bits.set(v - 1); });
            break;
        }
        case BuildMode::Window: {
            if (!(windowFactor > 0))
                throw Error(ErrorCode::ModeMismatch, "window factor must be > 0");
            long double xw = (long double)windowFactor * sqrtl((long double)N);
            if (xw > 0x1p31)
                throw Error(ErrorCode::LimitTooLarge, "window wider than 2^31");
            i64 X = (i64)floorl(xw);
            sweepColumns(F, N, -X, X, -X, X, set.bits, threads);
            break;
        }
    }
    return set;
}

double delta(const RepresentedSet& set) {
    return (double)set.count() / (double)set.limit;
}

u32 LcmFactorization::exponentOf(u64 p) const {
    auto it = std::lower_bound(exponents.begin(), exponents.end(),
                               std::make_pair(p, u32(0)));
    if (it == exponents.end() || it->first != p) return 0;
    return it->second;
}

/* ---------------------------------------------------------------------------
   theta_p scan: for each prime p, walk multiples of descending powers p^k
   until a member is hit; first hit gives theta_p. Primes are processed in
   fixed value ranges whose partial results are concatenated in range order,
   so exponents and the compensated log-sum are identical for any thread
   count. Total work is sum over p^k <= N of N/p^k, about N loglog N.
   --------------------------------------------------------------------------- */
LcmFactorization scanLcmExponents(const Bitset& bits, u64 N,
                                  const PrimeTable& primes, unsigned threads) {
    if (primes.limit() < N)
        throw Error(ErrorCode::LimitTooLarge, "prime table smaller than set limit");
    if (threads < 1) threads = 1;

    const u64 rangeWidth = std::max<u64>(u64(1) << 16, N / 1024);
    const u64 nRanges = N / rangeWidth + 1;
    std::vector<std::vector<std::pair<u64, u32>>> parts(nRanges);

    auto scanRange = [&](u64 ri) {
        u64 lo = ri * rangeWidth;
        u64 hi = std::min(lo + rangeWidth - 1, N);
        auto& out = parts[ri];
        u64 powers[64];
        for (u64 i = std::max<u64>(lo, 2) / 2; 2 * i + 1 <= hi || i <= 1; ++i) {
            u64 p;
            if (i <= 1) {
                // handle p = 2 (and odd 3) from the first range only
                if (lo > 2) continue;
                p = i == 0 ? 2 : 3;
                if (p < lo || p > hi) continue;
            } else {
                p = 2 * i + 1;
                if (p < lo) continue;
            }
            if (!primes.contains(p)) continue;
            int kmax = 0;
            u64 pk = 1;
            while (pk <= N / p) {
                pk *= p;
                powers[kmax++] = pk;
            }
            for (int k = kmax - 1; k >= 0; --k) {
                u64 step = powers[k];
                bool hit = false;
                for (u64 m = step; m <= N; m += step)
                    if (bits.test(m - 1)) {
                        hit = true;
                        break;
                    }
                if (hit) {
                    out.emplace_back(p, (u32)(k + 1));
                    break;
                }
            }
        }
    };

    if (threads == 1 || nRanges == 1) {
        for (u64 r = 0; r < nRanges; ++r) scanRange(r);
    } else {
        std::atomic<u64> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (u64 r; (r = next.fetch_add(1)) < nRanges;) scanRange(r);
            });
        for (auto& th : pool) th.join();
    }

    LcmFactorization fact;
    u64 total = 0;
    for (auto& p : parts) total += p.size();
    fact.exponents.reserve(total);
    KahanSum sum;
    for (auto& part : parts)
        for (auto& [p, k] : part) {
            fact.exponents.emplace_back(p, k);
            sum.add((double)k * std::log((double)p));
        }
    fact.logValue = sum.value();
    return fact;
}

LcmFactorization lcmOfSet(const RepresentedSet& set, const PrimeTable& primes,
                          unsigned threads) {
    if (set.count() == 0)
        throw Error(ErrorCode::EmptySet, "represented set is empty");
    return scanLcmExponents(set.bits, set.limit, primes, threads);
}

LcmFactorization lcmOfSet(const RepresentedSet& set, unsigned threads) {
    PrimeTable t = PrimeTable::sieve(std::max<u64>(set.limit, 2));
    return lcmOfSet(set, t, threads);
}

double psi(const QuadraticPolynomial& F, u64 N, BuildMode mode,
           double windowFactor, unsigned threads) {
    RepresentedSet set = buildRepresentedSet(F, N, mode, windowFactor, threads);
    if (set.count() == 0) return 0.0; // empty image in (0, N]: LCM over nothing
    PrimeTable primes = PrimeTable::sieve(std::max<u64>(N, 2));
    return scanLcmExponents(set.bits, N, primes, threads).logValue;
}

double lcmLogExactOracle(const RepresentedSet& set) {
    if (set.limit > 100000)
        throw Error(ErrorCode::TooLarge, "exact LCM oracle capped at N = 1e5");
    namespace mp = boost::multiprecision;
    mp::cpp_int l = 1;
    for (u64 n = 1; n <= set.limit; ++n)
        if (set.bits.test(n - 1)) l = mp::lcm(l, mp::cpp_int(n));
    if (l == 1) return 0.0;
    // log of a big integer from its top bits
    size_t b = mp::msb(l);
    if (b <= 512) return std::log(l.convert_to<double>());
    mp::cpp_int hi = l >> (b - 512);
    return std::log(hi.convert_to<double>()) +
           (double)(b - 512) * 0.6931471805599453094;
}

FermatClosedForm fermatPsiClosedForm(u64 N) {
    if (N < 1)
        throw Error(ErrorCode::LimitTooLarge, "N must be >= 1");
    FermatClosedForm out;
    KahanSum t2log, t3mod3, t1mod1;

    u32 e2 = 0;
    for (u64 v = N; v > 1; v >>= 1) ++e2;
    if (e2 > 0) {
        out.factorization.exponents.emplace_back(2, e2);
        t2log.add((double)e2 * 0.6931471805599453094);
    }

    if (N >= 3) {
        PrimeTable primes = PrimeTable::sieve(N);
        u64 root = isqrt_u64(N);
        primes.forEach([&](u64 p) {
            if (p == 2) return;
            double lp = std::log((double)p);
            if (p % 4 == 3) {
                // exponents are even: p^{2k} = (p^k)^2, largest with p^k <= sqrt(N)
                if (p > root) return;
                u32 k = 0;
                for (u64 pk = p; pk <= root; pk *= p) {
                    ++k;
                    t3mod3.add(lp);
                    if (pk > root / p) break;
                }
                out.factorization.exponents.emplace_back(p, 2 * k);
            } else {
                u32 k = 0;
                for (u64 pk = p;; pk *= p) {
                    ++k;
                    t1mod1.add(lp);
                    if (pk > N / p) break;
                }
                out.factorization.exponents.emplace_back(p, k);
            }
        });
    }

    std::sort(out.factorization.exponents.begin(), out.factorization.exponents.end());
    out.value = t2log.value() + 2.0 * t3mod3.value() + t1mod1.value();
    KahanSum canonical;
    for (auto& [p, k] : out.factorization.exponents)
        canonical.add((double)k * std::log((double)p));
    out.factorization.logValue = canonical.value();
    return out;
}

i64 countSk(const RepresentedSet& set, const PrimeTable& primes, u64 k) {
    if (k < 1) throw Error(ErrorCode::BadOrder, "k must be >= 1");
    if (primes.limit() < set.limit)
        throw Error(ErrorCode::LimitTooLarge, "prime table smaller than set limit");
    i64 count = 0;
    primes.forEach([&](u64 p) { if (set.bits.test(k * p - 1)) ++count; },
                   set.limit / k);
    return count;
}

i64 countSkPair(const RepresentedSet& set, const PrimeTable& primes, u64 k1,
                u64 k2) {
    if (k2 >= k1)
        throw Error(ErrorCode::BadOrder, "need k2 < k1");
    if (k2 < 1) throw Error(ErrorCode::BadOrder, "k2 must be >= 1");
    if (primes.limit() < set.limit)
        throw Error(ErrorCode::LimitTooLarge, "prime table smaller than set limit");
    i64 count = 0;
    primes.forEach(
        [&](u64 p) {
            if (set.bits.test(k1 * p - 1) && set.bits.test(k2 * p - 1)) ++count;
        },
        set.limit / k1);
    return count;
}

double psiBox(const QuadraticPolynomial& F, u64 N, unsigned threads) {
    if (N < 1)
        throw Error(ErrorCode::LimitTooLarge, "N must be >= 1");
    i64 X = (i64)isqrt_u64(N);
    Bitset bits(N);
    sweepColumns(F, N, -X, X, -X, X, bits, threads);
    if (bits.popcount() == 0) return 0.0;
    PrimeTable primes = PrimeTable::sieve(std::max<u64>(N, 2));
    return scanLcmExponents(bits, N, primes, threads).logValue;
}

std::vector<FigureOnePoint> figureOneSeries(u64 limit, std::span<const u64> grid,
                                            unsigned threads, u64 hardCap) {
    if (limit > hardCap)
        throw Error(ErrorCode::LimitTooLarge,
                    "figure-one limit above configured cap");
    QuadraticPolynomial F(1, 0, 1, 0, 0, 1);
    RepresentedSet set =
        buildRepresentedSet(F, limit, BuildMode::ExactDefinite, 4.0, threads);
    PrimeTable primes = PrimeTable::sieve(std::max<u64>(limit, 2));

    std::vector<u64> points(grid.begin(), grid.end());
    std::sort(points.begin(), points.end());
    for (u64 g : points)
        if (g < 1 || g > limit)
            throw Error(ErrorCode::LimitTooLarge, "grid point outside (0, limit]");

    std::vector<FigureOnePoint> out;
    out.reserve(points.size());
    KahanSum logSum;
    size_t gi = 0;
    u64 lastPrime = 0;
    primes.forEach([&](u64 p) {
        while (gi < points.size() && points[gi] < p) {
            out.push_back({points[gi], logSum.value(), 0.0, 0});
            ++gi;
        }
        if (set.bits.test(p - 1)) logSum.add(std::log((double)p));
        lastPrime = p;
    });
    (void)lastPrime;
    while (gi < points.size()) {
        out.push_back({points[gi], logSum.value(), 0.0, 0});
        ++gi;
    }
    for (auto& pt : out) {
        pt.count = set.bits.popcountPrefix(pt.n);
        pt.density = (double)pt.count / (double)pt.n;
        pt.ratio = pt.count > 0 ? pt.ratio / (double)pt.count : 0.0;
    }
    return out;
}

double figureOneRatio(u64 N, unsigned threads, u64 hardCap) {
    const u64 grid[1] = {N};
    return figureOneSeries(N, grid, threads, hardCap)[0].ratio;
}

} // namespace quadlcm
