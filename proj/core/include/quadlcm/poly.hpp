#ifndef QUADLCM_POLY_HPP
#define QUADLCM_POLY_HPP

#include <string>
#include <string_view>

#include "quadlcm/int128.hpp"
#include "quadlcm/error.hpp"

namespace quadlcm {

// F(x,y) = a x^2 + b xy + c y^2 + e x + f y + g, integer coefficients.
//
// Coefficients are capped at |.| <= 2^20 so that every evaluation done by the
// library (including the enumeration ranges used when building represented
// sets) stays well inside signed 128-bit arithmetic.
struct QuadraticPolynomial {
    static constexpr i64 kCoeffCap = i64(1) << 20;

    i64 a, b, c, e, f, g;

    QuadraticPolynomial(i64 a, i64 b, i64 c, i64 e, i64 f, i64 g);

    // "a,b,c,e,f,g" -- six comma-separated signed decimal integers, no spaces
    static QuadraticPolynomial parse(std::string_view text);
    std::string text() const;

    i128 operator()(i128 x, i128 y) const {
        return ((i128)a * x + (i128)b * y + e) * x + ((i128)c * y + f) * y + g;
    }
    // quadratic part G(x,y) = a x^2 + b xy + c y^2
    i128 quadraticPart(i128 x, i128 y) const {
        return ((i128)a * x + (i128)b * y) * x + (i128)c * y * y;
    }
    // swap x <-> y
    QuadraticPolynomial transposed() const {
        return QuadraticPolynomial(c, b, a, f, e, g);
    }

    bool operator==(const QuadraticPolynomial&) const = default;
};

enum class Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    DegenerateQuadraticPart, // delta == 0
};

const char* definitenessName(Definiteness d);

struct DiscriminantData {
    i64 delta;       // b^2 - 4ac
    i128 largeD;     // a f^2 + c e^2 - b f e + delta * g
    i64 alpha;       // b f - 2 c e
    i64 beta;        // b e - 2 a f
    i64 content;     // gcd(a,b,c,e,f,g) >= 1
    Definiteness definiteness;
    bool deltaIsSquare;
};

enum class Regime {
    Theorem1Irreducible,
    Theorem1Reducible,
    Theorem2SquareDiscriminant,
    Theorem2ZeroLargeDiscriminant,
    Theorem3Generic,
    NotRepresentingArbitrarilyLarge,
};

const char* regimeName(Regime r);

enum class PsiOrder {
    SqrtNLogN, // sqrt(N)*log(N)
    SqrtN,     // sqrt(N)
    Linear,    // N
    Generic,   // N*loglog(N)/sqrt(log(N))
    Finite,    // finite
};

const char* psiOrderName(PsiOrder o);

struct ClassificationReport {
    Regime regime;
    bool derivativesDependent;
    DiscriminantData evidence;
    PsiOrder predictedPsiOrder;
};

// F(x,y) = f(u x + v y) with f(t) = s t^2 + r t + t0 and gcd(u,v) = 1.
struct UnivariateQuadratic {
    i64 s, r, t0;
    i64 u, v;

    i128 operator()(i128 t) const { return ((i128)s * t + r) * t + t0; }
};

// Arithmetic progression A*t + B inside Im(F), realized along the lattice
// line (x,y) = (x0 + dx*t, y0 + dy*t).
struct ApProgression {
    i64 A, B;
    i64 x0, dx, y0, dy;
};

DiscriminantData invariants(const QuadraticPolynomial& F);
bool derivativesDependent(const QuadraticPolynomial& F);
ClassificationReport classify(const QuadraticPolynomial& F);
bool isClassH(const QuadraticPolynomial& F);

struct Normalization {
    QuadraticPolynomial h;
    i64 cF;
};
Normalization normalizeToH(const QuadraticPolynomial& F);

UnivariateQuadratic reduceToUnivariate(const QuadraticPolynomial& F);
ApProgression apInImage(const QuadraticPolynomial& F);

} // namespace quadlcm

#endif
