#include "quadlcm/poly.hpp"

#include <cassert>
#include <charconv>
#include <cstdlib>

namespace quadlcm {

QuadraticPolynomial::QuadraticPolynomial(i64 a_, i64 b_, i64 c_, i64 e_, i64 f_, i64 g_)
    : a(a_), b(b_), c(c_), e(e_), f(f_), g(g_) {
    if (a == 0 && b == 0 && c == 0 && e == 0 && f == 0)
        throw Error(ErrorCode::ConstantPolynomial,
                    "polynomial is constant: " + text());
    for (i64 v : {a, b, c, e, f, g})
        if (v > kCoeffCap || v < -kCoeffCap)
            throw Error(ErrorCode::CoefficientTooLarge,
                        "coefficient magnitude above 2^20 in " + text());
}

QuadraticPolynomial QuadraticPolynomial::parse(std::string_view text) {
    i64 coeff[6];
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int i = 0; i < 6; ++i) {
        if (i > 0) {
            if (p >= end || *p != ',')
                throw Error(ErrorCode::BadPolynomialFormat,
                            "expected 6 comma-separated integers: " + std::string(text));
            ++p;
        }
        auto [next, ec] = std::from_chars(p, end, coeff[i]);
        if (ec != std::errc())
            throw Error(ErrorCode::BadPolynomialFormat,
                        "bad integer in polynomial: " + std::string(text));
        p = next;
    }
    if (p != end)
        throw Error(ErrorCode::BadPolynomialFormat,
                    "trailing characters in polynomial: " + std::string(text));
    return QuadraticPolynomial(coeff[0], coeff[1], coeff[2], coeff[3], coeff[4], coeff[5]);
}

std::string QuadraticPolynomial::text() const {
    std::string s;
    for (i64 v : {a, b, c, e, f, g}) {
        if (!s.empty()) s += ',';
        s += std::to_string(v);
    }
    return s;
}

const char* definitenessName(Definiteness d) {
    switch (d) {
        case Definiteness::PositiveDefinite: return "positive-definite";
        case Definiteness::NegativeDefinite: return "negative-definite";
        case Definiteness::Indefinite: return "indefinite";
        case Definiteness::DegenerateQuadraticPart: return "degenerate-quadratic-part";
    }
    return "?";
}

const char* regimeName(Regime r) {
    switch (r) {
        case Regime::Theorem1Irreducible: return "Theorem1-irreducible";
        case Regime::Theorem1Reducible: return "Theorem1-reducible";
        case Regime::Theorem2SquareDiscriminant: return "Theorem2-square-discriminant";
        case Regime::Theorem2ZeroLargeDiscriminant: return "Theorem2-zero-large-discriminant";
        case Regime::Theorem3Generic: return "Theorem3-generic";
        case Regime::NotRepresentingArbitrarilyLarge: return "not-representing-arbitrarily-large";
    }
    return "?";
}

const char* psiOrderName(PsiOrder o) {
    switch (o) {
        case PsiOrder::SqrtNLogN: return "sqrt(N)*log(N)";
        case PsiOrder::SqrtN: return "sqrt(N)";
        case PsiOrder::Linear: return "N";
        case PsiOrder::Generic: return "N*loglog(N)/sqrt(log(N))";
        case PsiOrder::Finite: return "finite";
    }
    return "?";
}

DiscriminantData invariants(const QuadraticPolynomial& F) {
    DiscriminantData d;
    d.delta = F.b * F.b - 4 * F.a * F.c;
    d.largeD = (i128)F.a * F.f * F.f + (i128)F.c * F.e * F.e
             - (i128)F.b * F.f * F.e + (i128)d.delta * F.g;
    d.alpha = F.b * F.f - 2 * F.c * F.e;
    d.beta = F.b * F.e - 2 * F.a * F.f;
    i64 w = 0;
    for (i64 v : {F.a, F.b, F.c, F.e, F.f, F.g}) w = gcd64(w, v);
    d.content = w; // >= 1, F is non-constant
    if (d.delta < 0)
        d.definiteness = F.a > 0 ? Definiteness::PositiveDefinite
                                 : Definiteness::NegativeDefinite;
    else if (d.delta > 0)
        d.definiteness = Definiteness::Indefinite;
    else
        d.definiteness = Definiteness::DegenerateQuadraticPart;
    d.deltaIsSquare = isPerfectSquare((i128)d.delta);
    return d;
}

bool derivativesDependent(const QuadraticPolynomial& F) {
    // the three 2x2 minors of [[2a, b, e], [b, 2c, f]] are -delta, alpha, -beta
    DiscriminantData d = invariants(F);
    return d.delta == 0 && d.alpha == 0 && d.beta == 0;
}

namespace {

// primitive integer vector with u > 0, or u == 0 and v > 0
void primitiveDirection(i64 du, i64 dv, i64& u, i64& v) {
    i64 g = gcd64(du, dv);
    assert(g > 0);
    u = du / g;
    v = dv / g;
    if (u < 0 || (u == 0 && v < 0)) { u = -u; v = -v; }
}

} // namespace

UnivariateQuadratic reduceToUnivariate(const QuadraticPolynomial& F) {
    if (!derivativesDependent(F))
        throw Error(ErrorCode::NotDependent,
                    "partial derivatives are independent: " + F.text());

    UnivariateQuadratic q{};
    if (F.a != 0) {
        primitiveDirection(2 * F.a, F.b, q.u, q.v);
    } else if (F.c != 0) {
        // delta = 0 forces b = 0 here, so the quadratic part is c*y^2
        q.u = 0;
        q.v = 1;
    } else {
        // quadratic part vanishes entirely; F is linear in (e,f)-direction
        primitiveDirection(F.e, F.f, q.u, q.v);
    }
    if (q.u != 0) {
        q.s = F.a / (q.u * q.u);
        q.r = F.e / q.u;
    } else {
        q.s = F.c / (q.v * q.v);
        q.r = F.f / q.v;
    }
    q.t0 = F.g;

    // dependency guarantees F(x,y) == f(ux+vy) coefficient by coefficient
    assert(F.a == q.s * q.u * q.u && F.b == 2 * q.s * q.u * q.v &&
           F.c == q.s * q.v * q.v && F.e == q.r * q.u && F.f == q.r * q.v);
    return q;
}

ClassificationReport classify(const QuadraticPolynomial& F) {
    ClassificationReport rep{};
    rep.evidence = invariants(F);
    const DiscriminantData& d = rep.evidence;
    rep.derivativesDependent = (d.delta == 0 && d.alpha == 0 && d.beta == 0);

    if (rep.derivativesDependent) {
        UnivariateQuadratic f = reduceToUnivariate(F);
        if (f.s < 0) {
            // image of f is bounded above
            rep.regime = Regime::NotRepresentingArbitrarilyLarge;
            rep.predictedPsiOrder = PsiOrder::Finite;
        } else if (f.s == 0) {
            // linear f always has a rational root
            rep.regime = Regime::Theorem1Reducible;
            rep.predictedPsiOrder = PsiOrder::SqrtN;
        } else {
            // f factors over Q iff r^2 - 4 s t0 is a perfect square
            i128 disc = (i128)f.r * f.r - (i128)4 * f.s * f.t0;
            if (isPerfectSquare(disc)) {
                rep.regime = Regime::Theorem1Reducible;
                rep.predictedPsiOrder = PsiOrder::SqrtN;
            } else {
                rep.regime = Regime::Theorem1Irreducible;
                rep.predictedPsiOrder = PsiOrder::SqrtNLogN;
            }
        }
        return rep;
    }

    if (d.definiteness == Definiteness::NegativeDefinite) {
        rep.regime = Regime::NotRepresentingArbitrarilyLarge;
        rep.predictedPsiOrder = PsiOrder::Finite;
    } else if (d.deltaIsSquare) {
        // includes delta == 0 with independent derivatives
        rep.regime = Regime::Theorem2SquareDiscriminant;
        rep.predictedPsiOrder = PsiOrder::Linear;
    } else if (d.largeD == 0) {
        rep.regime = Regime::Theorem2ZeroLargeDiscriminant;
        rep.predictedPsiOrder = PsiOrder::Linear;
    } else {
        rep.regime = Regime::Theorem3Generic;
        rep.predictedPsiOrder = PsiOrder::Generic;
    }
    return rep;
}

bool isClassH(const QuadraticPolynomial& F) {
    // content 1, and the coefficient pattern (a,c,b,g) == (e,f,0,0) mod 2
    // (which forces every value even) is excluded
    i64 w = 0;
    for (i64 v : {F.a, F.b, F.c, F.e, F.f, F.g}) w = gcd64(w, v);
    if (w != 1) return false;
    bool evenImagePattern = ((F.a ^ F.e) & 1) == 0 && ((F.c ^ F.f) & 1) == 0 &&
                            (F.b & 1) == 0 && (F.g & 1) == 0;
    return !evenImagePattern;
}

Normalization normalizeToH(const QuadraticPolynomial& F) {
    ClassificationReport rep = classify(F);
    if (rep.derivativesDependent ||
        rep.regime == Regime::NotRepresentingArbitrarilyLarge)
        throw Error(ErrorCode::NotNormalizable,
                    "normalization needs independent derivatives and an image "
                    "unbounded above: " + F.text());

    i64 w = rep.evidence.content;
    QuadraticPolynomial G(F.a / w, F.b / w, F.c / w, F.e / w, F.f / w, F.g / w);
    if (isClassH(G)) return {G, w};

    // G has content 1 but represents only even integers; halve after doubling
    // the coordinates: H(x,y) = G(2x,2y)/2
    assert((G.g & 1) == 0);
    QuadraticPolynomial H(2 * G.a, 2 * G.b, 2 * G.c, G.e, G.f, G.g / 2);
    return {H, 2 * w};
}

ApProgression apInImage(const QuadraticPolynomial& F) {
    DiscriminantData d = invariants(F);
    if (d.delta == 0 && d.alpha == 0 && d.beta == 0)
        throw Error(ErrorCode::NotApplicable,
                    "derivatives are dependent: " + F.text());
    if (!d.deltaIsSquare)
        throw Error(ErrorCode::NotApplicable,
                    "discriminant is not a perfect square: " + F.text());

    if (d.delta == 0) {
        // F(-bt, 2at) = (2af-be) t + g when a != 0; mirrored version otherwise.
        // Independence leaves at least one of alpha, beta nonzero, and
        // delta = 0 with alpha != 0 forces c != 0.
        if (F.a != 0 && d.beta != 0)
            return {-d.beta, F.g, 0, -F.b, 0, 2 * F.a};
        assert(F.c != 0 && d.alpha != 0);
        return {-d.alpha, F.g, 0, 2 * F.c, 0, -F.b};
    }

    i128 root = 0;
    isPerfectSquare((i128)d.delta, &root);
    i64 s = (i64)root; // delta = s^2 > 0

    if (F.a != 0) {
        // 4a G(x,y) = (2ax + r1 y)(2ax + r2 y), r_i = b +- s;
        // F(r_i t, -2a t) = (r_i e - 2af) t + g
        i64 r1 = F.b + s, r2 = F.b - s;
        i64 A1 = r1 * F.e - 2 * F.a * F.f;
        if (A1 != 0) return {A1, F.g, 0, r1, 0, -2 * F.a};
        i64 A2 = r2 * F.e - 2 * F.a * F.f;
        if (A2 != 0) return {A2, F.g, 0, r2, 0, -2 * F.a};
        // A1 = A2 = 0 forces e = f = 0; hold one factor of the product at 2a:
        // F(1 + r2 t, -2a t) = (g + a) - 2as t
        return {-2 * F.a * s, F.g + F.a, 1, r2, 0, -2 * F.a};
    }
    if (F.c != 0) {
        i64 r1 = F.b + s, r2 = F.b - s;
        i64 A1 = r1 * F.f - 2 * F.c * F.e;
        if (A1 != 0) return {A1, F.g, 0, -2 * F.c, 0, r1};
        i64 A2 = r2 * F.f - 2 * F.c * F.e;
        if (A2 != 0) return {A2, F.g, 0, -2 * F.c, 0, r2};
        return {-2 * F.c * s, F.g + F.c, 0, -2 * F.c, 1, r2};
    }
    // a = c = 0, so b != 0 and delta = b^2
    if (F.e != 0) return {F.e, F.g, 0, 1, 0, 0};
    if (F.f != 0) return {F.f, F.g, 0, 0, 0, 1};
    return {F.b, F.g, 0, 1, 1, 0}; // F(t,1) = bt + g
}

} // namespace quadlcm
